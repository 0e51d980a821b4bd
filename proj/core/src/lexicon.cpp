#include "emoco/lexicon.hpp"

#include <cctype>
#include <sstream>

namespace emoco {

namespace detail {
extern const std::string_view kStopwordsText;
extern const std::string_view kEmotionLexiconText;
}  // namespace detail

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) || c == '\''; }

}  // namespace

WordList WordList::parse(std::string_view text) {
  WordList list;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto word = normalize_token(line);
    if (line.empty() || line.front() == '#' || word.empty()) continue;
    list.words_.insert(std::move(word));
  }
  return list;
}

const WordList& bundled_stopwords() {
  static const WordList list = WordList::parse(detail::kStopwordsText);
  return list;
}

const WordList& bundled_emotion_lexicon() {
  static const WordList list = WordList::parse(detail::kEmotionLexiconText);
  return list;
}

std::string normalize_token(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && !is_word_char(static_cast<unsigned char>(raw[begin]))) ++begin;
  while (end > begin && !is_word_char(static_cast<unsigned char>(raw[end - 1]))) --end;
  std::string out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i]))));
  }
  // A lone apostrophe is not a word.
  if (out.find_first_not_of('\'') == std::string::npos) out.clear();
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (in >> raw) {
    if (auto token = normalize_token(raw); !token.empty()) out.push_back(std::move(token));
  }
  return out;
}

}  // namespace emoco
