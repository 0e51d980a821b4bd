#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace emoco {

/// A set of lowercase words loaded from a one-word-per-line list.
class WordList {
 public:
  WordList() = default;
  /// Blank lines and lines starting with '#' are skipped.
  static WordList parse(std::string_view text);

  bool contains(std::string_view word) const { return words_.count(std::string(word)) > 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

const WordList& bundled_stopwords();
const WordList& bundled_emotion_lexicon();

/// Lowercases and strips leading/trailing characters that are not letters,
/// digits or apostrophes. Returns an empty string for pure punctuation.
std::string normalize_token(std::string_view raw);

/// Splits on whitespace and normalizes each token, dropping empties.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace emoco
