#include "emoco/bundle.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "codec.hpp"
#include "emoco/wav.hpp"

namespace emoco {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream out;
  out << file.rdbuf();
  return out.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  file << text;
}

json parse_document(const std::string& text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, name + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

// Wraps schema errors (missing keys, wrong types) with the document location.
template <typename Fn>
auto with_location(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, where + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, where + ": " + e.what());
  }
}

FrameAnnotation frame_from_json(const json& j) {
  FrameAnnotation f;
  f.timestamp = j.at("t").get<double>();
  f.face_detected = j.at("faceDetected").get<bool>();
  if (auto it = j.find("emotions"); it != j.end()) f.emotions = codec::distribution_from_json(*it);
  if (auto it = j.find("box"); it != j.end() && !it->is_null()) {
    const auto& b = *it;
    if (!b.is_array() || b.size() != 4) {
      throw Error(ErrorCode::kParse, "box must be [left, top, width, height]");
    }
    f.box = BoundingBox{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                        b[3].get<double>()};
  }
  return f;
}

json frame_to_json(const FrameAnnotation& f) {
  json j = {{"t", f.timestamp}, {"faceDetected", f.face_detected}};
  if (f.box) j["box"] = {f.box->left, f.box->top, f.box->width, f.box->height};
  j["emotions"] = codec::distribution_to_json(f.emotions);
  return j;
}

Segment segment_from_json(const json& j) {
  Segment s;
  s.id = j.at("id").get<int>();
  s.span = {j.at("start").get<double>(), j.at("end").get<double>()};
  s.text = j.value("text", std::string{});
  if (auto it = j.find("words"); it != j.end()) {
    for (const auto& w : *it) {
      s.words.push_back({w.at("w").get<std::string>(),
                         {w.at("start").get<double>(), w.at("end").get<double>()}});
    }
  }
  if (auto it = j.find("textEmotion"); it != j.end()) {
    s.text_emotion = codec::distribution_from_json(*it);
  }
  if (auto it = j.find("audioEmotion"); it != j.end()) {
    s.audio_emotion = codec::distribution_from_json(*it);
  }
  return s;
}

json segment_to_json(const Segment& s) {
  json words = json::array();
  for (const auto& w : s.words) {
    words.push_back({{"w", w.text}, {"start", w.span.start}, {"end", w.span.end}});
  }
  return {{"id", s.id},
          {"start", s.span.start},
          {"end", s.span.end},
          {"text", s.text},
          {"words", std::move(words)},
          {"textEmotion", codec::distribution_to_json(s.text_emotion)},
          {"audioEmotion", codec::distribution_to_json(s.audio_emotion)}};
}

std::vector<TimeSpan> merged(std::span<const TimeSpan> spans) {
  std::vector<TimeSpan> sorted(spans.begin(), spans.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const TimeSpan& a, const TimeSpan& b) { return a.start < b.start; });
  std::vector<TimeSpan> out;
  for (const auto& s : sorted) {
    if (!out.empty() && s.start <= out.back().end) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

BundleManifest BundleManifest::from_directory(const fs::path& dir) {
  BundleManifest m;
  m.directory = dir;
  m.meta = dir / "meta.json";
  m.frames = dir / "frames.jsonl";
  m.segments = dir / "segments.json";
  for (const auto& required : {m.meta, m.frames, m.segments}) {
    if (!fs::exists(required)) throw Error(ErrorCode::kIo, "missing " + required.string());
  }
  if (fs::exists(dir / "laughter.json")) m.laughter = dir / "laughter.json";
  if (fs::exists(dir / "audio.wav")) m.audio = dir / "audio.wav";
  return m;
}

ValidationFailure::ValidationFailure(ValidationReport report)
    : Error(ErrorCode::kValidation, "invalid video record:\n" + report.to_string()),
      report_(std::move(report)) {}

VideoRecord parse_bundle(const BundleDocuments& docs, std::optional<AudioTrack> audio,
                         const LoadOptions& options) {
  VideoRecord video;

  json meta = parse_document(docs.meta, "meta");
  with_location("meta", [&] {
    video.id = meta.at("id").get<std::string>();
    video.title = meta.value("title", std::string{});
    video.category = meta.value("category", std::string{});
    video.duration = meta.at("duration").get<double>();
    video.frame_rate = meta.at("frameRate").get<double>();
    if (auto it = meta.find("media"); it != meta.end() && !it->is_null()) {
      video.media = it->get<std::string>();
    }
    return 0;
  });

  std::istringstream lines(docs.frames);
  std::string line;
  for (int line_no = 1; std::getline(lines, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "frames:" + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kParse,
                  where + ": offset " + std::to_string(e.byte) + ": " + e.what());
    }
    video.frames.push_back(with_location(where, [&] { return frame_from_json(j); }));
  }

  json segments = parse_document(docs.segments, "segments");
  if (!segments.is_array()) throw Error(ErrorCode::kParse, "segments: expected an array");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    video.segments.push_back(with_location("segments[" + std::to_string(i) + "]",
                                           [&] { return segment_from_json(segments[i]); }));
  }

  if (docs.laughter) {
    json laughter = parse_document(*docs.laughter, "laughter");
    if (!laughter.is_array()) throw Error(ErrorCode::kParse, "laughter: expected an array");
    for (std::size_t i = 0; i < laughter.size(); ++i) {
      video.laughter.push_back(with_location("laughter[" + std::to_string(i) + "]", [&] {
        return TimeSpan{laughter[i].at("start").get<double>(), laughter[i].at("end").get<double>()};
      }));
    }
  }
  video.audio = std::move(audio);

  std::stable_sort(video.frames.begin(), video.frames.end(),
                   [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  std::stable_sort(video.segments.begin(), video.segments.end(),
                   [](const auto& a, const auto& b) { return a.span.start < b.span.start; });

  if (auto report = validate(video); !report.ok()) throw ValidationFailure(std::move(report));

  video.segments = mask_laughter(video.segments, video.laughter, options.laughter_threshold);
  return video;
}

VideoRecord load_bundle(const BundleManifest& manifest, const LoadOptions& options) {
  BundleDocuments docs;
  docs.meta = read_text(manifest.meta);
  docs.frames = read_text(manifest.frames);
  docs.segments = read_text(manifest.segments);
  if (manifest.laughter) docs.laughter = read_text(*manifest.laughter);
  std::optional<AudioTrack> audio;
  if (manifest.audio) audio = read_wav(*manifest.audio);
  try {
    return parse_bundle(docs, std::move(audio), options);
  } catch (const ValidationFailure&) {
    throw;
  } catch (const Error& e) {
    throw Error(e.code(), manifest.directory.string() + ": " + e.what());
  }
}

BundleDocuments encode_bundle(const VideoRecord& video) {
  BundleDocuments docs;
  json meta = {{"id", video.id},
               {"title", video.title},
               {"category", video.category},
               {"duration", video.duration},
               {"frameRate", video.frame_rate}};
  if (video.media) meta["media"] = *video.media;
  docs.meta = meta.dump(2) + "\n";

  std::string frames;
  for (const auto& f : video.frames) frames += frame_to_json(f).dump() + "\n";
  docs.frames = std::move(frames);

  json segments = json::array();
  for (const auto& s : video.segments) segments.push_back(segment_to_json(s));
  docs.segments = segments.dump(2) + "\n";

  if (!video.laughter.empty()) {
    json laughter = json::array();
    for (const auto& l : video.laughter) laughter.push_back({{"start", l.start}, {"end", l.end}});
    docs.laughter = laughter.dump(2) + "\n";
  }
  return docs;
}

void write_bundle(const VideoRecord& video, const fs::path& dir) {
  fs::create_directories(dir);
  auto docs = encode_bundle(video);
  write_text(dir / "meta.json", docs.meta);
  write_text(dir / "frames.jsonl", docs.frames);
  write_text(dir / "segments.json", docs.segments);
  if (docs.laughter) {
    write_text(dir / "laughter.json", *docs.laughter);
  } else {
    fs::remove(dir / "laughter.json");
  }
  if (video.audio) {
    write_wav(dir / "audio.wav", *video.audio);
  } else {
    fs::remove(dir / "audio.wav");
  }
}

double laughter_fraction(const TimeSpan& span, std::span<const TimeSpan> laughter) {
  if (span.duration() <= 0.0) return 0.0;
  double covered = 0.0;
  for (const auto& l : merged(laughter)) covered += span.overlap(l);
  return covered / span.duration();
}

std::vector<Segment> mask_laughter(std::span<const Segment> segments,
                                   std::span<const TimeSpan> laughter, double threshold) {
  std::vector<Segment> out(segments.begin(), segments.end());
  if (laughter.empty()) return out;
  for (auto& seg : out) {
    if (laughter_fraction(seg.span, laughter) > threshold) seg.audio_emotion.clear();
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string content_hash(const VideoRecord& video) {
  auto docs = encode_bundle(video);
  std::string buffer;
  auto append = [&buffer](std::string_view part) {
    buffer += std::to_string(part.size());
    buffer += ':';
    buffer += part;
  };
  append(docs.meta);
  append(docs.frames);
  append(docs.segments);
  append(docs.laughter.value_or(""));
  if (video.audio) {
    auto wav = encode_wav(*video.audio);
    append({reinterpret_cast<const char*>(wav.data()), wav.size()});
  } else {
    append("");
  }
  return sha256_hex(buffer);
}

}  // namespace emoco
