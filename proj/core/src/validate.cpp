#include "emoco/validate.hpp"

#include <cmath>
#include <sstream>

namespace emoco {

namespace {

class Checker {
 public:
  explicit Checker(const VideoRecord& video) : video_(video) {}

  ValidationReport run() {
    if (video_.id.empty()) add("id", "empty id");
    if (!(video_.frame_rate > 0.0)) add("frameRate", "frame rate not positive");
    if (!(video_.duration > 0.0)) add("duration", "duration not positive");
    check_frames();
    check_segments();
    for (std::size_t i = 0; i < video_.laughter.size(); ++i) {
      check_span(video_.laughter[i], "laughter[" + std::to_string(i) + "]");
    }
    if (video_.audio && video_.audio->sample_rate <= 0) {
      add("audio", "sample rate not positive");
    }
    return std::move(report_);
  }

 private:
  void add(std::string path, std::string reason) {
    report_.violations.push_back({std::move(path), std::move(reason)});
  }

  // Returns false when the span is unusable for containment checks.
  bool check_span(const TimeSpan& span, const std::string& path) {
    if (!std::isfinite(span.start) || !std::isfinite(span.end) || span.end <= span.start) {
      add(path, "span inverted");
      return false;
    }
    if (span.start < 0.0 || span.end > video_.duration) add(path, "span outside video");
    return true;
  }

  void check_distribution(const EmotionDistribution& dist, const std::string& path) {
    for (Emotion e : kAllEmotions) {
      double v = dist[e];
      if (!(v >= 0.0 && v <= 1.0)) {
        add(path + "." + std::string(to_string(e)), "confidence out of range");
      }
    }
  }

  void check_frames() {
    for (std::size_t i = 0; i < video_.frames.size(); ++i) {
      const auto& f = video_.frames[i];
      const std::string path = "frames[" + std::to_string(i) + "]";
      if (!std::isfinite(f.timestamp) || f.timestamp < 0.0 || f.timestamp > video_.duration) {
        add(path, "timestamp outside video");
      }
      if (i > 0 && !(f.timestamp > video_.frames[i - 1].timestamp)) {
        add(path, "timestamps not increasing");
      }
      if (!f.face_detected && !f.emotions.empty()) add(path, "undetected frame has emotions");
      if (f.face_detected && !f.emotions.detected()) add(path, "detected frame has no emotions");
      check_distribution(f.emotions, path + ".emotions");
      if (f.box) {
        const auto& b = *f.box;
        bool inside = b.left >= 0 && b.top >= 0 && b.width >= 0 && b.height >= 0 &&
                      b.left + b.width <= 1.0 && b.top + b.height <= 1.0;
        if (!inside) add(path + ".box", "box out of range");
      }
    }
  }

  void check_segments() {
    const Segment* previous = nullptr;
    for (std::size_t i = 0; i < video_.segments.size(); ++i) {
      const auto& seg = video_.segments[i];
      const std::string path = "segments[" + std::to_string(i) + "]";
      if (seg.id != static_cast<int>(i)) add(path + ".id", "segment id out of order");
      check_distribution(seg.text_emotion, path + ".textEmotion");
      check_distribution(seg.audio_emotion, path + ".audioEmotion");
      if (!check_span(seg.span, path)) continue;

      if (previous != nullptr && seg.span.start < previous->span.end) {
        add(path, "segments overlap: " + std::to_string(previous->id) + " and " +
                      std::to_string(seg.id));
      }
      previous = &seg;

      const WordToken* prev_word = nullptr;
      for (std::size_t w = 0; w < seg.words.size(); ++w) {
        const auto& word = seg.words[w];
        const std::string wpath = path + ".words[" + std::to_string(w) + "]";
        if (word.text.empty()) add(wpath, "empty word");
        if (!std::isfinite(word.span.start) || !std::isfinite(word.span.end) ||
            word.span.end <= word.span.start) {
          add(wpath, "span inverted");
          continue;
        }
        if (!seg.span.covers(word.span)) add(wpath, "word outside segment");
        if (prev_word != nullptr && word.span.start < prev_word->span.end) {
          add(wpath, "words overlap");
        }
        prev_word = &word;
      }
    }
  }

  const VideoRecord& video_;
  ValidationReport report_;
};

}  // namespace

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) out << v.path << ": " << v.reason << '\n';
  return out.str();
}

ValidationReport validate(const VideoRecord& video) { return Checker(video).run(); }

}  // namespace emoco
