#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emoco/emotion.hpp"

namespace emoco {

/// Half-open interval [start, end) in seconds.
struct TimeSpan {
  double start = 0.0;
  double end = 0.0;

  double duration() const { return end - start; }
  bool contains(double t) const { return t >= start && t < end; }
  bool covers(const TimeSpan& other) const {
    return other.start >= start && other.end <= end;
  }
  double overlap(const TimeSpan& other) const;

  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

/// Normalized face rectangle; all fields in [0, 1].
struct BoundingBox {
  double left = 0.0;
  double top = 0.0;
  double width = 0.0;
  double height = 0.0;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct FrameAnnotation {
  double timestamp = 0.0;
  bool face_detected = false;
  EmotionDistribution emotions;  // empty iff !face_detected
  std::optional<BoundingBox> box;

  friend bool operator==(const FrameAnnotation&, const FrameAnnotation&) = default;
};

struct WordToken {
  std::string text;  // original case
  TimeSpan span;

  /// Lowercased form used for statistics.
  std::string normalized() const;

  friend bool operator==(const WordToken&, const WordToken&) = default;
};

/// One transcript segment, the unit the analysis calls a sentence.
struct Segment {
  int id = 0;
  TimeSpan span;
  std::string text;
  std::vector<WordToken> words;
  EmotionDistribution text_emotion;
  EmotionDistribution audio_emotion;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct AudioTrack {
  std::vector<float> samples;  // mono, in [-1, 1)
  int sample_rate = 0;

  double duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }

  friend bool operator==(const AudioTrack&, const AudioTrack&) = default;
};

struct VideoRecord {
  std::string id;
  std::string title;
  std::string category;
  double duration = 0.0;
  double frame_rate = 0.0;
  std::vector<FrameAnnotation> frames;
  std::vector<Segment> segments;
  std::vector<TimeSpan> laughter;
  std::optional<AudioTrack> audio;
  /// File name of the playable media inside the bundle, if any.
  std::optional<std::string> media;

  friend bool operator==(const VideoRecord&, const VideoRecord&) = default;
};

/// Frames whose timestamp falls in `span`, as an index range into `frames`.
struct FrameRange {
  std::size_t first = 0;
  std::size_t last = 0;  // one past the end

  std::size_t size() const { return last - first; }
  bool empty() const { return first == last; }
};

/// Requires frames sorted by timestamp.
FrameRange frames_in(std::span<const FrameAnnotation> frames, const TimeSpan& span);

}  // namespace emoco
