#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emoco/emotion.hpp"
#include "emoco/model.hpp"

namespace emoco {

/// How the sentence-level face emotion is voted from frames.
enum class FaceVote {
  kFrameCount,  // each detected frame is one vote
  kDuration,    // each frame votes with the time it covers inside the sentence
};

struct FusionOptions {
  /// Minimum run length, in detected frames, for a face emotion to count
  /// as established when looking for transitions.
  int min_hold_frames = 3;
  FaceVote face_vote = FaceVote::kFrameCount;
};

struct TransitionPoint {
  double time = 0.0;
  Emotion before{};
  Emotion after{};
  std::optional<std::size_t> word_index;  // word of the segment containing `time`

  friend bool operator==(const TransitionPoint&, const TransitionPoint&) = default;
};

struct SentenceFusion {
  int segment_id = 0;
  TimeSpan span;
  std::optional<ChannelEmotion> face;
  std::optional<ChannelEmotion> text;
  std::optional<ChannelEmotion> audio;
  EmotionDistribution face_distribution_mean;  // over detected frames in span
  EmotionDistribution text_distribution;
  EmotionDistribution audio_distribution;
  std::optional<int> coherence_degree;  // present iff all three channels are
  std::vector<TransitionPoint> transitions;
  std::size_t frames_in_span = 0;
  std::size_t detected_frames = 0;

  bool complete() const { return face && text && audio; }
  const std::optional<ChannelEmotion>& channel(Channel c) const;

  friend bool operator==(const SentenceFusion&, const SentenceFusion&) = default;
};

struct WordFusion {
  std::string text;        // original case
  std::string normalized;  // lowercased
  int segment_id = 0;
  std::size_t word_index = 0;
  TimeSpan span;
  std::array<double, kEmotionCount> face_durations{};
  double undetected_duration = 0.0;
  std::optional<ChannelEmotion> text_emotion;
  std::optional<ChannelEmotion> audio_emotion;

  double face_total() const;

  friend bool operator==(const WordFusion&, const WordFusion&) = default;
};

struct CoherencePoint {
  int segment_id = 0;
  std::optional<int> degree;

  friend bool operator==(const CoherencePoint&, const CoherencePoint&) = default;
};

/// Agreement of the three channel emotions: 2 when all equal, 0 when all
/// pairwise different, 1 otherwise.
int coherence_degree(Emotion face, Emotion text, Emotion audio);

/// Per-frame dominant face emotion, or nullopt for frames without a face.
std::optional<Emotion> frame_emotion(const FrameAnnotation& frame);

struct FrameShare {
  std::size_t frame = 0;  // index into the frame list
  double seconds = 0.0;
};

/// Time each frame covers inside `span`: frame i owns [t_i, t_{i+1}) and the
/// last frame extends past the end of the video. Time before the first frame
/// belongs to no frame. Frames must be sorted.
std::vector<FrameShare> frame_coverage(std::span<const FrameAnnotation> frames,
                                       const TimeSpan& span);

/// Most frequent per-frame dominant emotion among detected frames. Ties go to
/// the higher mean confidence, then canonical order. The confidence returned
/// is the mean dominant confidence over the winning frames.
/// `frames` must be the video's full sorted frame list.
std::optional<ChannelEmotion> sentence_face_emotion(std::span<const FrameAnnotation> frames,
                                                    const TimeSpan& span,
                                                    FaceVote vote = FaceVote::kFrameCount);

/// Debounced change points of the frame-level dominant face emotion.
/// Frames without a face neither break nor extend a run.
std::vector<TransitionPoint> detect_transitions(std::span<const FrameAnnotation> frames,
                                                int min_hold_frames);

SentenceFusion fuse_sentence(const VideoRecord& video, const Segment& segment,
                             const FusionOptions& options = {});
std::vector<SentenceFusion> fuse_video(const VideoRecord& video,
                                       const FusionOptions& options = {});

std::vector<WordFusion> fuse_words(const VideoRecord& video);

std::vector<CoherencePoint> coherence_timeline(std::span<const SentenceFusion> fusions);
std::vector<CoherencePoint> coherence_timeline(const VideoRecord& video,
                                               const FusionOptions& options = {});

}  // namespace emoco
