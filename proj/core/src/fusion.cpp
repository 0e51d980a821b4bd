#include "emoco/fusion.hpp"

#include <algorithm>
#include <limits>

namespace emoco {

const std::optional<ChannelEmotion>& SentenceFusion::channel(Channel c) const {
  switch (c) {
    case Channel::kFace: return face;
    case Channel::kText: return text;
    case Channel::kAudio: return audio;
  }
  return face;
}

double WordFusion::face_total() const {
  double total = 0.0;
  for (double d : face_durations) total += d;
  return total;
}

int coherence_degree(Emotion face, Emotion text, Emotion audio) {
  if (face == text && text == audio) return 2;
  if (face != text && text != audio && face != audio) return 0;
  return 1;
}

std::optional<Emotion> frame_emotion(const FrameAnnotation& frame) {
  if (!frame.face_detected) return std::nullopt;
  auto d = try_dominant(frame.emotions);
  if (!d) return std::nullopt;
  return d->category;
}

std::vector<FrameShare> frame_coverage(std::span<const FrameAnnotation> frames,
                                       const TimeSpan& span) {
  std::vector<FrameShare> shares;
  if (frames.empty() || span.duration() <= 0.0) return shares;
  auto after_start = std::upper_bound(
      frames.begin(), frames.end(), span.start,
      [](double t, const FrameAnnotation& f) { return t < f.timestamp; });
  std::size_t i = after_start == frames.begin()
                      ? 0
                      : static_cast<std::size_t>(after_start - frames.begin()) - 1;
  for (; i < frames.size() && frames[i].timestamp < span.end; ++i) {
    double next = i + 1 < frames.size() ? frames[i + 1].timestamp
                                        : std::numeric_limits<double>::infinity();
    double lo = std::max(frames[i].timestamp, span.start);
    double hi = std::min(next, span.end);
    if (hi > lo) shares.push_back({i, hi - lo});
  }
  return shares;
}

std::optional<ChannelEmotion> sentence_face_emotion(std::span<const FrameAnnotation> frames,
                                                    const TimeSpan& span, FaceVote vote) {
  std::array<double, kEmotionCount> votes{};
  std::array<double, kEmotionCount> confidence_sum{};
  std::array<int, kEmotionCount> winning_frames{};
  bool any = false;

  auto tally = [&](const FrameAnnotation& frame, double weight) {
    if (!frame.face_detected) return;
    auto d = try_dominant(frame.emotions);
    if (!d) return;
    const auto k = index_of(d->category);
    votes[k] += weight;
    confidence_sum[k] += d->confidence;
    winning_frames[k] += 1;
    any = true;
  };

  if (vote == FaceVote::kFrameCount) {
    auto range = frames_in(frames, span);
    for (std::size_t i = range.first; i < range.last; ++i) tally(frames[i], 1.0);
  } else {
    for (const auto& share : frame_coverage(frames, span)) tally(frames[share.frame], share.seconds);
  }
  if (!any) return std::nullopt;

  std::optional<std::size_t> best;
  double best_mean = 0.0;
  for (std::size_t k = 0; k < kEmotionCount; ++k) {
    if (winning_frames[k] == 0) continue;
    double mean = confidence_sum[k] / winning_frames[k];
    if (!best || votes[k] > votes[*best] || (votes[k] == votes[*best] && mean > best_mean)) {
      best = k;
      best_mean = mean;
    }
  }
  return ChannelEmotion{kAllEmotions[*best], best_mean};
}

std::vector<TransitionPoint> detect_transitions(std::span<const FrameAnnotation> frames,
                                                int min_hold_frames) {
  struct Run {
    Emotion category;
    std::size_t first_frame;
    int length;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    auto e = frame_emotion(frames[i]);
    if (!e) continue;
    if (!runs.empty() && runs.back().category == *e) {
      ++runs.back().length;
    } else {
      runs.push_back({*e, i, 1});
    }
  }

  std::vector<TransitionPoint> out;
  std::optional<Emotion> established;
  for (const auto& run : runs) {
    if (run.length < min_hold_frames) continue;
    if (established && *established != run.category) {
      out.push_back({frames[run.first_frame].timestamp, *established, run.category, std::nullopt});
    }
    established = run.category;
  }
  return out;
}

SentenceFusion fuse_sentence(const VideoRecord& video, const Segment& segment,
                             const FusionOptions& options) {
  SentenceFusion out;
  out.segment_id = segment.id;
  out.span = segment.span;
  out.text_distribution = segment.text_emotion;
  out.audio_distribution = segment.audio_emotion;
  out.text = try_dominant(segment.text_emotion);
  out.audio = try_dominant(segment.audio_emotion);
  out.face = sentence_face_emotion(video.frames, segment.span, options.face_vote);

  auto range = frames_in(video.frames, segment.span);
  std::span<const FrameAnnotation> in_span(video.frames.data() + range.first, range.size());
  out.frames_in_span = in_span.size();

  std::array<double, kEmotionCount> sums{};
  for (const auto& f : in_span) {
    if (!f.face_detected || !f.emotions.detected()) continue;
    ++out.detected_frames;
    for (std::size_t k = 0; k < kEmotionCount; ++k) sums[k] += f.emotions.values()[k];
  }
  if (out.detected_frames > 0) {
    for (std::size_t k = 0; k < kEmotionCount; ++k) {
      out.face_distribution_mean.set(kAllEmotions[k],
                                     sums[k] / static_cast<double>(out.detected_frames));
    }
  }

  if (out.complete()) {
    out.coherence_degree = coherence_degree(out.face->category, out.text->category,
                                            out.audio->category);
  }

  out.transitions = detect_transitions(in_span, options.min_hold_frames);
  for (auto& t : out.transitions) {
    for (std::size_t w = 0; w < segment.words.size(); ++w) {
      if (segment.words[w].span.contains(t.time)) {
        t.word_index = w;
        break;
      }
    }
  }
  return out;
}

std::vector<SentenceFusion> fuse_video(const VideoRecord& video, const FusionOptions& options) {
  std::vector<SentenceFusion> out;
  out.reserve(video.segments.size());
  for (const auto& seg : video.segments) out.push_back(fuse_sentence(video, seg, options));
  return out;
}

std::vector<WordFusion> fuse_words(const VideoRecord& video) {
  std::vector<WordFusion> out;
  for (const auto& seg : video.segments) {
    auto text = try_dominant(seg.text_emotion);
    auto audio = try_dominant(seg.audio_emotion);
    for (std::size_t w = 0; w < seg.words.size(); ++w) {
      const auto& word = seg.words[w];
      WordFusion wf;
      wf.text = word.text;
      wf.normalized = word.normalized();
      wf.segment_id = seg.id;
      wf.word_index = w;
      wf.span = word.span;
      wf.text_emotion = text;
      wf.audio_emotion = audio;
      double covered = 0.0;
      for (const auto& share : frame_coverage(video.frames, word.span)) {
        covered += share.seconds;
        if (auto e = frame_emotion(video.frames[share.frame])) {
          wf.face_durations[index_of(*e)] += share.seconds;
        } else {
          wf.undetected_duration += share.seconds;
        }
      }
      // Time before the first frame has no face information.
      wf.undetected_duration += std::max(0.0, word.span.duration() - covered);
      out.push_back(std::move(wf));
    }
  }
  return out;
}

std::vector<CoherencePoint> coherence_timeline(std::span<const SentenceFusion> fusions) {
  std::vector<CoherencePoint> out;
  out.reserve(fusions.size());
  for (const auto& f : fusions) out.push_back({f.segment_id, f.coherence_degree});
  return out;
}

std::vector<CoherencePoint> coherence_timeline(const VideoRecord& video,
                                               const FusionOptions& options) {
  auto fusions = fuse_video(video, options);
  return coherence_timeline(fusions);
}

}  // namespace emoco
