#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoco/fusion.hpp"
#include "emoco/lexicon.hpp"
#include "emoco/model.hpp"
#include "emoco/prosody.hpp"

namespace emoco {

// ---------------------------------------------------------------------------
// Video summary
// ---------------------------------------------------------------------------

struct BarcodeRun {
  TimeSpan span;
  std::optional<Emotion> category;  // nullopt for undetected face / missing channel

  friend bool operator==(const BarcodeRun&, const BarcodeRun&) = default;
};

struct Barcode {
  std::vector<BarcodeRun> face;   // frame level, merged runs
  std::vector<BarcodeRun> text;   // one run per segment
  std::vector<BarcodeRun> audio;  // one run per segment

  const std::vector<BarcodeRun>& row(Channel c) const;
};

struct SummaryMetrics {
  /// Mean coherence degree over sentences where it is defined, in [0, 2].
  std::optional<double> coherence_score;
  /// Distinct categories appearing as any channel's sentence dominant.
  int diversity = 0;
  /// [channel][category] share of total segment duration.
  std::array<std::array<double, kEmotionCount>, 3> percentage{};

  double percent(Channel c, Emotion e) const {
    return percentage[static_cast<std::size_t>(c)][index_of(e)];
  }
};

struct SummaryOptions {
  bool duration_weighted_coherence = false;
};

struct VideoSummary {
  std::string video_id;
  std::string title;
  std::string category;
  double duration = 0.0;
  Barcode barcode;
  std::vector<CoherencePoint> coherence_line;
  SummaryMetrics metrics;
};

/// Face row of the barcode: consecutive frames with the same dominant
/// emotion merged; frame i covers [t_i, t_{i+1}), the last frame runs to the
/// end of the video and any time before the first frame is undetected.
std::vector<BarcodeRun> face_barcode(const VideoRecord& video);

VideoSummary build_summary(const VideoRecord& video, std::span<const SentenceFusion> fusions,
                           const SummaryOptions& options = {});

// ---------------------------------------------------------------------------
// Channel coherence (Sankey) model
// ---------------------------------------------------------------------------

struct FrameRef {
  std::size_t frame_index = 0;
  double timestamp = 0.0;
  std::optional<BoundingBox> box;

  friend bool operator==(const FrameRef&, const FrameRef&) = default;
};

struct TreemapCell {
  Emotion text_category{};  // identifies the face->text link of the owning face node
  std::size_t face_count = 0;
  std::optional<FrameRef> representative;
};

struct WeightedTerm {
  std::string word;
  double weight = 0.0;

  friend bool operator==(const WeightedTerm&, const WeightedTerm&) = default;
};

struct Histogram {
  Feature feature = Feature::kIntensity;
  std::vector<double> edges;   // bins + 1 uniform edges
  std::vector<double> counts;  // normalized to sum 1 unless empty
  std::size_t sample_count = 0;

  bool empty() const { return sample_count == 0; }
};

struct SankeyNode {
  Channel channel{};
  Emotion category{};
  double total_duration = 0.0;
  std::vector<int> sentence_ids;

  std::vector<TreemapCell> treemap;     // face nodes
  std::vector<WeightedTerm> terms;      // text nodes
  std::vector<Histogram> histograms;    // audio nodes, one per feature
};

struct SankeyLink {
  Emotion from{};
  Emotion to{};
  double total_duration = 0.0;
  std::vector<int> sentence_ids;
};

struct SankeyModel {
  std::vector<SankeyNode> face_nodes;
  std::vector<SankeyNode> text_nodes;
  std::vector<SankeyNode> audio_nodes;
  std::vector<SankeyLink> face_text;
  std::vector<SankeyLink> text_audio;
  /// Sentences left out because at least one channel is undetected.
  std::vector<int> residual;
  bool audio_features = false;

  const std::vector<SankeyNode>& column(Channel c) const;
};

struct SankeyOptions {
  std::size_t top_terms = 20;
  int histogram_bins = 20;
};

/// `prosody` may be null when the video has no audio; histograms are then
/// omitted and `audio_features` is false.
SankeyModel build_sankey(const VideoRecord& video, std::span<const SentenceFusion> fusions,
                         const ProsodySet* prosody, const SankeyOptions& options = {});

/// Detected frame closest (Euclidean, 8-dim confidences) to the mean
/// distribution of all detected frames inside `spans`. Ties go to the
/// earliest frame. Throws Error{kNoFaces} when no frame qualifies.
FrameRef representative_face(std::span<const TimeSpan> spans,
                             std::span<const FrameAnnotation> frames);

/// Term frequency times 2 for emotion lexicon words, stopwords removed.
/// Highest weight first, ties alphabetical.
std::vector<WeightedTerm> word_importance(std::span<const std::string> texts, std::size_t top_n,
                                          const WordList& stopwords = bundled_stopwords(),
                                          const WordList& lexicon = bundled_emotion_lexicon());

/// Pools the series samples falling in `spans` into `bins` uniform bins over
/// the global range of the series (voiced samples only for pitch).
Histogram feature_histogram(std::span<const TimeSpan> spans, const ProsodySeries& series,
                            int bins);

// ---------------------------------------------------------------------------
// Word statistics
// ---------------------------------------------------------------------------

struct WordOccurrence {
  int segment_id = 0;
  TimeSpan span;

  friend bool operator==(const WordOccurrence&, const WordOccurrence&) = default;
};

struct WordStat {
  std::string word;
  std::size_t frequency = 0;
  double total_duration = 0.0;
  std::array<double, kEmotionCount> face_durations{};
  double undetected_duration = 0.0;
  std::vector<WordOccurrence> occurrences;
};

struct WordSortKey {
  enum class Kind { kFrequency, kDuration, kCategoryDuration };
  Kind kind = Kind::kFrequency;
  Emotion category = Emotion::kNeutral;

  /// Accepts "frequency", "duration", "category-duration:<emotion>" and
  /// "category-duration(<emotion>)". Throws Error{kUsage} otherwise.
  static WordSortKey parse(std::string_view text);
};

/// Aggregates word fusions by lowercased text, keeps words containing
/// `filter` (case-insensitive), sorted descending by key, ties alphabetical.
std::vector<WordStat> word_table(std::span<const WordFusion> words, const WordSortKey& key,
                                 std::string_view filter = {});

}  // namespace emoco
