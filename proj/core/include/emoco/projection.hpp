#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "emoco/fusion.hpp"
#include "emoco/tsne.hpp"

namespace emoco {

enum class VectorMode {
  kConcat,    // 24 dims: face mean, text and audio distributions, 8 each
  kLiteral3,  // 3 dims: dominant confidence per channel
};

std::string_view to_string(VectorMode m);
std::optional<VectorMode> parse_vector_mode(std::string_view name);

struct SentenceVector {
  int segment_id = 0;
  std::vector<double> values;
};

/// Absent channels contribute zeros.
SentenceVector sentence_vector(const SentenceFusion& fusion, VectorMode mode = VectorMode::kConcat);

struct GlyphSector {
  std::optional<Emotion> category;
  double radius = 0.0;  // dominant confidence, 0 when absent
};

struct Glyph {
  GlyphSector face;
  GlyphSector text;
  GlyphSector audio;
  int time_index = 0;  // segment id
};

struct ProjectedSentence {
  int segment_id = 0;
  Point2 position;
  Glyph glyph;
};

struct ProjectionParams {
  VectorMode mode = VectorMode::kConcat;
  TsneParams tsne;
};

struct ProjectionModel {
  ProjectionParams params;
  /// Ordered by segment id, which is also the order of the connecting curve.
  std::vector<ProjectedSentence> points;
  double kl_divergence = 0.0;
  double perplexity_used = 0.0;
};

ProjectionModel build_projection(std::span<const SentenceFusion> fusions,
                                 const ProjectionParams& params = {});

}  // namespace emoco
