#include "emoco/projection.hpp"

#include <algorithm>

namespace emoco {

std::string_view to_string(VectorMode m) {
  return m == VectorMode::kConcat ? "concat" : "literal3";
}

std::optional<VectorMode> parse_vector_mode(std::string_view name) {
  if (name == "concat") return VectorMode::kConcat;
  if (name == "literal3") return VectorMode::kLiteral3;
  return std::nullopt;
}

SentenceVector sentence_vector(const SentenceFusion& fusion, VectorMode mode) {
  SentenceVector v{fusion.segment_id, {}};
  if (mode == VectorMode::kLiteral3) {
    for (Channel c : kAllChannels) {
      const auto& e = fusion.channel(c);
      v.values.push_back(e ? e->confidence : 0.0);
    }
    return v;
  }
  v.values.reserve(3 * kEmotionCount);
  for (const auto* dist : {&fusion.face_distribution_mean, &fusion.text_distribution,
                           &fusion.audio_distribution}) {
    v.values.insert(v.values.end(), dist->values().begin(), dist->values().end());
  }
  return v;
}

namespace {

GlyphSector sector(const std::optional<ChannelEmotion>& e) {
  if (!e) return {};
  return {e->category, e->confidence};
}

}  // namespace

ProjectionModel build_projection(std::span<const SentenceFusion> fusions,
                                 const ProjectionParams& params) {
  std::vector<const SentenceFusion*> ordered;
  for (const auto& f : fusions) ordered.push_back(&f);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->segment_id < b->segment_id; });

  std::vector<std::vector<double>> vectors;
  vectors.reserve(ordered.size());
  for (const auto* f : ordered) vectors.push_back(sentence_vector(*f, params.mode).values);

  auto result = tsne(vectors, params.tsne);

  ProjectionModel model;
  model.params = params;
  model.kl_divergence = result.kl_final;
  model.perplexity_used = result.perplexity;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto& f = *ordered[i];
    model.points.push_back({f.segment_id, result.coords[i],
                            Glyph{sector(f.face), sector(f.text), sector(f.audio), f.segment_id}});
  }
  return model;
}

}  // namespace emoco
