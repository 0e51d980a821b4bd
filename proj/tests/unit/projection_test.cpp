#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "emoco/fusion.hpp"
#include "emoco/projection.hpp"
#include "fixtures.hpp"
#include "synthetic.hpp"

using namespace emoco;
using namespace emoco::testing;

namespace {

SentenceFusion fusion_of(std::optional<std::pair<Emotion, double>> face,
                         std::optional<std::pair<Emotion, double>> text,
                         std::optional<std::pair<Emotion, double>> audio, int id = 0) {
  SentenceFusion f;
  f.segment_id = id;
  f.span = {0.0, 1.0};
  if (face) {
    f.face = ChannelEmotion{face->first, face->second};
    f.face_distribution_mean.set(face->first, face->second);
  }
  if (text) {
    f.text = ChannelEmotion{text->first, text->second};
    f.text_distribution.set(text->first, text->second);
  }
  if (audio) {
    f.audio = ChannelEmotion{audio->first, audio->second};
    f.audio_distribution.set(audio->first, audio->second);
  }
  return f;
}

std::size_t nonzeros(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x != 0.0; }));
}

}  // namespace

TEST(SentenceVector, AllAbsentIsZero) {
  auto f = fusion_of(std::nullopt, std::nullopt, std::nullopt);
  EXPECT_EQ(sentence_vector(f).values, std::vector<double>(24, 0.0));
  EXPECT_EQ(sentence_vector(f, VectorMode::kLiteral3).values, std::vector<double>(3, 0.0));
}

TEST(SentenceVector, ConcatOneHotPlacement) {
  auto f = fusion_of(std::pair{Emotion::kNeutral, 1.0}, std::pair{Emotion::kHappiness, 1.0},
                     std::pair{Emotion::kNeutral, 1.0});
  auto v = sentence_vector(f).values;
  ASSERT_EQ(v.size(), 24u);
  EXPECT_EQ(nonzeros(v), 3u);
  EXPECT_EQ(v[0 * 8 + index_of(Emotion::kNeutral)], 1.0);
  EXPECT_EQ(v[1 * 8 + index_of(Emotion::kHappiness)], 1.0);
  EXPECT_EQ(v[2 * 8 + index_of(Emotion::kNeutral)], 1.0);
}

TEST(SentenceVector, Literal3ReadsDominantConfidences) {
  auto f = fusion_of(std::pair{Emotion::kFear, 0.7}, std::pair{Emotion::kFear, 0.9},
                     std::pair{Emotion::kAnger, 0.6});
  EXPECT_EQ(sentence_vector(f, VectorMode::kLiteral3).values, (std::vector<double>{0.7, 0.9, 0.6}));

  auto v = eq1_demo();
  for (const auto& fused : fuse_video(v)) {
    auto lit = sentence_vector(fused, VectorMode::kLiteral3).values;
    EXPECT_EQ(lit[0], fused.face->confidence);
    EXPECT_EQ(lit[1], fused.text->confidence);
    EXPECT_EQ(lit[2], fused.audio->confidence);
  }
}

TEST(SentenceVector, ComponentsInUnitRangeAndFixedDimension) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto v = make_synthetic_video(seed);
    for (auto mode : {VectorMode::kConcat, VectorMode::kLiteral3}) {
      std::size_t dim = 0;
      for (const auto& f : fuse_video(v)) {
        auto vec = sentence_vector(f, mode).values;
        if (dim == 0) dim = vec.size();
        EXPECT_EQ(vec.size(), dim);
        for (double x : vec) {
          EXPECT_GE(x, 0.0);
          EXPECT_LE(x, 1.0);
        }
      }
    }
  }
}

TEST(Projection, OneSentenceAtOrigin) {
  std::vector<SentenceFusion> one = {fusion_of(std::pair{Emotion::kFear, 0.5}, std::nullopt,
                                               std::nullopt, 7)};
  auto m = build_projection(one);
  ASSERT_EQ(m.points.size(), 1u);
  EXPECT_EQ(m.points[0].position, (Point2{0.0, 0.0}));
  EXPECT_EQ(m.points[0].glyph.time_index, 7);
  EXPECT_EQ(m.points[0].glyph.face.category, Emotion::kFear);
  EXPECT_FALSE(m.points[0].glyph.text.category);
  EXPECT_EQ(m.points[0].glyph.text.radius, 0.0);
}

TEST(Projection, ThirtySentences) {
  SyntheticSpec spec;
  spec.max_segments = 30;
  VideoRecord v;
  for (std::uint64_t seed = 0;; ++seed) {
    v = make_synthetic_video(seed, spec);
    if (v.segments.size() == 30) break;
    ASSERT_LT(seed, 1000u);
  }
  auto fused = fuse_video(v);
  ProjectionParams params;
  params.tsne.iterations = 300;
  auto m = build_projection(fused, params);
  ASSERT_EQ(m.points.size(), 30u);
  for (int i = 0; i < 30; ++i) {
    EXPECT_EQ(m.points[i].glyph.time_index, i);
    EXPECT_EQ(m.points[i].segment_id, i);
    EXPECT_TRUE(std::isfinite(m.points[i].position.x));
    EXPECT_TRUE(std::isfinite(m.points[i].position.y));
  }
}

TEST(Projection, GlyphRadiiEqualFusionConfidences) {
  auto v = load_fixture_store()->find("mixed-signals")->record;
  auto fused = fuse_video(v);
  auto m = build_projection(fused);
  ASSERT_EQ(m.points.size(), fused.size());
  for (std::size_t i = 0; i < fused.size(); ++i) {
    const auto& g = m.points[i].glyph;
    auto check = [](const GlyphSector& s, const std::optional<ChannelEmotion>& c) {
      if (c) {
        EXPECT_EQ(s.category, c->category);
        EXPECT_EQ(s.radius, c->confidence);
      } else {
        EXPECT_FALSE(s.category);
        EXPECT_EQ(s.radius, 0.0);
      }
    };
    check(g.face, fused[i].face);
    check(g.text, fused[i].text);
    check(g.audio, fused[i].audio);
  }
}

TEST(Projection, SeedChangesLayoutDeterministically) {
  auto fused = fuse_video(two_cluster());
  ProjectionParams a;
  ProjectionParams b;
  b.tsne.seed = 99;
  auto ma = build_projection(fused, a);
  auto ma2 = build_projection(fused, a);
  auto mb = build_projection(fused, b);
  for (std::size_t i = 0; i < ma.points.size(); ++i) {
    EXPECT_EQ(ma.points[i].position, ma2.points[i].position);
  }
  EXPECT_NE(ma.points[0].position, mb.points[0].position);
  EXPECT_EQ(ma.perplexity_used, 5.0);
}

TEST(Projection, ModeNames) {
  EXPECT_EQ(parse_vector_mode("concat"), VectorMode::kConcat);
  EXPECT_EQ(parse_vector_mode("literal3"), VectorMode::kLiteral3);
  EXPECT_FALSE(parse_vector_mode("pca"));
  EXPECT_EQ(to_string(VectorMode::kLiteral3), "literal3");
}
