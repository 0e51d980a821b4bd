#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "emoco/emotion.hpp"
#include "emoco/errors.hpp"
#include "emoco/fusion.hpp"
#include "emoco/lexicon.hpp"
#include "oracles.hpp"

using namespace emoco;

namespace {

EmotionDistribution dist(std::initializer_list<std::pair<Emotion, double>> values) {
  EmotionDistribution d;
  for (auto [e, c] : values) d.set(e, c);
  return d;
}

}  // namespace

TEST(Emotion, NamesRoundTrip) {
  for (auto e : kAllEmotions) EXPECT_EQ(parse_emotion(to_string(e)), e);
  EXPECT_FALSE(parse_emotion("joy"));
  EXPECT_FALSE(parse_emotion("Happiness"));
  for (auto c : kAllChannels) EXPECT_EQ(parse_channel(to_string(c)), c);
}

TEST(Emotion, CanonicalOrderIsAlphabetical) {
  for (std::size_t i = 1; i < kEmotionCount; ++i) {
    EXPECT_LT(to_string(kAllEmotions[i - 1]), to_string(kAllEmotions[i]));
  }
}

TEST(Dominant, ForcedByMax) {
  auto d = dominant(dist({{Emotion::kHappiness, 0.9}, {Emotion::kNeutral, 0.1}}));
  EXPECT_EQ(d.category, Emotion::kHappiness);
  EXPECT_DOUBLE_EQ(d.confidence, 0.9);
}

TEST(Dominant, SingleCategory) {
  auto d = dominant(dist({{Emotion::kNeutral, 1.0}}));
  EXPECT_EQ(d.category, Emotion::kNeutral);
  EXPECT_DOUBLE_EQ(d.confidence, 1.0);
}

TEST(Dominant, TieGoesToCanonicalOrder) {
  auto d = dominant(dist({{Emotion::kFear, 0.5}, {Emotion::kAnger, 0.5}}));
  EXPECT_EQ(d.category, Emotion::kAnger);
  EXPECT_DOUBLE_EQ(d.confidence, 0.5);
}

TEST(Dominant, EmptyThrowsNoDetection) {
  try {
    dominant(EmotionDistribution{});
    FAIL() << "expected NoDetection";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoDetection);
  }
  EXPECT_FALSE(try_dominant(EmotionDistribution{}));
  EXPECT_FALSE(try_dominant(dist({{Emotion::kSadness, 0.0}})));
}

TEST(Dominant, MatchesOracleOnRandomGridDistributions) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> level(0, 4);
  for (int trial = 0; trial < 5000; ++trial) {
    EmotionDistribution d;
    for (auto e : kAllEmotions) {
      if (rng() % 2) d.set(e, level(rng) / 4.0);
    }
    auto expected = emoco::testing::oracle::argmax(d);
    auto got = try_dominant(d);
    ASSERT_EQ(got.has_value(), expected.has_value());
    if (got) EXPECT_EQ(got->category, *expected);
  }
}

TEST(Dominant, InvariantToInsertionOrder) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::pair<Emotion, double>> entries;
    for (auto e : kAllEmotions) entries.emplace_back(e, (rng() % 3) / 2.0);
    EmotionDistribution a;
    for (auto [e, c] : entries) a.set(e, c);
    std::shuffle(entries.begin(), entries.end(), rng);
    EmotionDistribution b;
    for (auto [e, c] : entries) b.set(e, c);
    EXPECT_EQ(try_dominant(a), try_dominant(b));
  }
}

TEST(Coherence, ReferenceTriples) {
  EXPECT_EQ(coherence_degree(Emotion::kHappiness, Emotion::kHappiness, Emotion::kHappiness), 2);
  EXPECT_EQ(coherence_degree(Emotion::kAnger, Emotion::kHappiness, Emotion::kSadness), 0);
  EXPECT_EQ(coherence_degree(Emotion::kNeutral, Emotion::kHappiness, Emotion::kNeutral), 1);
}

TEST(Coherence, ExhaustiveAgainstOracle) {
  for (auto f : kAllEmotions) {
    for (auto t : kAllEmotions) {
      for (auto a : kAllEmotions) {
        EXPECT_EQ(coherence_degree(f, t, a), emoco::testing::oracle::coherence(f, t, a));
      }
    }
  }
}

TEST(Coherence, SymmetricUnderPermutation) {
  for (auto x : kAllEmotions) {
    for (auto y : kAllEmotions) {
      for (auto z : kAllEmotions) {
        std::array<Emotion, 3> p{x, y, z};
        std::sort(p.begin(), p.end());
        const int base = coherence_degree(x, y, z);
        do {
          EXPECT_EQ(coherence_degree(p[0], p[1], p[2]), base);
        } while (std::next_permutation(p.begin(), p.end()));
      }
    }
  }
}

TEST(Lexicon, ParseSkipsCommentsAndBlanks) {
  auto list = WordList::parse("# header\nhappy\n\n  Sad \n#joy\n");
  EXPECT_EQ(list.size(), 2u);
  EXPECT_TRUE(list.contains("happy"));
  EXPECT_TRUE(list.contains("sad"));
  EXPECT_FALSE(list.contains("joy"));
}

TEST(Lexicon, BundledListsLoad) {
  EXPECT_TRUE(bundled_emotion_lexicon().contains("happy"));
  EXPECT_TRUE(bundled_stopwords().contains("you"));
  EXPECT_FALSE(bundled_stopwords().contains("happy"));
}

TEST(Lexicon, Tokenize) {
  EXPECT_EQ(normalize_token("\"Hello,"), "hello");
  EXPECT_EQ(normalize_token("don't!"), "don't");
  EXPECT_EQ(normalize_token("--"), "");
  EXPECT_EQ(tokenize("You, have  YOU."), (std::vector<std::string>{"you", "have", "you"}));
}
