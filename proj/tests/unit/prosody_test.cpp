#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "emoco/errors.hpp"
#include "emoco/prosody.hpp"
#include "synthetic.hpp"

using namespace emoco;
using namespace emoco::testing;

namespace {

std::vector<float> scaled(const std::vector<float>& x, float c) {
  std::vector<float> out(x);
  for (float& v : out) v *= c;
  return out;
}

// Speech-like test signal: two tones plus a decaying envelope.
std::vector<float> voice_like(int sr, double seconds) {
  std::vector<float> out(static_cast<std::size_t>(sr * seconds));
  for (std::size_t i = 0; i < out.size(); ++i) {
    double t = static_cast<double>(i) / sr;
    double env = 0.6 * std::exp(-t);
    out[i] = static_cast<float>(env * (std::sin(2 * M_PI * 150 * t) + 0.3 * std::sin(2 * M_PI * 450 * t)));
  }
  return out;
}

}  // namespace

TEST(Intensity, SineRmsIsAmplitudeOverRootTwo) {
  for (double f : {100.0, 250.0, 440.0}) {
    auto x = sine(f, 0.5, 16000, 1.0);
    auto s = intensity(x, 16000, 0.04, 0.01);
    ASSERT_FALSE(s.samples.empty());
    for (const auto& smp : s.samples) {
      EXPECT_NEAR(smp.linear, 0.5 / std::sqrt(2.0), 1e-3) << f;
      EXPECT_NEAR(smp.value, 20 * std::log10(smp.linear), 1e-12);
    }
  }
}

TEST(Intensity, SilenceClampsAtFloor) {
  std::vector<float> zeros(4000, 0.0f);
  auto s = intensity(zeros, 8000, 0.04, 0.01);
  for (const auto& smp : s.samples) {
    EXPECT_EQ(smp.value, kSilenceDb);
    EXPECT_EQ(smp.linear, 0.0);
  }
  std::vector<float> tiny(4000, 1e-6f);
  for (const auto& smp : intensity(tiny, 8000, 0.04, 0.01).samples) EXPECT_EQ(smp.value, kSilenceDb);
}

TEST(Intensity, TwoLevelStepMatchesWindowOracle) {
  std::vector<float> x(8000, 0.2f);
  std::fill(x.begin() + 3000, x.end(), 0.7f);
  auto s = intensity(x, 8000, 0.04, 0.01);
  const std::size_t w = 320, h = 80;
  ASSERT_EQ(s.samples.size(), (x.size() - w) / h + 1);
  for (std::size_t k = 0; k < s.samples.size(); ++k) {
    double sum = 0.0;
    for (std::size_t i = k * h; i < k * h + w; ++i) sum += static_cast<double>(x[i]) * x[i];
    EXPECT_NEAR(s.samples[k].linear, std::sqrt(sum / w), 1e-12);
  }
  EXPECT_NEAR(s.samples.front().linear, 0.2, 1e-7);
  EXPECT_NEAR(s.samples.back().linear, 0.7, 1e-7);
}

TEST(Amplitude, ConstantOffset) {
  std::vector<float> x(4000, 0.3f);
  for (const auto& smp : amplitude(x, 8000, 0.04, 0.01).samples) EXPECT_FLOAT_EQ(smp.value, 0.3f);
}

TEST(Amplitude, SinePeak) {
  auto x = sine(220, 0.5, 44100, 0.5);
  for (const auto& smp : amplitude(x, 44100, 0.04, 0.01).samples) EXPECT_NEAR(smp.value, 0.5, 1e-3);
}

TEST(Amplitude, RampMatchesWindowOracle) {
  std::vector<float> x(2000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = -1.0f + 2.0f * i / x.size();
  auto s = amplitude(x, 8000, 0.04, 0.01);
  for (std::size_t k = 0; k < s.samples.size(); ++k) {
    float peak = 0.0f;
    for (std::size_t i = k * 80; i < k * 80 + 320; ++i) peak = std::max(peak, std::abs(x[i]));
    EXPECT_EQ(s.samples[k].value, peak);
  }
}

TEST(Framing, TimesAreWindowCentersWithConstantHop) {
  auto x = sine(200, 0.3, 8000, 1.0);
  for (const auto& series : {intensity(x, 8000, 0.04, 0.01), amplitude(x, 8000, 0.04, 0.01),
                              pitch(x, 8000, 0.04, 0.01, 65, 500)}) {
    const auto& s = series.samples;
    ASSERT_GT(s.size(), 2u);
    EXPECT_DOUBLE_EQ(s.front().time, 0.02);
    for (std::size_t i = 1; i < s.size(); ++i) {
      EXPECT_GT(s[i].time, s[i - 1].time);
      EXPECT_NEAR(s[i].time - s[i - 1].time, 0.01, 1e-12);
    }
  }
}

TEST(Framing, ShortAndEmptyInput) {
  EXPECT_TRUE(intensity({}, 8000, 0.04, 0.01).samples.empty());
  EXPECT_TRUE(pitch({}, 8000, 0.04, 0.01, 65, 500).samples.empty());
  std::vector<float> shortx(100, 0.5f);
  auto s = intensity(shortx, 8000, 0.04, 0.01);
  ASSERT_EQ(s.samples.size(), 1u);
  EXPECT_NEAR(s.samples[0].linear, 0.5, 1e-7);
}

TEST(Pitch, PureToneAt44k) {
  auto x = sine(220, 0.5, 44100, 0.5);
  auto s = pitch(x, 44100, 0.04, 0.01, 65, 500);
  ASSERT_FALSE(s.samples.empty());
  for (const auto& smp : s.samples) {
    EXPECT_TRUE(smp.voiced);
    EXPECT_NEAR(smp.value, 220.0, 2.0);
  }
}

TEST(Pitch, ToneSweepWithinOnePercent) {
  ProsodyParams params;
  params.fmax = 1000.0;
  for (int sr : {16000, 44100}) {
    for (double f : {110.0, 220.0, 440.0, 880.0}) {
      auto x = sine(f, 0.4, sr, 0.3);
      auto s = pitch(x, sr, params.window, params.hop, params.fmin, params.fmax, params);
      for (const auto& smp : s.samples) {
        ASSERT_TRUE(smp.voiced) << f << " @ " << sr;
        EXPECT_LT(std::abs(smp.value - f) / f, 0.01) << f << " @ " << sr;
      }
    }
  }
}

TEST(Pitch, WhiteNoiseIsUnvoiced) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<float> u(-0.5f, 0.5f);
  std::vector<float> x(16000);
  for (float& v : x) v = u(rng);
  auto s = pitch(x, 16000, 0.04, 0.01, 65, 500);
  for (const auto& smp : s.samples) {
    EXPECT_LT(smp.linear, 0.5);
    EXPECT_FALSE(smp.voiced);
    EXPECT_EQ(smp.value, 0.0);
  }
}

TEST(Pitch, SilenceIsUnvoiced) {
  std::vector<float> x(8000, 0.0f);
  for (const auto& smp : pitch(x, 8000, 0.04, 0.01, 65, 500).samples) {
    EXPECT_FALSE(smp.voiced);
    EXPECT_EQ(smp.value, 0.0);
  }
}

TEST(Pitch, BadRangeIsUsageError) {
  auto x = sine(220, 0.5, 8000, 0.1);
  EXPECT_THROW(pitch(x, 8000, 0.04, 0.01, 500, 65), Error);
}

TEST(Prosody, ScaleCovarianceIsExact) {
  auto x = voice_like(16000, 1.0);
  auto base_i = intensity(x, 16000, 0.04, 0.01);
  auto base_a = amplitude(x, 16000, 0.04, 0.01);
  for (float c : {0.5f, 2.0f, 4.0f}) {
    auto y = scaled(x, c);
    auto si = intensity(y, 16000, 0.04, 0.01);
    auto sa = amplitude(y, 16000, 0.04, 0.01);
    ASSERT_EQ(si.samples.size(), base_i.samples.size());
    for (std::size_t k = 0; k < si.samples.size(); ++k) {
      EXPECT_EQ(si.samples[k].linear, c * base_i.samples[k].linear);
      EXPECT_EQ(sa.samples[k].value, c * base_a.samples[k].value);
    }
  }
}

TEST(Prosody, ScaleCovarianceNonDyadicWithinRounding) {
  auto x = voice_like(16000, 1.0);
  auto base = intensity(x, 16000, 0.04, 0.01);
  auto y = scaled(x, 0.3f);
  auto s = intensity(y, 16000, 0.04, 0.01);
  for (std::size_t k = 0; k < s.samples.size(); ++k) {
    EXPECT_NEAR(s.samples[k].linear, 0.3 * base.samples[k].linear, 1e-6);
  }
}

TEST(Slice, WholeSpanIdentityBeforeFirstEmptyMidFilter) {
  auto x = voice_like(8000, 2.0);
  auto s = intensity(x, 8000, 0.04, 0.01);
  EXPECT_EQ(slice(s, {0.0, 2.0}), s.samples);
  EXPECT_TRUE(slice(s, {0.0, 0.015}).empty());
  TimeSpan mid{0.503, 1.2};
  std::vector<ProsodySample> expected;
  for (const auto& smp : s.samples) {
    if (smp.time >= mid.start && smp.time < mid.end) expected.push_back(smp);
  }
  EXPECT_EQ(slice(s, mid), expected);
  EXPECT_FALSE(expected.empty());
}

TEST(Prosody, ExtractUsesDefaults) {
  AudioTrack track;
  track.sample_rate = 8000;
  track.samples = sine(150, 0.4, 8000, 1.0);
  auto set = extract_prosody(track);
  EXPECT_EQ(set.get(Feature::kPitch).feature, Feature::kPitch);
  EXPECT_EQ(set.intensity.samples.size(), set.pitch.samples.size());
  EXPECT_EQ(set.amplitude.samples.size(), set.pitch.samples.size());
  for (const auto& smp : set.pitch.samples) {
    EXPECT_TRUE(smp.voiced);
    EXPECT_NEAR(smp.value, 150.0, 1.5);
  }
  EXPECT_EQ(parse_feature("pitch"), Feature::kPitch);
  EXPECT_FALSE(parse_feature("loudness"));
}
