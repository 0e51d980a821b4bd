#include "emoco/prosody.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "emoco/errors.hpp"

namespace emoco {

namespace {

struct Framing {
  std::size_t window = 0;
  std::size_t hop = 0;
  std::size_t count = 0;
};

Framing make_framing(std::size_t n, int sample_rate, double window, double hop) {
  if (sample_rate <= 0) throw Error(ErrorCode::kUsage, "sample rate must be positive");
  if (!(hop > 0.0) || window < hop) throw Error(ErrorCode::kUsage, "requires window >= hop > 0");
  Framing f;
  f.window = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(window * sample_rate)));
  f.hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(hop * sample_rate)));
  if (n == 0) return f;
  f.count = n >= f.window ? (n - f.window) / f.hop + 1 : 1;
  return f;
}

template <typename PerWindow>
ProsodySeries windowed(Feature feature, std::span<const float> samples, int sample_rate,
                       double window, double hop, PerWindow&& per_window) {
  const Framing framing = make_framing(samples.size(), sample_rate, window, hop);
  ProsodySeries series{feature, window, hop, {}};
  series.samples.reserve(framing.count);
  for (std::size_t k = 0; k < framing.count; ++k) {
    const std::size_t begin = k * framing.hop;
    const std::size_t len = std::min(framing.window, samples.size() - begin);
    ProsodySample s = per_window(samples.subspan(begin, len));
    s.time = (static_cast<double>(begin) + 0.5 * static_cast<double>(framing.window)) /
             sample_rate;
    series.samples.push_back(s);
  }
  return series;
}

double rms_of(std::span<const float> x) {
  double sum = 0.0;
  for (float v : x) sum += static_cast<double>(v) * v;
  return std::sqrt(sum / static_cast<double>(x.size()));
}

double to_db(double rms) {
  if (!(rms > 0.0)) return kSilenceDb;
  return std::max(kSilenceDb, 20.0 * std::log10(rms));
}

}  // namespace

std::string_view to_string(Feature f) {
  switch (f) {
    case Feature::kPitch: return "pitch";
    case Feature::kIntensity: return "intensity";
    case Feature::kAmplitude: return "amplitude";
  }
  return "unknown";
}

std::optional<Feature> parse_feature(std::string_view name) {
  if (name == "pitch") return Feature::kPitch;
  if (name == "intensity") return Feature::kIntensity;
  if (name == "amplitude") return Feature::kAmplitude;
  return std::nullopt;
}

ProsodySeries intensity(std::span<const float> samples, int sample_rate, double window,
                        double hop) {
  return windowed(Feature::kIntensity, samples, sample_rate, window, hop,
                  [](std::span<const float> x) {
                    double rms = rms_of(x);
                    return ProsodySample{0.0, to_db(rms), rms, true};
                  });
}

ProsodySeries amplitude(std::span<const float> samples, int sample_rate, double window,
                        double hop) {
  return windowed(Feature::kAmplitude, samples, sample_rate, window, hop,
                  [](std::span<const float> x) {
                    double peak = 0.0;
                    for (float v : x) peak = std::max(peak, std::abs(static_cast<double>(v)));
                    return ProsodySample{0.0, peak, peak, true};
                  });
}

ProsodySeries pitch(std::span<const float> samples, int sample_rate, double window, double hop,
                    double fmin, double fmax, const ProsodyParams& params) {
  if (!(fmin > 0.0) || !(fmin < fmax) || fmax > sample_rate / 2.0) {
    throw Error(ErrorCode::kUsage, "pitch requires 0 < fmin < fmax <= sampleRate/2");
  }
  if (window < 2.0 / fmin) throw Error(ErrorCode::kUsage, "pitch window must be >= 2/fmin");

  const auto min_lag = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(sample_rate / fmax)));
  const auto max_lag = static_cast<std::size_t>(std::ceil(sample_rate / fmin));

  std::vector<double> x;
  std::vector<double> prefix;  // prefix sums of x^2
  std::vector<double> r;

  return windowed(Feature::kPitch, samples, sample_rate, window, hop,
                  [&](std::span<const float> raw) {
    ProsodySample out{0.0, 0.0, 0.0, false};
    const std::size_t n = raw.size();
    if (rms_of(raw) < params.silence_rms) return out;

    double mean = 0.0;
    for (float v : raw) mean += v;
    mean /= static_cast<double>(n);
    x.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) x[i] = raw[i] - mean;
    prefix.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i] * x[i];

    // r[lag] for lag in [min_lag - 1, max_lag + 1], zero where undefined.
    const std::size_t hi = std::min(max_lag + 1, n > 1 ? n - 1 : 0);
    if (hi < min_lag + 1) return out;
    r.assign(hi + 1, 0.0);
    for (std::size_t lag = min_lag - 1; lag <= hi; ++lag) {
      double cross = 0.0;
      for (std::size_t i = 0; i + lag < n; ++i) cross += x[i] * x[i + lag];
      double e0 = prefix[n - lag];
      double e1 = prefix[n] - prefix[lag];
      double denom = std::sqrt(e0 * e1);
      r[lag] = denom > 0.0 ? cross / denom : 0.0;
    }

    const std::size_t last = std::min(max_lag, hi - 1);
    double best = -1.0;
    for (std::size_t lag = min_lag; lag <= last; ++lag) best = std::max(best, r[lag]);
    if (best <= 0.0) return out;

    std::size_t chosen = 0;
    for (std::size_t lag = min_lag; lag <= last; ++lag) {
      bool local_max = r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1];
      if (local_max && r[lag] >= params.octave_tolerance * best) {
        chosen = lag;
        break;
      }
    }
    if (chosen == 0) return out;

    const double a = r[chosen - 1];
    const double b = r[chosen];
    const double c = r[chosen + 1];
    const double curvature = a - 2.0 * b + c;
    double shift = curvature < 0.0 ? 0.5 * (a - c) / curvature : 0.0;
    shift = std::clamp(shift, -0.5, 0.5);
    const double peak = b - 0.25 * (a - c) * shift;
    const double lag = static_cast<double>(chosen) + shift;

    out.linear = peak;
    if (peak >= params.voicing_threshold) {
      out.voiced = true;
      out.value = sample_rate / lag;
    }
    return out;
  });
}

std::vector<ProsodySample> slice(const ProsodySeries& series, const TimeSpan& span) {
  std::vector<ProsodySample> out;
  std::copy_if(series.samples.begin(), series.samples.end(), std::back_inserter(out),
               [&](const ProsodySample& s) { return span.contains(s.time); });
  return out;
}

const ProsodySeries& ProsodySet::get(Feature f) const {
  switch (f) {
    case Feature::kPitch: return pitch;
    case Feature::kIntensity: return intensity;
    case Feature::kAmplitude: return amplitude;
  }
  return intensity;
}

ProsodySet extract_prosody(const AudioTrack& audio, const ProsodyParams& params) {
  ProsodySet set;
  set.intensity = intensity(audio.samples, audio.sample_rate, params.window, params.hop);
  set.amplitude = amplitude(audio.samples, audio.sample_rate, params.window, params.hop);
  set.pitch = pitch(audio.samples, audio.sample_rate, params.window, params.hop, params.fmin,
                    params.fmax, params);
  return set;
}

}  // namespace emoco
