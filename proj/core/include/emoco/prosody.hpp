#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "emoco/model.hpp"

namespace emoco {

enum class Feature { kPitch, kIntensity, kAmplitude };

std::string_view to_string(Feature f);
std::optional<Feature> parse_feature(std::string_view name);

struct ProsodySample {
  double time = 0.0;    // window center, seconds
  double value = 0.0;   // Hz for pitch, dB for intensity, peak for amplitude
  double linear = 0.0;  // RMS for intensity, normalized autocorrelation peak for pitch
  bool voiced = true;   // only meaningful for pitch; unvoiced pitch values are 0

  friend bool operator==(const ProsodySample&, const ProsodySample&) = default;
};

struct ProsodySeries {
  Feature feature = Feature::kIntensity;
  double window = 0.0;  // seconds
  double hop = 0.0;     // seconds
  std::vector<ProsodySample> samples;

  friend bool operator==(const ProsodySeries&, const ProsodySeries&) = default;
};

struct ProsodyParams {
  double window = 0.040;
  double hop = 0.010;
  double fmin = 65.0;
  double fmax = 500.0;
  double voicing_threshold = 0.5;
  /// Windows with RMS below this are silent (unvoiced, -80 dB).
  double silence_rms = 1e-4;
  /// Among autocorrelation peaks within this fraction of the best one, the
  /// shortest lag wins. Guards against picking a multiple of the period.
  double octave_tolerance = 0.9;
};

inline constexpr double kSilenceDb = -80.0;

/// Windowed RMS. value = 20*log10(rms) clamped at -80 dB, linear = rms.
ProsodySeries intensity(std::span<const float> samples, int sample_rate, double window,
                        double hop);

/// Windowed peak absolute sample.
ProsodySeries amplitude(std::span<const float> samples, int sample_rate, double window,
                        double hop);

/// Autocorrelation pitch tracker with parabolic peak refinement.
ProsodySeries pitch(std::span<const float> samples, int sample_rate, double window, double hop,
                    double fmin, double fmax, const ProsodyParams& params = {});

/// Samples whose time lies in [span.start, span.end).
std::vector<ProsodySample> slice(const ProsodySeries& series, const TimeSpan& span);

struct ProsodySet {
  ProsodySeries pitch;
  ProsodySeries intensity;
  ProsodySeries amplitude;

  const ProsodySeries& get(Feature f) const;
};

ProsodySet extract_prosody(const AudioTrack& audio, const ProsodyParams& params = {});

}  // namespace emoco
