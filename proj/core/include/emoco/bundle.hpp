#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emoco/errors.hpp"
#include "emoco/model.hpp"
#include "emoco/validate.hpp"

namespace emoco {

/// File locations of one on-disk bundle.
struct BundleManifest {
  std::filesystem::path directory;
  std::filesystem::path meta;
  std::filesystem::path frames;
  std::filesystem::path segments;
  std::optional<std::filesystem::path> laughter;
  std::optional<std::filesystem::path> audio;

  /// Standard layout: meta.json, frames.jsonl, segments.json and the
  /// optional laughter.json / audio.wav when present.
  static BundleManifest from_directory(const std::filesystem::path& dir);
};

struct LoadOptions {
  /// Segments whose laughter overlap exceeds this fraction of their
  /// duration lose their audio emotion.
  double laughter_threshold = 0.5;
};

/// Thrown by load_bundle when the parsed record breaks an invariant.
class ValidationFailure : public Error {
 public:
  explicit ValidationFailure(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Text documents of a bundle, exactly as stored on disk.
struct BundleDocuments {
  std::string meta;
  std::string frames;
  std::string segments;
  std::optional<std::string> laughter;
};

/// Parses, sorts (frames by time, segments by start), validates and applies
/// laughter masking.
VideoRecord parse_bundle(const BundleDocuments& docs, std::optional<AudioTrack> audio,
                         const LoadOptions& options = {});
VideoRecord load_bundle(const BundleManifest& manifest, const LoadOptions& options = {});

BundleDocuments encode_bundle(const VideoRecord& video);
/// Writes meta/frames/segments (+ laughter, audio) into `dir`, creating it.
void write_bundle(const VideoRecord& video, const std::filesystem::path& dir);

/// Clears audio emotion on segments where laughter covers more than
/// `threshold` of the segment duration. Text and face data are untouched.
std::vector<Segment> mask_laughter(std::span<const Segment> segments,
                                   std::span<const TimeSpan> laughter, double threshold);

/// Fraction of `span` covered by the union of `laughter`.
double laughter_fraction(const TimeSpan& span, std::span<const TimeSpan> laughter);

/// Hex SHA-256 over the canonical encoding of the record.
std::string content_hash(const VideoRecord& video);

/// Hex SHA-256 of arbitrary bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace emoco
