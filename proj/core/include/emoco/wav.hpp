#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "emoco/model.hpp"

namespace emoco {

/// Decodes a RIFF/WAVE PCM 16-bit little-endian stream. Multi-channel input
/// keeps only the first channel. Throws Error{kParse} on malformed input.
AudioTrack parse_wav(std::span<const std::uint8_t> bytes);
AudioTrack read_wav(const std::filesystem::path& path);

/// Encodes mono 16-bit PCM. Samples are clamped to [-1, 1).
std::vector<std::uint8_t> encode_wav(const AudioTrack& track);
void write_wav(const std::filesystem::path& path, const AudioTrack& track);

}  // namespace emoco
