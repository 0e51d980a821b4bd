#include "emoco/emotion.hpp"

#include <algorithm>
#include <string>

#include "emoco/errors.hpp"

namespace emoco {

namespace {

constexpr std::array<std::string_view, kEmotionCount> kEmotionNames = {
    "anger", "contempt", "disgust", "fear", "happiness", "neutral", "sadness", "surprise",
};

constexpr std::array<std::string_view, 3> kChannelNames = {"face", "text", "audio"};

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoDetection: return "no_detection";
    case ErrorCode::kNoFaces: return "no_faces";
    case ErrorCode::kNoAudio: return "no_audio";
    case ErrorCode::kDegenerateInput: return "degenerate_input";
    case ErrorCode::kUsage: return "usage_error";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kValidation: return "validation_error";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

std::string_view to_string(Emotion e) { return kEmotionNames[index_of(e)]; }

std::optional<Emotion> parse_emotion(std::string_view name) {
  auto it = std::find(kEmotionNames.begin(), kEmotionNames.end(), name);
  if (it == kEmotionNames.end()) return std::nullopt;
  return kAllEmotions[static_cast<std::size_t>(it - kEmotionNames.begin())];
}

std::string_view to_string(Channel c) { return kChannelNames[static_cast<std::size_t>(c)]; }

std::optional<Channel> parse_channel(std::string_view name) {
  auto it = std::find(kChannelNames.begin(), kChannelNames.end(), name);
  if (it == kChannelNames.end()) return std::nullopt;
  return kAllChannels[static_cast<std::size_t>(it - kChannelNames.begin())];
}

void EmotionDistribution::set(Emotion e, double confidence) {
  values_[index_of(e)] = confidence;
  mask_ = static_cast<std::uint8_t>(mask_ | (1u << index_of(e)));
}

bool EmotionDistribution::detected() const {
  return std::any_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
}

std::optional<ChannelEmotion> try_dominant(const EmotionDistribution& dist) {
  if (!dist.detected()) return std::nullopt;
  // Strict '>' keeps the earliest category on ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < kEmotionCount; ++i) {
    if (dist.values()[i] > dist.values()[best]) best = i;
  }
  return ChannelEmotion{kAllEmotions[best], dist.values()[best]};
}

ChannelEmotion dominant(const EmotionDistribution& dist) {
  auto result = try_dominant(dist);
  if (!result) throw Error(ErrorCode::kNoDetection, "distribution has no detected emotion");
  return *result;
}

}  // namespace emoco
