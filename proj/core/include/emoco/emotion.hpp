#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace emoco {

/// The unified category set across face, text and audio recognizers.
/// Enumerator order is the canonical order used for every tie-break.
enum class Emotion : std::uint8_t {
  kAnger,
  kContempt,
  kDisgust,
  kFear,
  kHappiness,
  kNeutral,
  kSadness,
  kSurprise,
};

inline constexpr std::size_t kEmotionCount = 8;

inline constexpr std::array<Emotion, kEmotionCount> kAllEmotions = {
    Emotion::kAnger,     Emotion::kContempt, Emotion::kDisgust,
    Emotion::kFear,      Emotion::kHappiness, Emotion::kNeutral,
    Emotion::kSadness,   Emotion::kSurprise,
};

constexpr std::size_t index_of(Emotion e) { return static_cast<std::size_t>(e); }

std::string_view to_string(Emotion e);
std::optional<Emotion> parse_emotion(std::string_view name);

/// Per-category confidences reported by one recognizer. Categories that were
/// never set read as zero; confidences need not sum to one.
class EmotionDistribution {
 public:
  EmotionDistribution() = default;

  void set(Emotion e, double confidence);
  void clear() { *this = EmotionDistribution{}; }

  double operator[](Emotion e) const { return values_[index_of(e)]; }
  bool has(Emotion e) const { return (mask_ >> index_of(e)) & 1u; }

  /// True when no category was ever set.
  bool empty() const { return mask_ == 0; }
  /// True when some category has strictly positive confidence.
  bool detected() const;

  const std::array<double, kEmotionCount>& values() const { return values_; }

  friend bool operator==(const EmotionDistribution&, const EmotionDistribution&) = default;

 private:
  std::array<double, kEmotionCount> values_{};
  std::uint8_t mask_ = 0;
};

struct ChannelEmotion {
  Emotion category;
  double confidence;

  friend bool operator==(const ChannelEmotion&, const ChannelEmotion&) = default;
};

/// Category with the highest confidence; ties go to the earlier category in
/// canonical order. Throws Error{kNoDetection} when nothing was detected.
ChannelEmotion dominant(const EmotionDistribution& dist);

/// Same as dominant() but returns nullopt instead of throwing.
std::optional<ChannelEmotion> try_dominant(const EmotionDistribution& dist);

enum class Channel : std::uint8_t { kFace, kText, kAudio };

inline constexpr std::array<Channel, 3> kAllChannels = {Channel::kFace, Channel::kText,
                                                        Channel::kAudio};

std::string_view to_string(Channel c);
std::optional<Channel> parse_channel(std::string_view name);

}  // namespace emoco
