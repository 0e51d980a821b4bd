#pragma once

// JSON encodings shared by bundle I/O and the HTTP service.

#include <optional>
#include <span>

#include "emoco/analytics.hpp"
#include "emoco/emotion.hpp"
#include "emoco/fusion.hpp"
#include "emoco/projection.hpp"
#include "emoco/prosody.hpp"
#include "json.hpp"

namespace emoco::codec {

nlohmann::json distribution_to_json(const EmotionDistribution& dist);
/// Throws Error{kParse} on unknown category names or non-numeric values.
EmotionDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const std::optional<ChannelEmotion>& e);
nlohmann::json to_json(const std::optional<Emotion>& e);
nlohmann::json to_json(const TimeSpan& span);
nlohmann::json to_json(const TransitionPoint& t);
nlohmann::json to_json(const SentenceFusion& f);
nlohmann::json to_json(const BarcodeRun& run);
nlohmann::json to_json(const VideoSummary& s, bool include_barcode);
nlohmann::json to_json(const SankeyModel& m);
nlohmann::json to_json(const Histogram& h);
nlohmann::json to_json(const ProjectionModel& m);
nlohmann::json to_json(const WordStat& w);
nlohmann::json to_json(std::span<const ProsodySample> samples, Feature feature);
nlohmann::json face_durations_to_json(const std::array<double, kEmotionCount>& d);

}  // namespace emoco::codec
