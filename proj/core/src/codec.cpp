#include "codec.hpp"

#include "emoco/errors.hpp"

namespace emoco::codec {

using nlohmann::json;

json distribution_to_json(const EmotionDistribution& dist) {
  json j = json::object();
  for (Emotion e : kAllEmotions) {
    if (dist.has(e)) j[std::string(to_string(e))] = dist[e];
  }
  return j;
}

EmotionDistribution distribution_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "emotion map must be an object");
  EmotionDistribution dist;
  for (const auto& [name, value] : j.items()) {
    auto e = parse_emotion(name);
    if (!e) throw Error(ErrorCode::kParse, "unknown emotion '" + name + "'");
    if (!value.is_number()) throw Error(ErrorCode::kParse, "confidence for '" + name + "' is not a number");
    dist.set(*e, value.get<double>());
  }
  return dist;
}

json to_json(const std::optional<ChannelEmotion>& e) {
  if (!e) return nullptr;
  return {{"category", to_string(e->category)}, {"confidence", e->confidence}};
}

json to_json(const std::optional<Emotion>& e) {
  if (!e) return nullptr;
  return std::string(to_string(*e));
}

json to_json(const TimeSpan& span) { return {{"start", span.start}, {"end", span.end}}; }

json to_json(const TransitionPoint& t) {
  json j = {{"time", t.time}, {"before", to_string(t.before)}, {"after", to_string(t.after)}};
  j["wordIndex"] = t.word_index ? json(*t.word_index) : json(nullptr);
  return j;
}

json to_json(const SentenceFusion& f) {
  json transitions = json::array();
  for (const auto& t : f.transitions) transitions.push_back(to_json(t));
  return {{"segmentId", f.segment_id},
          {"start", f.span.start},
          {"end", f.span.end},
          {"face", to_json(f.face)},
          {"text", to_json(f.text)},
          {"audio", to_json(f.audio)},
          {"faceDistributionMean", distribution_to_json(f.face_distribution_mean)},
          {"coherenceDegree", f.coherence_degree ? json(*f.coherence_degree) : json(nullptr)},
          {"transitions", std::move(transitions)},
          {"framesInSpan", f.frames_in_span},
          {"detectedFrames", f.detected_frames}};
}

json to_json(const BarcodeRun& run) {
  return {{"start", run.span.start}, {"end", run.span.end}, {"category", to_json(run.category)}};
}

json to_json(const VideoSummary& s, bool include_barcode) {
  json coherence = json::array();
  for (const auto& p : s.coherence_line) {
    coherence.push_back({{"segmentId", p.segment_id},
                         {"degree", p.degree ? json(*p.degree) : json(nullptr)}});
  }
  json percentage = json::object();
  for (Channel c : kAllChannels) {
    json row = json::object();
    for (Emotion e : kAllEmotions) row[std::string(to_string(e))] = s.metrics.percent(c, e);
    percentage[std::string(to_string(c))] = std::move(row);
  }
  json j = {{"id", s.video_id},
            {"title", s.title},
            {"category", s.category},
            {"duration", s.duration},
            {"metrics",
             {{"coherenceScore", s.metrics.coherence_score ? json(*s.metrics.coherence_score)
                                                           : json(nullptr)},
              {"diversity", s.metrics.diversity},
              {"percentage", std::move(percentage)}}},
            {"coherenceLine", std::move(coherence)}};
  if (include_barcode) {
    json barcode = json::object();
    for (Channel c : kAllChannels) {
      json row = json::array();
      for (const auto& run : s.barcode.row(c)) row.push_back(to_json(run));
      barcode[std::string(to_string(c))] = std::move(row);
    }
    j["barcode"] = std::move(barcode);
  }
  return j;
}

json to_json(const Histogram& h) {
  return {{"feature", to_string(h.feature)},
          {"edges", h.edges},
          {"counts", h.counts},
          {"sampleCount", h.sample_count},
          {"empty", h.empty()}};
}

namespace {

json node_to_json(const SankeyNode& node) {
  json j = {{"channel", to_string(node.channel)},
            {"category", to_string(node.category)},
            {"totalDuration", node.total_duration},
            {"sentenceIds", node.sentence_ids}};
  if (node.channel == Channel::kFace) {
    json cells = json::array();
    for (const auto& cell : node.treemap) {
      json rep = nullptr;
      if (cell.representative) {
        const auto& r = *cell.representative;
        rep = {{"frameIndex", r.frame_index}, {"timestamp", r.timestamp}};
        rep["box"] = r.box ? json{r.box->left, r.box->top, r.box->width, r.box->height}
                           : json(nullptr);
      }
      cells.push_back({{"link", {{"from", to_string(node.category)},
                                 {"to", to_string(cell.text_category)}}},
                       {"faceCount", cell.face_count},
                       {"representative", std::move(rep)}});
    }
    j["treemap"] = std::move(cells);
  } else if (node.channel == Channel::kText) {
    json terms = json::array();
    for (const auto& t : node.terms) terms.push_back({{"word", t.word}, {"weight", t.weight}});
    j["terms"] = std::move(terms);
  } else {
    json hist = json::array();
    for (const auto& h : node.histograms) hist.push_back(to_json(h));
    j["histograms"] = std::move(hist);
  }
  return j;
}

json link_to_json(const SankeyLink& link) {
  return {{"from", to_string(link.from)},
          {"to", to_string(link.to)},
          {"totalDuration", link.total_duration},
          {"sentenceIds", link.sentence_ids}};
}

json sector_to_json(const GlyphSector& s) {
  return {{"category", to_json(s.category)}, {"radius", s.radius}};
}

}  // namespace

json to_json(const SankeyModel& m) {
  json nodes = json::object();
  for (Channel c : kAllChannels) {
    json column = json::array();
    for (const auto& n : m.column(c)) column.push_back(node_to_json(n));
    nodes[std::string(to_string(c))] = std::move(column);
  }
  json face_text = json::array();
  for (const auto& l : m.face_text) face_text.push_back(link_to_json(l));
  json text_audio = json::array();
  for (const auto& l : m.text_audio) text_audio.push_back(link_to_json(l));
  return {{"nodes", std::move(nodes)},
          {"links", {{"face-text", std::move(face_text)}, {"text-audio", std::move(text_audio)}}},
          {"residual", m.residual},
          {"audioFeatures", m.audio_features}};
}

json to_json(const ProjectionModel& m) {
  json points = json::array();
  for (const auto& p : m.points) {
    points.push_back({{"segmentId", p.segment_id},
                      {"x", p.position.x},
                      {"y", p.position.y},
                      {"glyph",
                       {{"face", sector_to_json(p.glyph.face)},
                        {"text", sector_to_json(p.glyph.text)},
                        {"audio", sector_to_json(p.glyph.audio)},
                        {"timeIndex", p.glyph.time_index}}}});
  }
  const auto& t = m.params.tsne;
  return {{"params",
           {{"mode", to_string(m.params.mode)},
            {"perplexity", t.perplexity},
            {"perplexityUsed", m.perplexity_used},
            {"iterations", t.iterations},
            {"seed", t.seed},
            {"learningRate", t.learning_rate}}},
          {"klDivergence", m.kl_divergence},
          {"points", std::move(points)}};
}

json face_durations_to_json(const std::array<double, kEmotionCount>& d) {
  json j = json::object();
  for (Emotion e : kAllEmotions) j[std::string(to_string(e))] = d[index_of(e)];
  return j;
}

json to_json(const WordStat& w) {
  json occurrences = json::array();
  for (const auto& o : w.occurrences) {
    occurrences.push_back({{"segmentId", o.segment_id}, {"start", o.span.start}, {"end", o.span.end}});
  }
  return {{"word", w.word},
          {"frequency", w.frequency},
          {"totalDuration", w.total_duration},
          {"faceDurations", face_durations_to_json(w.face_durations)},
          {"undetectedDuration", w.undetected_duration},
          {"occurrences", std::move(occurrences)}};
}

json to_json(std::span<const ProsodySample> samples, Feature feature) {
  json out = json::array();
  for (const auto& s : samples) {
    switch (feature) {
      case Feature::kPitch:
        out.push_back({{"t", s.time},
                       {"hz", s.voiced ? json(s.value) : json(nullptr)},
                       {"voiced", s.voiced}});
        break;
      case Feature::kIntensity:
        out.push_back({{"t", s.time}, {"db", s.value}, {"rms", s.linear}});
        break;
      case Feature::kAmplitude:
        out.push_back({{"t", s.time}, {"peak", s.value}});
        break;
    }
  }
  return out;
}

}  // namespace emoco::codec
