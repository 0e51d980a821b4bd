#include "emoco/analytics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "emoco/errors.hpp"

namespace emoco {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

const Segment* find_segment(const VideoRecord& video, int id) {
  if (id >= 0 && static_cast<std::size_t>(id) < video.segments.size() &&
      video.segments[static_cast<std::size_t>(id)].id == id) {
    return &video.segments[static_cast<std::size_t>(id)];
  }
  for (const auto& s : video.segments) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

}  // namespace

// ---------------------------------------------------------------------------
// Summary

const std::vector<BarcodeRun>& Barcode::row(Channel c) const {
  switch (c) {
    case Channel::kFace: return face;
    case Channel::kText: return text;
    case Channel::kAudio: return audio;
  }
  return face;
}

std::vector<BarcodeRun> face_barcode(const VideoRecord& video) {
  std::vector<BarcodeRun> runs;
  const auto& frames = video.frames;
  auto push = [&runs](double start, double end, std::optional<Emotion> category) {
    if (end <= start) return;
    if (!runs.empty() && runs.back().category == category && runs.back().span.end == start) {
      runs.back().span.end = end;
    } else {
      runs.push_back({{start, end}, category});
    }
  };
  if (frames.empty()) {
    push(0.0, video.duration, std::nullopt);
    return runs;
  }
  push(0.0, frames.front().timestamp, std::nullopt);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    double end = i + 1 < frames.size() ? frames[i + 1].timestamp
                                       : std::max(video.duration, frames[i].timestamp);
    push(frames[i].timestamp, end, frame_emotion(frames[i]));
  }
  return runs;
}

VideoSummary build_summary(const VideoRecord& video, std::span<const SentenceFusion> fusions,
                           const SummaryOptions& options) {
  VideoSummary summary;
  summary.video_id = video.id;
  summary.title = video.title;
  summary.category = video.category;
  summary.duration = video.duration;
  summary.barcode.face = face_barcode(video);
  summary.coherence_line = coherence_timeline(fusions);

  double total = 0.0;
  double degree_sum = 0.0;
  double degree_weight = 0.0;
  std::set<Emotion> seen;
  auto& pct = summary.metrics.percentage;
  for (const auto& f : fusions) {
    const double d = f.span.duration();
    total += d;
    summary.barcode.text.push_back(
        {f.span, f.text ? std::optional(f.text->category) : std::nullopt});
    summary.barcode.audio.push_back(
        {f.span, f.audio ? std::optional(f.audio->category) : std::nullopt});
    for (Channel c : kAllChannels) {
      if (const auto& e = f.channel(c)) {
        pct[static_cast<std::size_t>(c)][index_of(e->category)] += d;
        seen.insert(e->category);
      }
    }
    if (f.coherence_degree) {
      const double w = options.duration_weighted_coherence ? d : 1.0;
      degree_sum += w * *f.coherence_degree;
      degree_weight += w;
    }
  }
  if (total > 0.0) {
    for (auto& row : pct) {
      for (double& v : row) v /= total;
    }
  }
  if (degree_weight > 0.0) summary.metrics.coherence_score = degree_sum / degree_weight;
  summary.metrics.diversity = static_cast<int>(seen.size());
  return summary;
}

// ---------------------------------------------------------------------------
// Sankey

const std::vector<SankeyNode>& SankeyModel::column(Channel c) const {
  switch (c) {
    case Channel::kFace: return face_nodes;
    case Channel::kText: return text_nodes;
    case Channel::kAudio: return audio_nodes;
  }
  return face_nodes;
}

FrameRef representative_face(std::span<const TimeSpan> spans,
                             std::span<const FrameAnnotation> frames) {
  std::vector<std::size_t> members;
  for (const auto& span : spans) {
    auto range = frames_in(frames, span);
    for (std::size_t i = range.first; i < range.last; ++i) {
      if (frames[i].face_detected && frames[i].emotions.detected()) members.push_back(i);
    }
  }
  if (members.empty()) throw Error(ErrorCode::kNoFaces, "no detected faces in selection");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  std::array<double, kEmotionCount> centroid{};
  for (std::size_t i : members) {
    for (std::size_t k = 0; k < kEmotionCount; ++k) centroid[k] += frames[i].emotions.values()[k];
  }
  for (double& c : centroid) c /= static_cast<double>(members.size());

  std::size_t best = members.front();
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i : members) {
    double dist = 0.0;
    for (std::size_t k = 0; k < kEmotionCount; ++k) {
      double diff = frames[i].emotions.values()[k] - centroid[k];
      dist += diff * diff;
    }
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return {best, frames[best].timestamp, frames[best].box};
}

std::vector<WeightedTerm> word_importance(std::span<const std::string> texts, std::size_t top_n,
                                          const WordList& stopwords, const WordList& lexicon) {
  std::map<std::string, double> weights;
  for (const auto& text : texts) {
    for (auto& token : tokenize(text)) {
      if (stopwords.contains(token)) continue;
      weights[token] += lexicon.contains(token) ? 2.0 : 1.0;
    }
  }
  std::vector<WeightedTerm> terms;
  terms.reserve(weights.size());
  for (auto& [word, weight] : weights) terms.push_back({word, weight});
  std::stable_sort(terms.begin(), terms.end(),
                   [](const WeightedTerm& a, const WeightedTerm& b) { return a.weight > b.weight; });
  if (terms.size() > top_n) terms.resize(top_n);
  return terms;
}

Histogram feature_histogram(std::span<const TimeSpan> spans, const ProsodySeries& series,
                            int bins) {
  if (bins <= 0) throw Error(ErrorCode::kUsage, "histogram needs at least one bin");
  auto usable = [&series](const ProsodySample& s) {
    return series.feature != Feature::kPitch || s.voiced;
  };

  Histogram h;
  h.feature = series.feature;
  h.counts.assign(static_cast<std::size_t>(bins), 0.0);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : series.samples) {
    if (!usable(s)) continue;
    lo = std::min(lo, s.value);
    hi = std::max(hi, s.value);
  }
  if (lo > hi) {
    h.edges.assign(static_cast<std::size_t>(bins) + 1, 0.0);
    return h;
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + width * b;
  h.edges.back() = hi;

  for (const auto& span : spans) {
    for (const auto& s : slice(series, span)) {
      if (!usable(s)) continue;
      auto bin = static_cast<long>(std::floor((s.value - lo) / width));
      bin = std::clamp<long>(bin, 0, bins - 1);
      h.counts[static_cast<std::size_t>(bin)] += 1.0;
      ++h.sample_count;
    }
  }
  if (h.sample_count > 0) {
    for (double& c : h.counts) c /= static_cast<double>(h.sample_count);
  }
  return h;
}

SankeyModel build_sankey(const VideoRecord& video, std::span<const SentenceFusion> fusions,
                         const ProsodySet* prosody, const SankeyOptions& options) {
  SankeyModel model;
  model.audio_features = prosody != nullptr;

  std::array<std::array<std::optional<SankeyNode>, kEmotionCount>, 3> nodes;
  std::map<std::pair<Emotion, Emotion>, SankeyLink> face_text;
  std::map<std::pair<Emotion, Emotion>, SankeyLink> text_audio;
  std::map<std::pair<Emotion, Emotion>, std::size_t> link_faces;

  auto add_to_node = [&](Channel c, Emotion e, const SentenceFusion& f) {
    auto& slot = nodes[static_cast<std::size_t>(c)][index_of(e)];
    if (!slot) slot = SankeyNode{c, e, 0.0, {}, {}, {}, {}};
    slot->total_duration += f.span.duration();
    slot->sentence_ids.push_back(f.segment_id);
  };
  auto add_to_link = [](auto& links, Emotion from, Emotion to, const SentenceFusion& f) {
    auto& link = links[{from, to}];
    link.from = from;
    link.to = to;
    link.total_duration += f.span.duration();
    link.sentence_ids.push_back(f.segment_id);
  };

  for (const auto& f : fusions) {
    if (!f.complete()) {
      model.residual.push_back(f.segment_id);
      continue;
    }
    add_to_node(Channel::kFace, f.face->category, f);
    add_to_node(Channel::kText, f.text->category, f);
    add_to_node(Channel::kAudio, f.audio->category, f);
    add_to_link(face_text, f.face->category, f.text->category, f);
    add_to_link(text_audio, f.text->category, f.audio->category, f);
    link_faces[{f.face->category, f.text->category}] += f.detected_frames;
  }

  for (auto& [key, link] : face_text) model.face_text.push_back(std::move(link));
  for (auto& [key, link] : text_audio) model.text_audio.push_back(std::move(link));

  auto spans_of = [&video](const std::vector<int>& ids) {
    std::vector<TimeSpan> spans;
    for (int id : ids) {
      if (const Segment* s = find_segment(video, id)) spans.push_back(s->span);
    }
    return spans;
  };

  for (Channel c : kAllChannels) {
    auto& column = c == Channel::kFace   ? model.face_nodes
                   : c == Channel::kText ? model.text_nodes
                                         : model.audio_nodes;
    for (auto& slot : nodes[static_cast<std::size_t>(c)]) {
      if (!slot) continue;
      SankeyNode node = std::move(*slot);
      if (c == Channel::kFace) {
        for (const auto& link : model.face_text) {
          if (link.from != node.category) continue;
          TreemapCell cell{link.to, link_faces[{link.from, link.to}], std::nullopt};
          try {
            cell.representative = representative_face(spans_of(link.sentence_ids), video.frames);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kNoFaces) throw;
          }
          node.treemap.push_back(std::move(cell));
        }
      } else if (c == Channel::kText) {
        std::vector<std::string> texts;
        for (int id : node.sentence_ids) {
          if (const Segment* s = find_segment(video, id)) texts.push_back(s->text);
        }
        node.terms = word_importance(texts, options.top_terms);
      } else if (prosody != nullptr) {
        auto spans = spans_of(node.sentence_ids);
        for (Feature feat : {Feature::kPitch, Feature::kIntensity, Feature::kAmplitude}) {
          node.histograms.push_back(
              feature_histogram(spans, prosody->get(feat), options.histogram_bins));
        }
      }
      column.push_back(std::move(node));
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// Word table

WordSortKey WordSortKey::parse(std::string_view text) {
  if (text == "frequency") return {Kind::kFrequency, Emotion::kNeutral};
  if (text == "duration") return {Kind::kDuration, Emotion::kNeutral};
  constexpr std::string_view kPrefix = "category-duration";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    auto rest = text.substr(kPrefix.size());
    std::string_view name;
    if (!rest.empty() && rest.front() == ':') {
      name = rest.substr(1);
    } else if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') {
      name = rest.substr(1, rest.size() - 2);
    }
    if (auto e = parse_emotion(name)) return {Kind::kCategoryDuration, *e};
  }
  throw Error(ErrorCode::kUsage, "unknown word sort key '" + std::string(text) + "'");
}

std::vector<WordStat> word_table(std::span<const WordFusion> words, const WordSortKey& key,
                                 std::string_view filter) {
  const std::string needle = lowercase(filter);
  std::map<std::string, WordStat> by_word;
  for (const auto& w : words) {
    if (!needle.empty() && w.normalized.find(needle) == std::string::npos) continue;
    auto& stat = by_word[w.normalized];
    stat.word = w.normalized;
    ++stat.frequency;
    stat.total_duration += w.span.duration();
    for (std::size_t k = 0; k < kEmotionCount; ++k) stat.face_durations[k] += w.face_durations[k];
    stat.undetected_duration += w.undetected_duration;
    stat.occurrences.push_back({w.segment_id, w.span});
  }

  std::vector<WordStat> table;
  table.reserve(by_word.size());
  for (auto& [word, stat] : by_word) table.push_back(std::move(stat));

  auto value = [&key](const WordStat& s) -> double {
    switch (key.kind) {
      case WordSortKey::Kind::kFrequency: return static_cast<double>(s.frequency);
      case WordSortKey::Kind::kDuration: return s.total_duration;
      case WordSortKey::Kind::kCategoryDuration: return s.face_durations[index_of(key.category)];
    }
    return 0.0;
  };
  std::stable_sort(table.begin(), table.end(),
                   [&](const WordStat& a, const WordStat& b) { return value(a) > value(b); });
  return table;
}

}  // namespace emoco
