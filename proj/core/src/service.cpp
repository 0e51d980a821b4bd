#include "emoco/service.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "codec.hpp"
#include "emoco/errors.hpp"
#include "emoco/wav.hpp"
#include "json.hpp"

namespace emoco {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos < path.size()) {
    std::size_t next = path.find('/', pos);
    if (next == std::string_view::npos) next = path.size();
    if (next > pos) parts.emplace_back(path.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view name) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kUsage, "invalid value for " + std::string(name) + ": '" +
                                       std::string(text) + "'");
  }
  return value;
}

double parse_double(const std::string& text, std::string_view name) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kUsage, "invalid value for " + std::string(name) + ": '" + text + "'");
  }
}

Emotion require_emotion(const std::string& name) {
  auto e = parse_emotion(name);
  if (!e) throw Error(ErrorCode::kUsage, "unknown emotion '" + name + "'");
  return *e;
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kUsage:
    case ErrorCode::kParse: return 400;
    case ErrorCode::kNoAudio:
    case ErrorCode::kNoFaces:
    case ErrorCode::kNoDetection:
    case ErrorCode::kDegenerateInput:
    case ErrorCode::kValidation: return 422;
    case ErrorCode::kIo: return 500;
  }
  return 500;
}

HttpResponse error_response(int status, std::string_view code, std::string_view message,
                            std::string_view path) {
  HttpResponse r;
  r.status = status;
  r.body = json{{"code", code}, {"message", message}, {"path", path}}.dump();
  return r;
}

std::string mime_for(const fs::path& p) {
  const auto ext = p.extension().string();
  if (ext == ".mp4" || ext == ".m4v") return "video/mp4";
  if (ext == ".webm") return "video/webm";
  if (ext == ".wav") return "audio/wav";
  if (ext == ".mp3") return "audio/mpeg";
  return "application/octet-stream";
}

std::string tsne_digest(const ProjectionParams& p) {
  std::ostringstream out;
  out.precision(17);
  out << to_string(p.mode) << ",perp=" << p.tsne.perplexity << ",it=" << p.tsne.iterations
      << ",seed=" << p.tsne.seed << ",lr=" << p.tsne.learning_rate << ",ex="
      << p.tsne.exaggeration << ",exit=" << p.tsne.exaggeration_iterations;
  return out.str();
}

std::string fusion_digest(const FusionOptions& o) {
  return "k=" + std::to_string(o.min_hold_frames) +
         (o.face_vote == FaceVote::kFrameCount ? ",vote=count" : ",vote=duration");
}

}  // namespace

// ---------------------------------------------------------------------------

VideoSortKey VideoSortKey::parse(std::string_view text) {
  if (text == "coherence") return {Kind::kCoherence};
  if (text == "diversity") return {Kind::kDiversity};
  if (text == "title" || text.empty()) return {Kind::kTitle};
  constexpr std::string_view kPrefix = "percentage:";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    auto rest = text.substr(kPrefix.size());
    auto colon = rest.find(':');
    if (colon != std::string_view::npos) {
      auto channel = parse_channel(rest.substr(0, colon));
      auto emotion = parse_emotion(rest.substr(colon + 1));
      if (channel && emotion) return {Kind::kPercentage, *channel, *emotion};
    }
  }
  throw Error(ErrorCode::kUsage, "unknown sort key '" + std::string(text) + "'");
}

ProjectionParams parse_projection_params(const std::map<std::string, std::string>& query,
                                         const ProjectionParams& defaults) {
  ProjectionParams p = defaults;
  if (auto it = query.find("mode"); it != query.end() && !it->second.empty()) {
    auto mode = parse_vector_mode(it->second);
    if (!mode) throw Error(ErrorCode::kUsage, "unknown projection mode '" + it->second + "'");
    p.mode = *mode;
  }
  if (auto it = query.find("perplexity"); it != query.end() && !it->second.empty()) {
    p.tsne.perplexity = parse_double(it->second, "perplexity");
    if (!(p.tsne.perplexity > 0.0)) throw Error(ErrorCode::kUsage, "perplexity must be positive");
  }
  if (auto it = query.find("seed"); it != query.end() && !it->second.empty()) {
    p.tsne.seed = parse_number<std::uint64_t>(it->second, "seed");
  }
  if (auto it = query.find("iterations"); it != query.end() && !it->second.empty()) {
    p.tsne.iterations = parse_number<int>(it->second, "iterations");
    if (p.tsne.iterations < 1 || p.tsne.iterations > 100000) {
      throw Error(ErrorCode::kUsage, "iterations out of range");
    }
  }
  return p;
}

SelectionQuery parse_selection(std::string_view video_id, std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("selection body: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kUsage, "selection body must be an object");

  SelectionQuery q;
  q.video_id = std::string(video_id);
  try {
    int kinds = 0;
    if (auto it = j.find("link"); it != j.end()) {
      ++kinds;
      const auto stage = it->at("stage").get<std::string>();
      LinkSelector link;
      if (stage == "face-text") {
        link.stage = LinkStage::kFaceText;
      } else if (stage == "text-audio") {
        link.stage = LinkStage::kTextAudio;
      } else {
        throw Error(ErrorCode::kUsage, "unknown link stage '" + stage + "'");
      }
      link.from = require_emotion(it->at("from").get<std::string>());
      link.to = require_emotion(it->at("to").get<std::string>());
      q.link = link;
    }
    if (auto it = j.find("node"); it != j.end()) {
      ++kinds;
      const auto channel = it->at("channel").get<std::string>();
      auto c = parse_channel(channel);
      if (!c) throw Error(ErrorCode::kUsage, "unknown channel '" + channel + "'");
      q.node = NodeSelector{*c, require_emotion(it->at("category").get<std::string>())};
    }
    if (auto it = j.find("segmentId"); it != j.end()) {
      ++kinds;
      q.segment_id = it->get<int>();
    }
    if (auto it = j.find("brush"); it != j.end()) {
      ++kinds;
      q.brush = BrushRect{it->at("x0").get<double>(), it->at("y0").get<double>(),
                          it->at("x1").get<double>(), it->at("y1").get<double>()};
    }
    if (auto it = j.find("projection"); it != j.end()) {
      std::map<std::string, std::string> params;
      for (const auto& [key, value] : it->items()) {
        params[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
      q.projection = parse_projection_params(params, q.projection);
    }
    if (kinds != 1) {
      throw Error(ErrorCode::kUsage, "selection needs exactly one of link, node, segmentId, brush");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kUsage, std::string("selection body: ") + e.what());
  }
  return q;
}

// ---------------------------------------------------------------------------

struct Service::Caches {
  SingleFlightCache<std::shared_ptr<const std::vector<SentenceFusion>>> fusions;
  SingleFlightCache<std::shared_ptr<const VideoSummary>> summaries;
  SingleFlightCache<std::shared_ptr<const SankeyModel>> sankeys;
  SingleFlightCache<std::shared_ptr<const ProjectionModel>> projections;
  SingleFlightCache<std::shared_ptr<const ProsodySet>> prosody;
  SingleFlightCache<std::string> bodies;
};

Service::Service(std::shared_ptr<const CorpusStore> store, ServiceOptions options)
    : store_(std::move(store)), options_(std::move(options)), caches_(std::make_unique<Caches>()) {}

Service::~Service() = default;

std::size_t Service::computations() const {
  return caches_->fusions.computations() + caches_->summaries.computations() +
         caches_->sankeys.computations() + caches_->projections.computations() +
         caches_->prosody.computations() + caches_->bodies.computations();
}

const StoredVideo& Service::require(const std::string& video_id) const {
  const StoredVideo* v = store_->find(video_id);
  if (v == nullptr) throw Error(ErrorCode::kNotFound, "unknown video '" + video_id + "'");
  return *v;
}

std::shared_ptr<const std::vector<SentenceFusion>> Service::fusions(
    const std::string& video_id) const {
  const auto& v = require(video_id);
  return caches_->fusions.get(v.hash + "/fusion/" + fusion_digest(options_.fusion), [&] {
    return std::make_shared<const std::vector<SentenceFusion>>(
        fuse_video(v.record, options_.fusion));
  });
}

std::shared_ptr<const VideoSummary> Service::summary(const std::string& video_id) const {
  const auto& v = require(video_id);
  return caches_->summaries.get(
      v.hash + "/summary/" + fusion_digest(options_.fusion) +
          (options_.summary.duration_weighted_coherence ? ",weighted" : ""),
      [&] {
        auto f = fusions(video_id);
        return std::make_shared<const VideoSummary>(build_summary(v.record, *f, options_.summary));
      });
}

std::shared_ptr<const ProsodySet> Service::prosody(const std::string& video_id) const {
  const auto& v = require(video_id);
  if (!v.record.audio) throw Error(ErrorCode::kNoAudio, "video '" + video_id + "' has no audio");
  return caches_->prosody.get(v.hash + "/prosody", [&] {
    return std::make_shared<const ProsodySet>(extract_prosody(*v.record.audio, options_.prosody));
  });
}

std::shared_ptr<const SankeyModel> Service::sankey(const std::string& video_id) const {
  const auto& v = require(video_id);
  return caches_->sankeys.get(v.hash + "/sankey/" + fusion_digest(options_.fusion), [&] {
    auto f = fusions(video_id);
    std::shared_ptr<const ProsodySet> p;
    if (v.record.audio) p = prosody(video_id);
    return std::make_shared<const SankeyModel>(
        build_sankey(v.record, *f, p.get(), options_.sankey));
  });
}

std::shared_ptr<const ProjectionModel> Service::projection(const std::string& video_id,
                                                           const ProjectionParams& params) const {
  const auto& v = require(video_id);
  return caches_->projections.get(
      v.hash + "/projection/" + fusion_digest(options_.fusion) + "/" + tsne_digest(params), [&] {
        auto f = fusions(video_id);
        return std::make_shared<const ProjectionModel>(build_projection(*f, params));
      });
}

std::vector<VideoSummary> Service::list_videos(const ListQuery& query) const {
  std::vector<VideoSummary> out;
  std::string needle = query.keyword;
  std::transform(needle.begin(), needle.end(), needle.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  auto matches = [&needle](std::string text) {
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return text.find(needle) != std::string::npos;
  };
  for (const auto* v : store_->videos()) {
    if (!needle.empty() && !matches(v->record.title) && !matches(v->record.category)) continue;
    out.push_back(*summary(v->record.id));
  }

  const auto& key = query.sort;
  const bool descending = query.descending.value_or(key.kind != VideoSortKey::Kind::kTitle);
  // Missing coherence scores always sort last.
  auto metric = [&key](const VideoSummary& s) -> std::optional<double> {
    switch (key.kind) {
      case VideoSortKey::Kind::kCoherence: return s.metrics.coherence_score;
      case VideoSortKey::Kind::kDiversity: return s.metrics.diversity;
      case VideoSortKey::Kind::kPercentage: return s.metrics.percent(key.channel, key.category);
      case VideoSortKey::Kind::kTitle: return std::nullopt;
    }
    return std::nullopt;
  };
  std::sort(out.begin(), out.end(), [&](const VideoSummary& a, const VideoSummary& b) {
    if (key.kind == VideoSortKey::Kind::kTitle) {
      if (a.title != b.title) return descending ? a.title > b.title : a.title < b.title;
      return a.video_id < b.video_id;
    }
    auto ma = metric(a);
    auto mb = metric(b);
    if (ma.has_value() != mb.has_value()) return ma.has_value();
    if (ma && *ma != *mb) return descending ? *ma > *mb : *ma < *mb;
    return a.video_id < b.video_id;
  });
  return out;
}

std::vector<int> Service::resolve_selection(const SelectionQuery& q) const {
  const auto& v = require(q.video_id);
  const int kinds = q.link.has_value() + q.node.has_value() + q.segment_id.has_value() +
                    q.brush.has_value();
  if (kinds != 1) {
    throw Error(ErrorCode::kUsage, "selection needs exactly one of link, node, segmentId, brush");
  }

  std::vector<int> ids;
  if (q.link) {
    auto model = sankey(q.video_id);
    const auto& links = q.link->stage == LinkStage::kFaceText ? model->face_text : model->text_audio;
    auto it = std::find_if(links.begin(), links.end(), [&](const SankeyLink& l) {
      return l.from == q.link->from && l.to == q.link->to;
    });
    if (it == links.end()) throw Error(ErrorCode::kNotFound, "no such link");
    ids = it->sentence_ids;
  } else if (q.node) {
    auto model = sankey(q.video_id);
    const auto& column = model->column(q.node->channel);
    auto it = std::find_if(column.begin(), column.end(),
                           [&](const SankeyNode& n) { return n.category == q.node->category; });
    if (it == column.end()) throw Error(ErrorCode::kNotFound, "no such node");
    ids = it->sentence_ids;
  } else if (q.segment_id) {
    bool exists = std::any_of(v.record.segments.begin(), v.record.segments.end(),
                              [&](const Segment& s) { return s.id == *q.segment_id; });
    if (!exists) throw Error(ErrorCode::kNotFound, "no sentence " + std::to_string(*q.segment_id));
    ids = {*q.segment_id};
  } else {
    auto model = projection(q.video_id, q.projection);
    const auto& b = *q.brush;
    const double x0 = std::min(b.x0, b.x1), x1 = std::max(b.x0, b.x1);
    const double y0 = std::min(b.y0, b.y1), y1 = std::max(b.y0, b.y1);
    for (const auto& p : model->points) {
      if (p.position.x >= x0 && p.position.x <= x1 && p.position.y >= y0 && p.position.y <= y1) {
        ids.push_back(p.segment_id);
      }
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

// ---------------------------------------------------------------------------

std::string Service::cached_body(const std::string& key,
                                 const std::function<std::string()>& render) const {
  return caches_->bodies.get(key, [&]() -> std::string {
    const auto& dir = store_->directory();
    if (!dir) return render();
    const fs::path file = *dir / "cache" / (sha256_hex(key) + ".json");
    if (std::ifstream in{file, std::ios::binary}) {
      std::ostringstream text;
      text << in.rdbuf();
      return text.str();
    }
    std::string body = render();
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
    // Write to a temporary name first so readers never see a partial file.
    const fs::path tmp = file.string() + ".tmp";
    if (!ec) {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << body;
      out.close();
      if (out) fs::rename(tmp, file, ec);
    }
    return body;
  });
}

std::string Service::render_video(const std::string& id) const {
  const auto& v = require(id);
  return cached_body(v.hash + "/body/video/" + fusion_digest(options_.fusion), [&] {
    json j = codec::to_json(*summary(id), true);
    json meta = {{"id", v.record.id},
                 {"title", v.record.title},
                 {"category", v.record.category},
                 {"duration", v.record.duration},
                 {"frameRate", v.record.frame_rate},
                 {"segmentCount", v.record.segments.size()},
                 {"frameCount", v.record.frames.size()},
                 {"hasAudio", v.record.audio.has_value()},
                 {"media", v.media_path || v.record.audio ? json("/media/" + v.record.id)
                                                          : json(nullptr)}};
    j["meta"] = std::move(meta);
    return j.dump();
  });
}

std::string Service::render_sentence(const std::string& id, int segment_id) const {
  const auto& v = require(id);
  return cached_body(
      v.hash + "/body/sentence/" + std::to_string(segment_id) + "/" + fusion_digest(options_.fusion),
      [&] {
        auto all = fusions(id);
        auto it = std::find_if(all->begin(), all->end(),
                               [&](const SentenceFusion& f) { return f.segment_id == segment_id; });
        if (it == all->end()) {
          throw Error(ErrorCode::kNotFound, "no sentence " + std::to_string(segment_id));
        }
        const auto index = static_cast<std::size_t>(it - all->begin());
        const Segment& seg = v.record.segments[index];

        auto context_entry = [&](std::size_t i) {
          const auto& f = (*all)[i];
          return json{{"segmentId", f.segment_id},
                      {"start", f.span.start},
                      {"end", f.span.end},
                      {"text", v.record.segments[i].text},
                      {"face", codec::to_json(f.face)},
                      {"textEmotion", codec::to_json(f.text)},
                      {"audioEmotion", codec::to_json(f.audio)},
                      {"coherenceDegree",
                       f.coherence_degree ? json(*f.coherence_degree) : json(nullptr)}};
        };
        json previous = json::array();
        json following = json::array();
        for (std::size_t i = index >= 2 ? index - 2 : 0; i < index; ++i) {
          previous.push_back(context_entry(i));
        }
        for (std::size_t i = index + 1; i < std::min(all->size(), index + 3); ++i) {
          following.push_back(context_entry(i));
        }

        json words = json::array();
        for (const auto& w : seg.words) {
          words.push_back({{"w", w.text}, {"start", w.span.start}, {"end", w.span.end}});
        }

        json prosody_json = {{"available", false}};
        if (v.record.audio) {
          auto p = prosody(id);
          prosody_json = {{"available", true}};
          for (Feature f : {Feature::kPitch, Feature::kIntensity, Feature::kAmplitude}) {
            auto samples = slice(p->get(f), seg.span);
            prosody_json[std::string(to_string(f))] = codec::to_json(samples, f);
          }
        }

        json face_series = json::array();
        auto range = frames_in(v.record.frames, seg.span);
        for (std::size_t i = range.first; i < range.last; ++i) {
          const auto& frame = v.record.frames[i];
          auto d = frame.face_detected ? try_dominant(frame.emotions) : std::nullopt;
          face_series.push_back(
              {{"t", frame.timestamp},
               {"category", d ? json(to_string(d->category)) : json(nullptr)},
               {"confidence", d ? json(d->confidence) : json(nullptr)}});
        }

        json transitions = json::array();
        for (const auto& t : it->transitions) transitions.push_back(codec::to_json(t));

        json body = {{"videoId", id},
                     {"sentence", codec::to_json(*it)},
                     {"text", seg.text},
                     {"words", std::move(words)},
                     {"previous", std::move(previous)},
                     {"following", std::move(following)},
                     {"prosody", std::move(prosody_json)},
                     {"transitions", std::move(transitions)},
                     {"confidence",
                      {{"face", std::move(face_series)},
                       {"text", codec::to_json(it->text)},
                       {"audio", codec::to_json(it->audio)}}}};
        return body.dump();
      });
}

std::string Service::render_words(const std::string& id, const std::string& sort,
                                  const std::string& filter) const {
  const auto& v = require(id);
  const auto key = WordSortKey::parse(sort);
  return cached_body(v.hash + "/body/words/" + sort + "/" + filter, [&] {
    auto word_fusions = fuse_words(v.record);
    json words = json::array();
    for (const auto& w : word_table(word_fusions, key, filter)) words.push_back(codec::to_json(w));
    return json{{"videoId", id}, {"sort", sort}, {"q", filter}, {"words", std::move(words)}}.dump();
  });
}

HttpResponse Service::render_media(const std::string& id,
                                   const std::optional<std::string>& range) const {
  const auto& v = require(id);
  HttpResponse r;
  if (v.media_path) {
    std::ifstream in(*v.media_path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read media for '" + id + "'");
    std::ostringstream bytes;
    bytes << in.rdbuf();
    r.body = bytes.str();
    r.content_type = mime_for(*v.media_path);
  } else if (v.record.audio) {
    auto wav = encode_wav(*v.record.audio);
    r.body.assign(wav.begin(), wav.end());
    r.content_type = "audio/wav";
  } else {
    throw Error(ErrorCode::kNotFound, "video '" + id + "' has no media");
  }
  r.headers.emplace_back("Accept-Ranges", "bytes");
  if (!range) return r;

  // Single byte range: bytes=a-b, bytes=a- or bytes=-n.
  const std::size_t total = r.body.size();
  std::string_view ranges = *range;
  constexpr std::string_view kUnit = "bytes=";
  auto unsatisfiable = [&] {
    HttpResponse e = error_response(416, "range_not_satisfiable", "invalid range " + *range,
                                    "/media/" + id);
    e.headers.emplace_back("Content-Range", "bytes */" + std::to_string(total));
    return e;
  };
  if (ranges.substr(0, kUnit.size()) != kUnit) return unsatisfiable();
  ranges.remove_prefix(kUnit.size());
  ranges = ranges.substr(0, ranges.find(','));
  const auto dash = ranges.find('-');
  if (dash == std::string_view::npos) return unsatisfiable();
  auto first_text = ranges.substr(0, dash);
  auto last_text = ranges.substr(dash + 1);
  std::size_t first = 0;
  std::size_t last = total == 0 ? 0 : total - 1;
  try {
    if (first_text.empty()) {
      auto suffix = parse_number<std::size_t>(last_text, "range");
      if (suffix == 0 || total == 0) return unsatisfiable();
      first = total - std::min(suffix, total);
    } else {
      first = parse_number<std::size_t>(first_text, "range");
      if (!last_text.empty()) last = std::min(last, parse_number<std::size_t>(last_text, "range"));
    }
  } catch (const Error&) {
    return unsatisfiable();
  }
  if (first >= total || first > last) return unsatisfiable();
  r.status = 206;
  r.body = r.body.substr(first, last - first + 1);
  r.headers.emplace_back("Content-Range", "bytes " + std::to_string(first) + "-" +
                                              std::to_string(last) + "/" + std::to_string(total));
  return r;
}

HttpResponse Service::route(const HttpRequest& request) const {
  const auto parts = split_path(request.path);
  auto query = [&request](const std::string& name, std::string fallback = {}) {
    auto it = request.query.find(name);
    return it == request.query.end() ? fallback : it->second;
  };
  auto ok = [](std::string body) {
    HttpResponse r;
    r.body = std::move(body);
    return r;
  };
  auto method_not_allowed = [&] {
    return error_response(405, "method_not_allowed", request.method + " not allowed",
                          request.path);
  };

  if (parts.size() == 2 && parts[0] == "media") {
    if (request.method != "GET") return method_not_allowed();
    return render_media(parts[1], request.range);
  }
  if (parts.empty() || parts[0] != "videos") {
    throw Error(ErrorCode::kNotFound, "no route for " + request.path);
  }

  const bool is_get = request.method == "GET";
  if (parts.size() == 1) {
    if (!is_get) return method_not_allowed();
    ListQuery q;
    q.sort = VideoSortKey::parse(query("sort"));
    if (auto order = query("order"); !order.empty()) {
      if (order != "asc" && order != "desc") {
        throw Error(ErrorCode::kUsage, "order must be asc or desc");
      }
      q.descending = order == "desc";
    }
    q.keyword = query("q");
    json videos = json::array();
    for (const auto& s : list_videos(q)) videos.push_back(codec::to_json(s, true));
    return ok(json{{"videos", std::move(videos)}}.dump());
  }

  const std::string& id = parts[1];
  if (parts.size() == 2) {
    if (!is_get) return method_not_allowed();
    return ok(render_video(id));
  }
  const std::string& leaf = parts[2];
  if (parts.size() == 3 && leaf == "sankey") {
    if (!is_get) return method_not_allowed();
    const auto& v = require(id);
    return ok(cached_body(v.hash + "/body/sankey/" + fusion_digest(options_.fusion),
                          [&] { return codec::to_json(*sankey(id)).dump(); }));
  }
  if (parts.size() == 3 && leaf == "projection") {
    if (!is_get) return method_not_allowed();
    const auto& v = require(id);
    auto params = parse_projection_params(request.query, options_.projection);
    return ok(cached_body(
        v.hash + "/body/projection/" + fusion_digest(options_.fusion) + "/" + tsne_digest(params),
        [&] { return codec::to_json(*projection(id, params)).dump(); }));
  }
  if (parts.size() == 4 && leaf == "sentences") {
    if (!is_get) return method_not_allowed();
    return ok(render_sentence(id, parse_number<int>(parts[3], "sentence id")));
  }
  if (parts.size() == 3 && leaf == "words") {
    if (!is_get) return method_not_allowed();
    return ok(render_words(id, query("sort", "frequency"), query("q")));
  }
  if (parts.size() == 3 && leaf == "selection") {
    if (request.method != "POST") return method_not_allowed();
    require(id);
    auto ids = resolve_selection(parse_selection(id, request.body));
    return ok(json{{"videoId", id}, {"sentenceIds", ids}}.dump());
  }
  throw Error(ErrorCode::kNotFound, "no route for " + request.path);
}

HttpResponse Service::handle(const HttpRequest& request) const {
  try {
    return route(request);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), to_string(e.code()), e.what(), request.path);
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what(), request.path);
  }
}

}  // namespace emoco
