#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emoco/analytics.hpp"
#include "emoco/fusion.hpp"
#include "emoco/projection.hpp"
#include "emoco/prosody.hpp"
#include "emoco/store.hpp"

namespace emoco {

struct HttpRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
  std::optional<std::string> range;  // raw "Range" header value
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
};

struct VideoSortKey {
  enum class Kind { kCoherence, kDiversity, kPercentage, kTitle };
  Kind kind = Kind::kTitle;
  Channel channel = Channel::kFace;
  Emotion category = Emotion::kNeutral;

  /// "coherence", "diversity", "title", "percentage:<channel>:<emotion>".
  static VideoSortKey parse(std::string_view text);
};

struct ListQuery {
  VideoSortKey sort;
  /// Defaults to ascending for title and descending for metrics.
  std::optional<bool> descending;
  std::string keyword;
};

enum class LinkStage { kFaceText, kTextAudio };

struct LinkSelector {
  LinkStage stage = LinkStage::kFaceText;
  Emotion from{};
  Emotion to{};
};

struct NodeSelector {
  Channel channel = Channel::kFace;
  Emotion category{};
};

/// Axis-aligned rectangle in projection coordinates, bounds inclusive.
struct BrushRect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
};

struct SelectionQuery {
  std::string video_id;
  std::optional<LinkSelector> link;
  std::optional<NodeSelector> node;
  std::optional<int> segment_id;
  std::optional<BrushRect> brush;
  /// Projection the brush refers to.
  ProjectionParams projection;
};

struct ServiceOptions {
  FusionOptions fusion;
  SummaryOptions summary;
  SankeyOptions sankey;
  ProjectionParams projection;
  ProsodyParams prosody;
};

/// Read-only query layer over a corpus store. Every derived model is
/// computed on first use and cached under the video content hash and the
/// parameters that produced it.
class Service {
 public:
  explicit Service(std::shared_ptr<const CorpusStore> store, ServiceOptions options = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Routes a request and renders either the model body or an error
  /// envelope {code, message, path}. Never throws.
  HttpResponse handle(const HttpRequest& request) const;

  std::vector<VideoSummary> list_videos(const ListQuery& query) const;
  std::vector<int> resolve_selection(const SelectionQuery& query) const;

  std::shared_ptr<const std::vector<SentenceFusion>> fusions(const std::string& video_id) const;
  std::shared_ptr<const VideoSummary> summary(const std::string& video_id) const;
  std::shared_ptr<const SankeyModel> sankey(const std::string& video_id) const;
  std::shared_ptr<const ProjectionModel> projection(const std::string& video_id,
                                                    const ProjectionParams& params) const;
  /// Throws Error{kNoAudio} when the video has no audio track.
  std::shared_ptr<const ProsodySet> prosody(const std::string& video_id) const;

  const ServiceOptions& options() const { return options_; }
  const CorpusStore& store() const { return *store_; }

  /// Number of derived-model computations performed so far.
  std::size_t computations() const;

 private:
  struct Caches;

  const StoredVideo& require(const std::string& video_id) const;
  std::string cached_body(const std::string& key, const std::function<std::string()>& render) const;

  HttpResponse route(const HttpRequest& request) const;
  std::string render_video(const std::string& id) const;
  std::string render_sentence(const std::string& id, int segment_id) const;
  std::string render_words(const std::string& id, const std::string& sort,
                           const std::string& filter) const;
  HttpResponse render_media(const std::string& id, const std::optional<std::string>& range) const;

  std::shared_ptr<const CorpusStore> store_;
  ServiceOptions options_;
  std::unique_ptr<Caches> caches_;
};

/// Parses a selection body as POSTed to /videos/{id}/selection.
SelectionQuery parse_selection(std::string_view video_id, std::string_view body);

/// Parses projection query parameters (mode, perplexity, seed, iterations)
/// over `defaults`. Throws Error{kUsage} on bad values.
ProjectionParams parse_projection_params(const std::map<std::string, std::string>& query,
                                         const ProjectionParams& defaults);

/// HTTP front end for a Service.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the listening socket; port 0 picks a free port. Returns the port.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called. Requires a prior bind().
  void listen();
  /// Blocks until listen() has started accepting connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Binds and blocks serving `service` until the process is stopped.
void serve_http(const Service& service, const std::string& host, int port);

}  // namespace emoco
