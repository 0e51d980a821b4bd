#include <cstdio>

#include "emoco/errors.hpp"
#include "emoco/service.hpp"
#include "httplib.h"

namespace emoco {

struct HttpServer::Impl {
  const Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(const Service& service) : impl_(new Impl{service, {}}) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest request;
    request.method = req.method;
    request.path = req.path;
    for (const auto& [key, value] : req.params) request.query[key] = value;
    request.body = req.body;
    // Byte ranges are applied by httplib on the full body.
    HttpResponse response = impl_->service.handle(request);
    for (const auto& [name, value] : response.headers) res.set_header(name, value);
    res.set_content(std::move(response.body), response.content_type);
    if (response.status != 200) res.status = response.status;
  };
  impl_->server.Get(R"(/.*)", handler);
  impl_->server.Post(R"(/.*)", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void serve_http(const Service& service, const std::string& host, int port) {
  HttpServer server(service);
  int bound = server.bind(host, port);
  std::fprintf(stderr, "emoco: serving %zu videos on http://%s:%d\n", service.store().size(),
               host.c_str(), bound);
  server.listen();
}

}  // namespace emoco
