#include <httplib.h>

#include "topicforge/service.hpp"

namespace topicforge {

struct HttpServer::Impl {
  Service& service;
  ServerOptions options;
  httplib::Server server;
  int port = -1;

  Impl(Service& s, ServerOptions o) : service(s), options(std::move(o)) {
    server.set_read_timeout(options.timeout_seconds, 0);
    server.set_write_timeout(options.timeout_seconds, 0);
    if (!options.cors_origin.empty()) {
      server.set_default_headers({
          {"Access-Control-Allow-Origin", options.cors_origin},
          {"Access-Control-Allow-Methods", "GET, POST, PATCH, OPTIONS"},
          {"Access-Control-Allow-Headers", "Content-Type"},
      });
    }
    auto forward = [this](const char* method) {
      return [this, method](const httplib::Request& req, httplib::Response& res) {
        ApiRequest api{method, req.path, {}, req.body};
        for (const auto& [k, v] : req.params) api.query.emplace(k, v);
        ApiResponse out = service.handle(api);
        res.status = out.status;
        if (out.status != 204) res.set_content(out.body, out.content_type);
      };
    };
    server.Get(".*", forward("GET"));
    server.Post(".*", forward("POST"));
    server.Patch(".*", forward("PATCH"));
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  }
};

HttpServer::HttpServer(Service& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  auto& i = *impl_;
  if (i.options.port == 0) {
    i.port = i.server.bind_to_any_port(i.options.bind);
  } else if (i.server.bind_to_port(i.options.bind, i.options.port)) {
    i.port = i.options.port;
  }
  if (i.port < 0) {
    throw Error(ErrorCode::Io, "cannot bind " + i.options.bind + ":" +
                                   std::to_string(i.options.port));
  }
  return i.port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace topicforge
