#include <sys/socket.h>

#include <httplib.h>

#include "poq/service.hpp"

namespace poq {

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) {}

  void add_cors(httplib::Response& res) const {
    res.set_header("Access-Control-Allow-Origin", service.config().cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  }

  void dispatch(const httplib::Request& req, httplib::Response& res) {
    ApiRequest api;
    api.method = req.method;
    api.path = req.path;
    for (const auto& [key, value] : req.params) api.params[key] = value;
    if (req.is_multipart_form_data()) {
      // The log travels in a "file" part; other parts act as parameters.
      for (const auto& [key, part] : req.files) {
        if (key == "file") {
          api.body = part.content;
          if (!api.params.count("name") && !part.filename.empty())
            api.params["name"] = part.filename;
        } else {
          api.params[key] = part.content;
        }
      }
    } else {
      api.body = req.body;
    }
    const ApiResponse out = service.handle(api);
    res.status = out.status;
    res.set_content(out.dump(), "application/json");
    add_cors(res);
  }
};

HttpServer::HttpServer(Service& service)
    : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  // httplib's default adds SO_REUSEPORT, which would let a second server
  // share a busy port instead of failing to bind.
  srv.set_socket_options([](int sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  // Let oversized uploads reach the handler's own check (and its JSON 413),
  // but refuse anything far beyond the cap at the transport level.
  srv.set_payload_max_length(service.config().max_upload_bytes + (1u << 20));
  const auto handler = [this](const httplib::Request& req,
                              httplib::Response& res) {
    impl_->dispatch(req, res);
  };
  srv.Get(".*", handler);
  srv.Post(".*", handler);
  srv.Options(".*", [this](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    impl_->add_cors(res);
  });
  srv.set_error_handler([this](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      const ApiResponse err =
          api_error(res.status, res.status == 413 ? "too_large" : "http_error",
                    "request rejected with status " + std::to_string(res.status));
      res.set_content(err.dump(), "application/json");
    }
    impl_->add_cors(res);
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port < 0 || port > 65535)
    throw ServiceError(ServiceError::Code::InvalidPort,
                       "port out of range: " + std::to_string(port));
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0)
      throw ServiceError(ServiceError::Code::PortInUse, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port))
    throw ServiceError(ServiceError::Code::PortInUse,
                       "cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace poq
