#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poq/log_model.hpp"
#include "poq/parser.hpp"

namespace poq {

struct ServiceConfig {
  std::size_t max_upload_bytes = 256u << 20;
  /// Value of Access-Control-Allow-Origin.
  std::string cors_origin = "*";
  unsigned eval_threads = 1;
};

/// Transport-neutral request; the HTTP layer fills it in.
struct ApiRequest {
  std::string method;  // GET, POST, OPTIONS
  std::string path;
  std::map<std::string, std::string> params;  // query string and form fields
  std::string body;  // raw body, or the uploaded file part of a multipart form
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
  std::string dump() const { return body.dump(2) + "\n"; }
};

/// {error: {code, message, ...}} with the given status.
ApiResponse api_error(int status, const std::string& code,
                      const std::string& message);

/// {code, offset, line, column, expected, message}.
nlohmann::json parse_error_json(const ParseError& error);

/// Nested {kind: "and"|"or"|"not", children} / {kind: "leaf", text}.
nlohmann::json query_tree_json(const Query& query);

/// Logs held for the lifetime of the process. Uploads take an exclusive
/// lock only to publish a fully built log, so readers never see a partial
/// one.
class LogStore {
 public:
  struct Entry {
    std::string id;
    std::string name;
    std::shared_ptr<const EventLog> log;
  };

  Entry add(std::string name, EventLog log);
  std::optional<Entry> get(const std::string& id) const;
  std::vector<Entry> list() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
  std::size_t next_id_ = 1;
};

/// SessionLog JSON: {log_id, name, trace_count, variant_count, labels}.
nlohmann::json session_log_json(const LogStore::Entry& entry);

/// Routes:
///   POST /logs?format=csv|xes[&name=...]      upload
///   GET  /logs                                 list
///   POST /query/parse      {text}              parse + highlight, always 200
///   POST /logs/{id}/query  {text, mode}        evaluate
///   GET  /logs/{id}/variants                   variant list
class Service {
 public:
  explicit Service(ServiceConfig config = {});

  ApiResponse handle(const ApiRequest& request);

  ApiResponse upload(const std::string& body, const std::string& format,
                     const std::string& name);
  ApiResponse parse_query(const std::string& body) const;
  ApiResponse query(const std::string& log_id, const std::string& body) const;
  ApiResponse variants(const std::string& log_id) const;
  ApiResponse list_logs() const;

  /// Loads every .csv, .xes and .xes.gz file of `dir`; returns how many.
  /// Throws LogError on the first file that fails.
  std::size_t preload_directory(const std::filesystem::path& dir);

  LogStore& store() noexcept { return store_; }
  const ServiceConfig& config() const noexcept { return config_; }

 private:
  ServiceConfig config_;
  LogStore store_;
};

class ServiceError : public std::runtime_error {
 public:
  enum class Code { PortInUse, InvalidPort };
  ServiceError(Code code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// cpp-httplib front end for a Service. Adds CORS headers to every
/// response and answers preflight requests.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port. Throws ServiceError.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void run();
  /// Safe to call from another thread or a signal-watching thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace poq
