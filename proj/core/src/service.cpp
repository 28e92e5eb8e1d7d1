#include "poq/service.hpp"

#include <algorithm>
#include <mutex>

#include "poq/error.hpp"
#include "poq/evaluator.hpp"
#include "poq/ingest.hpp"

namespace poq {
namespace {

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    const std::size_t j = path.find('/', i);
    const std::size_t end = j == std::string::npos ? path.size() : j;
    if (end > i) parts.push_back(path.substr(i, end - i));
    i = end;
  }
  return parts;
}

std::optional<nlohmann::json> parse_body(const std::string& body) {
  auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

ApiResponse ingest_error(const LogError& e) {
  ApiResponse r = api_error(422, "ingest_failed", e.what());
  r.body["error"]["kind"] = to_string(e.code());
  r.body["error"]["row"] =
      e.row() ? nlohmann::json(*e.row()) : nlohmann::json(nullptr);
  return r;
}

nlohmann::json tokens_json(const std::string& text) {
  nlohmann::json spans = nlohmann::json::array();
  for (const auto& s : highlight(text)) {
    spans.push_back({{"begin", s.begin},
                     {"end", s.end},
                     {"class", to_string(s.cls)},
                     {"text", text.substr(s.begin, s.end - s.begin)}});
  }
  return spans;
}

}  // namespace

ApiResponse api_error(int status, const std::string& code,
                      const std::string& message) {
  return {status, {{"error", {{"code", code}, {"message", message}}}}};
}

nlohmann::json parse_error_json(const ParseError& error) {
  return {{"code", to_string(error.code())},
          {"offset", error.offset()},
          {"line", error.line()},
          {"column", error.column()},
          {"expected", error.expected()},
          {"message", error.message()}};
}

nlohmann::json query_tree_json(const Query& query) {
  switch (query.kind()) {
    case Query::Kind::Leaf:
      return {{"kind", "leaf"}, {"text", format(query.as_leaf())}};
    case Query::Kind::Not:
      return {{"kind", "not"}, {"children", {query_tree_json(query.lhs())}}};
    case Query::Kind::And:
    case Query::Kind::Or:
      return {{"kind", query.kind() == Query::Kind::And ? "and" : "or"},
              {"children",
               {query_tree_json(query.lhs()), query_tree_json(query.rhs())}}};
  }
  return nullptr;
}

LogStore::Entry LogStore::add(std::string name, EventLog log) {
  auto shared = std::make_shared<const EventLog>(std::move(log));
  std::unique_lock lock(mutex_);
  Entry entry{std::to_string(next_id_++), std::move(name), std::move(shared)};
  entries_.emplace(entry.id, entry);
  order_.push_back(entry.id);
  return entry;
}

std::optional<LogStore::Entry> LogStore::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<LogStore::Entry> LogStore::list() const {
  std::shared_lock lock(mutex_);
  std::vector<Entry> out;
  for (const auto& id : order_) out.push_back(entries_.at(id));
  return out;
}

nlohmann::json session_log_json(const LogStore::Entry& entry) {
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [label, count] : entry.log->label_alphabet())
    labels[label] = count;
  return {{"log_id", entry.id},
          {"name", entry.name},
          {"trace_count", entry.log->size()},
          {"variant_count", entry.log->variants().size()},
          {"labels", std::move(labels)}};
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {}

ApiResponse Service::handle(const ApiRequest& request) {
  const auto parts = split_path(request.path);
  const auto param = [&](const char* key) {
    const auto it = request.params.find(key);
    return it == request.params.end() ? std::string() : it->second;
  };
  try {
    if (parts.size() == 1 && parts[0] == "logs") {
      if (request.method == "POST")
        return upload(request.body, param("format"), param("name"));
      if (request.method == "GET") return list_logs();
    } else if (parts.size() == 2 && parts[0] == "query" &&
               parts[1] == "parse") {
      if (request.method == "POST") return parse_query(request.body);
    } else if (parts.size() == 3 && parts[0] == "logs") {
      if (parts[2] == "query" && request.method == "POST")
        return query(parts[1], request.body);
      if (parts[2] == "variants" && request.method == "GET")
        return variants(parts[1]);
    } else {
      return api_error(404, "not_found", "no route for " + request.path);
    }
    return api_error(404, "not_found",
                     "no route for " + request.method + " " + request.path);
  } catch (const std::exception& e) {
    return api_error(500, "internal", e.what());
  }
}

ApiResponse Service::upload(const std::string& body, const std::string& format,
                            const std::string& name) {
  if (body.size() > config_.max_upload_bytes) {
    return api_error(413, "too_large",
                     "upload exceeds " +
                         std::to_string(config_.max_upload_bytes) + " bytes");
  }
  LogFormat fmt;
  if (format.empty() || format == "csv") {
    fmt = LogFormat::Csv;
  } else if (format == "xes") {
    fmt = LogFormat::Xes;
  } else {
    return api_error(400, "unknown_format",
                     "format must be csv or xes, got '" + format + "'");
  }
  const std::string display = name.empty() ? "upload" : name;
  try {
    EventLog log = fmt == LogFormat::Csv ? ingest_csv(body, {}, display)
                                         : ingest_xes(body, display);
    return {200, session_log_json(store_.add(display, std::move(log)))};
  } catch (const LogError& e) {
    return ingest_error(e);
  }
}

ApiResponse Service::parse_query(const std::string& body) const {
  const auto req = parse_body(body);
  if (!req || !req->contains("text") || !(*req)["text"].is_string())
    return api_error(400, "bad_request", "expected a JSON object with 'text'");
  const std::string text = (*req)["text"].get<std::string>();
  nlohmann::json out;
  try {
    const Query q = parse(text);
    out = {{"ok", true},
           {"query", format(q)},
           {"leaf_count", q.leaf_count()},
           {"depth", q.depth()},
           {"tree", query_tree_json(q)}};
  } catch (const ParseError& e) {
    out = {{"ok", false}, {"error", parse_error_json(e)}};
  }
  out["tokens"] = tokens_json(text);
  return {200, std::move(out)};
}

ApiResponse Service::query(const std::string& log_id,
                           const std::string& body) const {
  const auto entry = store_.get(log_id);
  if (!entry) return api_error(404, "unknown_log", "no log with id " + log_id);
  const auto req = parse_body(body);
  if (!req || !req->contains("text") || !(*req)["text"].is_string())
    return api_error(400, "bad_request", "expected a JSON object with 'text'");

  EvalMode mode = EvalMode::ShortCircuit;
  if (req->contains("mode")) {
    const auto& m = (*req)["mode"];
    if (m == "full") {
      mode = EvalMode::Full;
    } else if (m != "short") {
      return api_error(400, "bad_request", "mode must be 'short' or 'full'");
    }
  }
  try {
    const Query q = parse((*req)["text"].get<std::string>());
    const auto result = eval_log(*entry->log, q, mode, config_.eval_threads);
    return {200, result_to_json(*entry->log, q, mode, result)};
  } catch (const ParseError& e) {
    ApiResponse r = api_error(422, "parse_error", e.message());
    r.body["error"]["position"] = parse_error_json(e);
    return r;
  }
}

ApiResponse Service::variants(const std::string& log_id) const {
  const auto entry = store_.get(log_id);
  if (!entry) return api_error(404, "unknown_log", "no log with id " + log_id);
  const EventLog& log = *entry->log;
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t i = 0; i < log.variants().size(); ++i)
    list.push_back(variant_to_json(log, i));
  return {200,
          {{"log_id", entry->id},
           {"trace_count", log.size()},
           {"variant_count", log.variants().size()},
           {"variants", std::move(list)}}};
}

ApiResponse Service::list_logs() const {
  nlohmann::json logs = nlohmann::json::array();
  for (const auto& e : store_.list()) logs.push_back(session_log_json(e));
  return {200, {{"logs", std::move(logs)}}};
}

std::size_t Service::preload_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& item : std::filesystem::directory_iterator(dir)) {
    if (!item.is_regular_file()) continue;
    try {
      format_from_path(item.path());
      files.push_back(item.path());
    } catch (const LogError&) {
      // Not an event log.
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files)
    store_.add(f.filename().string(), load_log_file(f));
  return files.size();
}

}  // namespace poq
