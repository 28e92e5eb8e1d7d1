#include "poq/ingest.hpp"

namespace poq {
namespace {

void put_field(std::string& out, std::string_view f) {
  if (f.find_first_of(",\"\r\n") == std::string_view::npos) {
    out += f;
    return;
  }
  out += '"';
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

}  // namespace

std::string write_csv(const EventLog& log) {
  std::string out = "id,case,activity,start,complete\n";
  for (const auto& trace : log.traces()) {
    for (const auto& inst : trace.instances()) {
      put_field(out, inst.id);
      out += ',';
      put_field(out, inst.case_id);
      out += ',';
      put_field(out, inst.label);
      out += ',';
      if (inst.start) out += format_iso8601(*inst.start);
      out += ',';
      out += format_iso8601(inst.complete);
      out += '\n';
    }
  }
  return out;
}

nlohmann::json log_to_json(const EventLog& log) {
  nlohmann::json traces = nlohmann::json::array();
  for (const auto& trace : log.traces()) {
    nlohmann::json instances = nlohmann::json::array();
    for (const auto& inst : trace.instances()) {
      instances.push_back({
          {"id", inst.id},
          {"label", inst.label},
          {"start", inst.start ? nlohmann::json(format_iso8601(*inst.start))
                               : nlohmann::json(nullptr)},
          {"complete", format_iso8601(inst.complete)},
      });
    }
    nlohmann::json reduction = nlohmann::json::array();
    for (const auto& [a, b] : trace.reduction().pairs())
      reduction.push_back({a, b});
    traces.push_back({{"case_id", trace.case_id()},
                      {"instances", std::move(instances)},
                      {"reduction", std::move(reduction)}});
  }
  return {{"log_id", log.log_id()}, {"traces", std::move(traces)}};
}

}  // namespace poq
