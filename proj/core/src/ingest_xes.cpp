#include <expat.h>
#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "poq/error.hpp"
#include "poq/ingest.hpp"

namespace poq {

std::string maybe_gunzip(std::string_view bytes) {
  if (bytes.size() < 2 || static_cast<unsigned char>(bytes[0]) != 0x1f ||
      static_cast<unsigned char>(bytes[1]) != 0x8b) {
    return std::string(bytes);
  }
  z_stream zs{};
  if (inflateInit2(&zs, 15 + 32) != Z_OK)
    throw LogError(LogErrc::MalformedXml, "cannot initialise gzip decoder");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  std::string out;
  char buf[1 << 16];
  int ret = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof buf;
    ret = inflate(&zs, Z_NO_FLUSH);
    if (ret != Z_OK && ret != Z_STREAM_END) {
      inflateEnd(&zs);
      throw LogError(LogErrc::MalformedXml, "corrupt gzip stream");
    }
    out.append(buf, sizeof buf - zs.avail_out);
  } while (ret != Z_STREAM_END && zs.avail_in > 0);
  inflateEnd(&zs);
  if (ret != Z_STREAM_END)
    throw LogError(LogErrc::MalformedXml, "truncated gzip stream");
  return out;
}

namespace {

struct RawEvent {
  std::string label;
  std::string timestamp_text;
  std::string transition;
  bool has_label = false;
  bool has_timestamp = false;
  std::size_t ordinal = 0;
};

struct RawTrace {
  std::string case_id;
  std::vector<RawEvent> events;
};

class XesHandler {
 public:
  static void on_start(void* self, const XML_Char* name,
                       const XML_Char** attrs) {
    static_cast<XesHandler*>(self)->start(name, attrs);
  }
  static void on_end(void* self, const XML_Char* name) {
    static_cast<XesHandler*>(self)->end(name);
  }

  std::vector<RawTrace> traces;
  std::size_t event_count = 0;
  bool saw_log = false;

 private:
  void start(std::string_view name, const XML_Char** attrs) {
    const std::string_view parent =
        stack_.empty() ? std::string_view{} : stack_.back();
    stack_.emplace_back(name);
    if (name == "log") saw_log = true;
    if (in_global_ > 0 || name == "global") {
      ++in_global_;
      return;
    }
    if (name == "trace" && parent == "log") {
      traces.emplace_back();
      return;
    }
    if (name == "event" && parent == "trace" && !traces.empty()) {
      traces.back().events.emplace_back();
      traces.back().events.back().ordinal = ++event_count;
      return;
    }
    if (parent != "event" && parent != "trace") return;
    if (traces.empty()) return;

    std::string_view key, value;
    for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
      if (std::strcmp(attrs[i], "key") == 0) key = attrs[i + 1];
      if (std::strcmp(attrs[i], "value") == 0) value = attrs[i + 1];
    }
    if (parent == "trace") {
      if (key == "concept:name") traces.back().case_id = value;
      return;
    }
    auto& events = traces.back().events;
    if (events.empty()) return;
    RawEvent& ev = events.back();
    if (key == "concept:name") {
      ev.label = value;
      ev.has_label = true;
    } else if (key == "time:timestamp") {
      ev.timestamp_text = value;
      ev.has_timestamp = true;
    } else if (key == "lifecycle:transition") {
      ev.transition = value;
    }
  }

  void end(std::string_view) {
    if (in_global_ > 0) --in_global_;
    stack_.pop_back();
  }

  std::vector<std::string> stack_;
  int in_global_ = 0;
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

EventLog ingest_xes(std::string_view bytes, std::string log_id,
                    XesStats* stats) {
  const std::string xml = maybe_gunzip(bytes);
  if (xml.find_first_not_of(" \t\r\n") == std::string::npos)
    throw LogError(LogErrc::EmptyInput, "XES input is empty");

  XesHandler handler;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)>
      parser(XML_ParserCreate(nullptr), &XML_ParserFree);
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), &XesHandler::on_start,
                        &XesHandler::on_end);
  if (XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()), 1) ==
      XML_STATUS_ERROR) {
    std::ostringstream msg;
    msg << "malformed XML at line " << XML_GetCurrentLineNumber(parser.get())
        << ": " << XML_ErrorString(XML_GetErrorCode(parser.get()));
    throw LogError(LogErrc::MalformedXml, msg.str());
  }
  if (!handler.saw_log)
    throw LogError(LogErrc::MalformedXml, "no <log> element");

  XesStats local;
  std::size_t next_id = 0;
  std::vector<Trace> traces;
  for (std::size_t t = 0; t < handler.traces.size(); ++t) {
    RawTrace& raw = handler.traces[t];
    if (raw.case_id.empty()) raw.case_id = "trace_" + std::to_string(t + 1);

    std::map<std::string, std::deque<Timestamp>> pending;  // FIFO per label
    std::vector<ActivityInstance> instances;
    for (const auto& ev : raw.events) {
      ++local.events;
      if (!ev.has_label) {
        throw LogError(LogErrc::MalformedXml,
                       "event " + std::to_string(ev.ordinal) +
                           " has no concept:name",
                       ev.ordinal);
      }
      if (!ev.has_timestamp) {
        throw LogError(LogErrc::MissingTimestamp,
                       "event " + std::to_string(ev.ordinal) +
                           " has no time:timestamp",
                       ev.ordinal);
      }
      const auto ts = parse_iso8601(ev.timestamp_text);
      if (!ts) {
        throw LogError(LogErrc::UnparsableTimestamp,
                       "event " + std::to_string(ev.ordinal) +
                           ": cannot parse timestamp '" + ev.timestamp_text +
                           "'",
                       ev.ordinal);
      }
      const std::string transition = lower(ev.transition);
      if (transition == "start") {
        pending[ev.label].push_back(*ts);
        continue;
      }
      if (!transition.empty() && transition != "complete") {
        ++local.ignored_transitions;
        continue;
      }
      ActivityInstance inst;
      inst.id = std::to_string(++next_id);
      inst.case_id = raw.case_id;
      inst.label = ev.label;
      inst.complete = *ts;
      auto& queue = pending[ev.label];
      if (!queue.empty()) {
        inst.start = queue.front();
        queue.pop_front();
        if (*inst.start > inst.complete) {
          throw LogError(LogErrc::StartAfterComplete,
                         "event " + std::to_string(ev.ordinal) +
                             ": completes before its paired start",
                         ev.ordinal);
        }
      }
      instances.push_back(std::move(inst));
    }
    for (const auto& [label, queue] : pending)
      local.unpaired_starts_dropped += queue.size();
    if (!instances.empty()) traces.push_back(Trace::build(std::move(instances)));
  }
  if (stats) *stats = local;
  return EventLog(std::move(log_id), std::move(traces));
}

LogFormat format_from_path(const std::filesystem::path& path) {
  const std::string name = lower(path.filename().string());
  auto ends_with = [&](std::string_view suffix) {
    return name.size() >= suffix.size() &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) ==
               0;
  };
  if (ends_with(".csv")) return LogFormat::Csv;
  if (ends_with(".xes") || ends_with(".xes.gz")) return LogFormat::Xes;
  throw LogError(LogErrc::UnknownFormat,
                 "unknown log format for '" + path.string() +
                     "' (expected .csv, .xes or .xes.gz)");
}

EventLog load_log_file(const std::filesystem::path& path,
                       const CsvMapping& mapping) {
  const LogFormat format = format_from_path(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LogError(LogErrc::Io, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  const std::string id = path.filename().string();
  return format == LogFormat::Csv ? ingest_csv(bytes, mapping, id)
                                  : ingest_xes(bytes, id);
}

}  // namespace poq
