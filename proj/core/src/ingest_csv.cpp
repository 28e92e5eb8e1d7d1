#include <algorithm>
#include <optional>
#include <unordered_map>

#include "poq/error.hpp"
#include "poq/ingest.hpp"

namespace poq {
namespace {

using Record = std::vector<std::string>;

// RFC 4180 reader. Returns false at end of input.
class CsvReader {
 public:
  explicit CsvReader(std::string_view text) : s_(text) {
    if (s_.substr(0, 3) == "\xEF\xBB\xBF") s_.remove_prefix(3);
  }

  bool next(Record& out) {
    out.clear();
    if (pos_ >= s_.size()) return false;
    ++line_;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    while (pos_ < s_.size()) {
      const char c = s_[pos_++];
      if (quoted) {
        if (c == '"') {
          if (pos_ < s_.size() && s_[pos_] == '"') {
            field += '"';
            ++pos_;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field += c;
        }
        continue;
      }
      if (c == '"' && field.empty() && !was_quoted) {
        quoted = was_quoted = true;
      } else if (c == ',') {
        out.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (c == '\n' || c == '\r') {
        if (c == '\r' && pos_ < s_.size() && s_[pos_] == '\n') ++pos_;
        break;
      } else {
        field += c;
      }
    }
    if (quoted)
      throw LogError(LogErrc::MalformedCsv,
                     "unterminated quoted field at line " +
                         std::to_string(line_));
    out.push_back(std::move(field));
    return true;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

bool blank(const Record& r) {
  return std::all_of(r.begin(), r.end(),
                     [](const std::string& f) { return trim(f).empty(); });
}

}  // namespace

EventLog ingest_csv(std::string_view bytes, const CsvMapping& mapping,
                    std::string log_id) {
  CsvReader reader(bytes);
  Record header;
  if (!reader.next(header) || blank(header))
    throw LogError(LogErrc::EmptyInput, "CSV input is empty");
  for (auto& h : header) h = trim(h);

  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    if (name.empty()) return std::nullopt;
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  auto required = [&](const std::string& name) {
    auto c = column(name);
    if (!c)
      throw LogError(LogErrc::MissingColumn,
                     "missing required column '" + name + "'");
    return *c;
  };
  const std::size_t case_col = required(mapping.case_id);
  const std::size_t label_col = required(mapping.label);
  const std::size_t complete_col = required(mapping.complete);
  const auto start_col = column(mapping.start);
  const auto id_col = column(mapping.id);

  std::vector<std::string> case_order;
  std::unordered_map<std::string, std::vector<ActivityInstance>> by_case;

  Record rec;
  std::size_t row = 0;
  while (reader.next(rec)) {
    if (blank(rec)) continue;
    ++row;
    auto field = [&](std::size_t col) -> std::string {
      return col < rec.size() ? trim(rec[col]) : std::string{};
    };
    auto timestamp = [&](std::size_t col,
                         const char* what) -> std::optional<Timestamp> {
      const std::string text = field(col);
      if (text.empty()) return std::nullopt;
      auto ts = parse_iso8601(text);
      if (!ts) {
        throw LogError(LogErrc::UnparsableTimestamp,
                       "row " + std::to_string(row) + ": cannot parse " +
                           what + " timestamp '" + text + "'",
                       row);
      }
      return ts;
    };

    ActivityInstance inst;
    inst.case_id = field(case_col);
    inst.label = field(label_col);
    inst.id = id_col ? field(*id_col) : std::string{};
    if (inst.id.empty()) inst.id = std::to_string(row);
    if (inst.case_id.empty() || inst.label.empty()) {
      throw LogError(LogErrc::MalformedCsv,
                     "row " + std::to_string(row) +
                         ": empty case id or activity label",
                     row);
    }
    auto complete = timestamp(complete_col, "complete");
    if (!complete) {
      throw LogError(LogErrc::UnparsableTimestamp,
                     "row " + std::to_string(row) +
                         ": complete timestamp is empty",
                     row);
    }
    inst.complete = *complete;
    if (start_col) inst.start = timestamp(*start_col, "start");
    if (inst.start && *inst.start > inst.complete) {
      throw LogError(LogErrc::StartAfterComplete,
                     "row " + std::to_string(row) +
                         ": start timestamp is after complete timestamp",
                     row);
    }

    auto [it, inserted] = by_case.try_emplace(inst.case_id);
    if (inserted) case_order.push_back(inst.case_id);
    it->second.push_back(std::move(inst));
  }
  if (case_order.empty())
    throw LogError(LogErrc::EmptyInput, "CSV input has no data rows");

  std::vector<Trace> traces;
  traces.reserve(case_order.size());
  for (const auto& c : case_order)
    traces.push_back(Trace::build(std::move(by_case[c])));
  return EventLog(std::move(log_id), std::move(traces));
}

}  // namespace poq
