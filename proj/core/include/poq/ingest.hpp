#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "poq/log_model.hpp"

namespace poq {

/// Column names for CSV ingestion. An empty `start` or `id` means the column
/// is not expected; a missing optional column is tolerated either way.
struct CsvMapping {
  std::string case_id = "case";
  std::string label = "activity";
  std::string start = "start";
  std::string complete = "complete";
  std::string id = "id";
};

/// UTF-8 CSV with a header row (RFC 4180 quoting). One trace per case id,
/// traces in order of first appearance. Instance ids come from the id
/// column when present, otherwise the 1-based data row number.
/// Throws LogError: MissingColumn, UnparsableTimestamp, StartAfterComplete,
/// MalformedCsv, EmptyInput, DuplicateInstanceId.
EventLog ingest_csv(std::string_view bytes, const CsvMapping& mapping = {},
                    std::string log_id = "log");

struct XesStats {
  std::size_t events = 0;
  std::size_t unpaired_starts_dropped = 0;
  std::size_t ignored_transitions = 0;
};

/// Plain or gzip-compressed XES. Per case, each `start` event is paired
/// FIFO with the next `complete` of the same label; unpaired completes get
/// no start; unpaired starts are dropped and counted in `stats`. Events with
/// other lifecycle transitions are ignored; a missing transition means
/// `complete`.
/// Throws LogError: MalformedXml, MissingTimestamp, UnparsableTimestamp,
/// EmptyInput.
EventLog ingest_xes(std::string_view bytes, std::string log_id = "log",
                    XesStats* stats = nullptr);

enum class LogFormat { Csv, Xes };

/// By extension: .csv, .xes, .xes.gz. Throws LogError(UnknownFormat).
LogFormat format_from_path(const std::filesystem::path& path);

/// Reads and ingests a file; the log id is the file name.
/// Throws LogError (Io when unreadable).
EventLog load_log_file(const std::filesystem::path& path,
                       const CsvMapping& mapping = {});

/// Inflates gzip data; returns the input unchanged when not gzip.
std::string maybe_gunzip(std::string_view bytes);

/// CSV with columns id, case, activity, start, complete; ingest_csv with the
/// default mapping reads it back to an equal log.
std::string write_csv(const EventLog& log);

/// {log_id, traces: [{case_id, instances: [{id, label, start, complete}],
/// reduction: [[from, to], ...]}]}; relation entries are instance positions.
nlohmann::json log_to_json(const EventLog& log);

}  // namespace poq
