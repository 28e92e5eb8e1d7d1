#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace poq {

enum class LogErrc {
  EmptyTrace,
  MixedCaseIds,
  DuplicateInstanceId,
  CyclicOrder,
  MissingColumn,
  UnparsableTimestamp,
  StartAfterComplete,
  MalformedCsv,
  MalformedXml,
  MissingTimestamp,
  EmptyInput,
  UnknownFormat,
  Io,
};

const char* to_string(LogErrc code);

/// Failure while building or ingesting event data. `row()` is the 1-based
/// data row (CSV) or event ordinal (XES) when the failure is tied to one.
class LogError : public std::runtime_error {
 public:
  LogError(LogErrc code, const std::string& message,
           std::optional<std::size_t> row = std::nullopt)
      : std::runtime_error(message), code_(code), row_(row) {}

  LogErrc code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  LogErrc code_;
  std::optional<std::size_t> row_;
};

}  // namespace poq
