#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace poq {

/// Milliseconds since the Unix epoch, UTC.
struct Timestamp {
  std::int64_t millis = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// Parses ISO-8601 date-times: `YYYY-MM-DD`, optionally followed by `T` or a
/// space and `HH:MM[:SS[.fraction]]`, optionally followed by `Z` or a
/// `+HH:MM`/`+HHMM`/`+HH` offset. No offset means UTC. Fractions below a
/// millisecond are truncated. Returns nullopt when the text does not parse.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// Renders `YYYY-MM-DDTHH:MM:SS[.mmm]Z`; the fraction is omitted when zero.
std::string format_iso8601(Timestamp ts);

}  // namespace poq
