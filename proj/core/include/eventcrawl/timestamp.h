#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace eventcrawl {

/// UTC point in time with one-second resolution.
using Timestamp = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

/// Builds a timestamp from calendar fields; nullopt if any field is out of range.
std::optional<Timestamp> make_timestamp(int year, unsigned month, unsigned day,
                                        unsigned hour = 0, unsigned minute = 0,
                                        unsigned second = 0);

struct ParsedDate {
  Timestamp time;
  bool date_only = false;
};

/// Parses ISO-8601 `YYYY-MM-DD` or `YYYY-MM-DD[T ]hh:mm[:ss[.frac]][Z|+hh:mm|-hh:mm]`.
/// Date-time values without a zone designator are taken as UTC. Fractional
/// seconds are truncated.
std::optional<ParsedDate> parse_iso8601(std::string_view text);

/// Parses a 14-digit archival timestamp (YYYYMMDDhhmmss).
std::optional<Timestamp> parse_archival_timestamp(std::string_view text);

std::string format_archival_timestamp(Timestamp t);

/// `YYYY-MM-DDThh:mm:ssZ`
std::string format_iso8601(Timestamp t);

/// Parses durations such as "90", "90s", "30min", "12h", "3d", "2w", "6m"
/// (months of 30 days) and "1y" (365 days). A bare number is seconds.
/// Negative values are accepted so callers can report them as invariant
/// violations instead of parse failures.
std::optional<Seconds> parse_duration(std::string_view text);

}  // namespace eventcrawl
