#include "eventcrawl/timestamp.h"

#include <charconv>
#include <cstdio>

#include <fmt/format.h>

namespace eventcrawl {
namespace {

using namespace std::chrono;

// Reads exactly `width` decimal digits starting at `pos`.
std::optional<int> read_digits(std::string_view text, std::size_t pos, std::size_t width) {
  if (pos + width > text.size()) return std::nullopt;
  int value = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

struct Civil {
  int year;
  unsigned month, day, hour, minute, second;
};

Civil to_civil(Timestamp t) {
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
          static_cast<unsigned>(ymd.day()), static_cast<unsigned>(hms.hours().count()),
          static_cast<unsigned>(hms.minutes().count()),
          static_cast<unsigned>(hms.seconds().count())};
}

}  // namespace

std::optional<Timestamp> make_timestamp(int year, unsigned month, unsigned day,
                                        unsigned hour, unsigned minute, unsigned second) {
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                           std::chrono::day{day}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) return std::nullopt;
  return Timestamp{sys_days{ymd}} + hours{hour} + minutes{minute} + seconds{second};
}

std::optional<ParsedDate> parse_iso8601(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\n' ||
                           text.back() == '\r')) {
    text.remove_suffix(1);
  }
  const auto year = read_digits(text, 0, 4);
  if (!year || text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto month = read_digits(text, 5, 2);
  const auto day = read_digits(text, 8, 2);
  if (!month || !day) return std::nullopt;
  if (text.size() == 10) {
    const auto t = make_timestamp(*year, *month, *day);
    if (!t) return std::nullopt;
    return ParsedDate{*t, true};
  }

  if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') return std::nullopt;
  std::size_t pos = 11;
  const auto hour = read_digits(text, pos, 2);
  if (!hour || pos + 2 >= text.size() || text[pos + 2] != ':') return std::nullopt;
  const auto minute = read_digits(text, pos + 3, 2);
  if (!minute) return std::nullopt;
  pos += 5;
  int second = 0;
  if (pos < text.size() && text[pos] == ':') {
    const auto s = read_digits(text, pos + 1, 2);
    if (!s) return std::nullopt;
    second = *s;
    pos += 3;
    if (pos < text.size() && (text[pos] == '.' || text[pos] == ',')) {
      ++pos;
      const std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (pos == start) return std::nullopt;
    }
  }

  auto t = make_timestamp(*year, *month, *day, *hour, *minute, second);
  if (!t) return std::nullopt;
  if (pos == text.size()) return ParsedDate{*t, false};
  if ((text[pos] == 'Z' || text[pos] == 'z') && pos + 1 == text.size()) {
    return ParsedDate{*t, false};
  }
  if (text[pos] != '+' && text[pos] != '-') return std::nullopt;
  const int sign = text[pos] == '+' ? 1 : -1;
  const auto off_h = read_digits(text, pos + 1, 2);
  if (!off_h) return std::nullopt;
  std::size_t off_pos = pos + 3;
  int off_m = 0;
  if (off_pos < text.size()) {
    if (text[off_pos] == ':') ++off_pos;
    const auto m = read_digits(text, off_pos, 2);
    if (!m) return std::nullopt;
    off_m = *m;
    off_pos += 2;
  }
  if (off_pos != text.size() || *off_h > 23 || off_m > 59) return std::nullopt;
  // Local time = UTC + offset, so UTC = local - offset.
  *t -= sign * (hours{*off_h} + minutes{off_m});
  return ParsedDate{*t, false};
}

std::optional<Timestamp> parse_archival_timestamp(std::string_view text) {
  if (text.size() != 14) return std::nullopt;
  const auto y = read_digits(text, 0, 4);
  const auto mo = read_digits(text, 4, 2);
  const auto d = read_digits(text, 6, 2);
  const auto h = read_digits(text, 8, 2);
  const auto mi = read_digits(text, 10, 2);
  const auto s = read_digits(text, 12, 2);
  if (!y || !mo || !d || !h || !mi || !s) return std::nullopt;
  return make_timestamp(*y, *mo, *d, *h, *mi, *s);
}

std::string format_archival_timestamp(Timestamp t) {
  const Civil c = to_civil(t);
  return fmt::format("{:04}{:02}{:02}{:02}{:02}{:02}", c.year, c.month, c.day, c.hour, c.minute,
                     c.second);
}

std::string format_iso8601(Timestamp t) {
  const Civil c = to_civil(t);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", c.year, c.month, c.day, c.hour,
                     c.minute, c.second);
}

std::optional<Seconds> parse_duration(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{}) return std::nullopt;
  std::string_view unit(ptr, static_cast<std::size_t>(last - ptr));
  while (!unit.empty() && unit.front() == ' ') unit.remove_prefix(1);

  std::int64_t scale = 0;
  if (unit.empty() || unit == "s" || unit == "sec") {
    scale = 1;
  } else if (unit == "min") {
    scale = 60;
  } else if (unit == "h") {
    scale = 3600;
  } else if (unit == "d") {
    scale = 86400;
  } else if (unit == "w") {
    scale = 7 * 86400;
  } else if (unit == "m" || unit == "mo") {
    scale = 30 * 86400;
  } else if (unit == "y") {
    scale = 365 * 86400;
  } else {
    return std::nullopt;
  }
  return Seconds{value * scale};
}

}  // namespace eventcrawl
