#include "medsgraph/timestamp.hpp"

#include <array>
#include <cstdio>

namespace medsgraph {
namespace {

constexpr int64_t kMicrosPerSecond = 1'000'000;
constexpr int64_t kSecondsPerDay = 86'400;

constexpr bool is_leap(int64_t y) {
  return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

constexpr unsigned days_in_month(int64_t y, unsigned m) {
  constexpr std::array<unsigned, 12> len = {31, 28, 31, 30, 31, 30,
                                            31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return len[m - 1];
}

// Proleptic Gregorian day count relative to 1970-01-01.
constexpr int64_t days_from_civil(int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

struct Civil {
  int64_t year;
  unsigned month, day;
};

constexpr Civil civil_from_days(int64_t z) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return {y + (m <= 2), m, d};
}

bool read_digits(std::string_view& s, size_t n, int64_t& out) {
  if (s.size() < n) return false;
  int64_t v = 0;
  for (size_t i = 0; i < n; ++i) {
    const char c = s[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  s.remove_prefix(n);
  out = v;
  return true;
}

bool consume(std::string_view& s, char c) {
  if (s.empty() || s.front() != c) return false;
  s.remove_prefix(1);
  return true;
}

}  // namespace

std::optional<MicroTimestamp> parse_timestamp(std::string_view text) {
  std::string_view s = text;
  int64_t year, month, day, hour, minute, second;
  if (!read_digits(s, 4, year) || !consume(s, '-') ||
      !read_digits(s, 2, month) || !consume(s, '-') || !read_digits(s, 2, day))
    return std::nullopt;
  if (s.empty() || (s.front() != 'T' && s.front() != ' ')) return std::nullopt;
  s.remove_prefix(1);
  if (!read_digits(s, 2, hour) || !consume(s, ':') ||
      !read_digits(s, 2, minute) || !consume(s, ':') ||
      !read_digits(s, 2, second))
    return std::nullopt;

  if (month < 1 || month > 12 || day < 1 ||
      day > days_in_month(year, static_cast<unsigned>(month)) || hour > 23 ||
      minute > 59 || second > 59)
    return std::nullopt;

  int64_t micros_frac = 0;
  if (!s.empty() && s.front() == '.') {
    s.remove_prefix(1);
    size_t digits = 0;
    int64_t scale = 100'000;
    while (!s.empty() && s.front() >= '0' && s.front() <= '9') {
      if (digits < 6) micros_frac += (s.front() - '0') * scale;
      scale /= 10;
      s.remove_prefix(1);
      ++digits;
    }
    if (digits == 0) return std::nullopt;
  }

  int64_t offset_seconds = 0;
  if (!s.empty()) {
    if (s.front() == 'Z') {
      s.remove_prefix(1);
    } else if (s.front() == '+' || s.front() == '-') {
      const bool negative = s.front() == '-';
      s.remove_prefix(1);
      int64_t oh, om;
      if (!read_digits(s, 2, oh) || !consume(s, ':') || !read_digits(s, 2, om))
        return std::nullopt;
      if (oh > 23 || om > 59) return std::nullopt;
      offset_seconds = (oh * 3600 + om * 60) * (negative ? -1 : 1);
    } else {
      return std::nullopt;
    }
  }
  if (!s.empty()) return std::nullopt;

  const int64_t days =
      days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  const int64_t seconds =
      days * kSecondsPerDay + hour * 3600 + minute * 60 + second - offset_seconds;
  return MicroTimestamp(seconds * kMicrosPerSecond + micros_frac);
}

std::string format_timestamp(MicroTimestamp t) {
  int64_t micros = t.micros();
  int64_t seconds = micros / kMicrosPerSecond;
  int64_t frac = micros % kMicrosPerSecond;
  if (frac < 0) {
    frac += kMicrosPerSecond;
    seconds -= 1;
  }
  int64_t days = seconds / kSecondsPerDay;
  int64_t rem = seconds % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    days -= 1;
  }
  const Civil c = civil_from_days(days);
  char buf[40];
  int n = std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02u:%02u:%02u",
                        static_cast<long long>(c.year), c.month, c.day,
                        static_cast<unsigned>(rem / 3600),
                        static_cast<unsigned>(rem / 60 % 60),
                        static_cast<unsigned>(rem % 60));
  std::string out(buf, static_cast<size_t>(n));
  if (frac != 0) {
    char fbuf[8];
    std::snprintf(fbuf, sizeof(fbuf), "%06lld", static_cast<long long>(frac));
    std::string_view digits(fbuf, 6);
    while (digits.ends_with('0')) digits.remove_suffix(1);
    out += '.';
    out += digits;
  }
  out += 'Z';
  return out;
}

}  // namespace medsgraph
