#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace medsgraph {

/// A UTC instant with microsecond resolution, stored as microseconds since
/// the Unix epoch. Covers years 0001..9999.
class MicroTimestamp {
 public:
  constexpr MicroTimestamp() = default;
  constexpr explicit MicroTimestamp(int64_t micros_since_epoch)
      : micros_(micros_since_epoch) {}

  constexpr int64_t micros() const { return micros_; }

  friend constexpr bool operator==(MicroTimestamp, MicroTimestamp) = default;
  friend constexpr auto operator<=>(MicroTimestamp, MicroTimestamp) = default;

 private:
  int64_t micros_ = 0;
};

/// Parses an ISO 8601 / xsd:dateTime value such as
/// "2024-01-02T03:04:05.250Z". Accepts a 'T' or ' ' date/time separator, a
/// fractional part of any length (truncated past microseconds), and either
/// 'Z', a +hh:mm/-hh:mm offset, or no designator (taken as UTC).
std::optional<MicroTimestamp> parse_timestamp(std::string_view text);

/// Canonical lexical form: "YYYY-MM-DDThh:mm:ss[.f]Z" in UTC with trailing
/// zeros trimmed from the fraction (the fraction is omitted when zero).
/// parse_timestamp is an exact inverse on this output.
std::string format_timestamp(MicroTimestamp t);

}  // namespace medsgraph
