#pragma once

#include <compare>
#include <numbers>
#include <string>
#include <string_view>

namespace hexpst {

/// Perfect-transfer time of the unit-coupled 2-chain.
inline constexpr double kT0 = std::numbers::pi / 2.0;
/// Perfect-transfer time of the unit-coupled 3-chain.
inline constexpr double kT1 = std::numbers::pi / std::numbers::sqrt2;

/// A time of the form n0*t0 + n1*t1 kept as integer counts, so schedule
/// arithmetic and the routing-time identity are exact.
struct ChainTime {
  int n0 = 0;
  int n1 = 0;

  constexpr double seconds() const noexcept { return n0 * kT0 + n1 * kT1; }

  constexpr ChainTime operator+(ChainTime o) const noexcept { return {n0 + o.n0, n1 + o.n1}; }
  constexpr ChainTime operator-(ChainTime o) const noexcept { return {n0 - o.n0, n1 - o.n1}; }
  constexpr bool operator==(const ChainTime&) const = default;

  std::string to_string() const;

  /// Accepts "2t1", "t0", "1t0+3t1", "0". Throws std::invalid_argument.
  static ChainTime parse(std::string_view text);
};

}  // namespace hexpst
