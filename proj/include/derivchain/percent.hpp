#pragma once

#include <cstdint>
#include <string>

namespace derivchain {

/// Percentage held in hundredths of a percent, rounded half-up from an exact ratio.
struct Percent {
  std::int64_t hundredths = 0;

  /// 0 when `whole` is 0.
  static constexpr Percent of(std::int64_t part, std::int64_t whole) {
    if (whole <= 0) return {0};
    return {(part * 20000 + whole) / (2 * whole)};
  }

  double value() const { return static_cast<double>(hundredths) / 100.0; }

  /// "87.63"
  std::string to_string() const {
    auto frac = hundredths % 100;
    return std::to_string(hundredths / 100) + "." + (frac < 10 ? "0" : "") + std::to_string(frac);
  }

  friend constexpr bool operator==(Percent, Percent) = default;
};

}  // namespace derivchain
