#pragma once

#include <numbers>
#include <stdexcept>

namespace qgraph {

/// Speed of light in vacuum, m/s (exact).
inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Wavenumber (rad/m) of a resonance at `ghz`, using Re k = 2*pi*nu/c.
constexpr double ghz_to_k(double ghz) noexcept {
  return 2.0 * std::numbers::pi * ghz * 1e9 / kSpeedOfLight;
}

constexpr double k_to_ghz(double k) noexcept {
  return k * kSpeedOfLight / (2.0 * std::numbers::pi) / 1e9;
}

/// Half-open wavenumber window (k_min, k_max].
struct KWindow {
  double k_min = 0.0;
  double k_max = 0.0;

  double width() const noexcept { return k_max - k_min; }
  bool contains(double k) const noexcept { return k > k_min && k <= k_max; }

  static KWindow from_ghz(double lo, double hi) { return {ghz_to_k(lo), ghz_to_k(hi)}; }

  friend bool operator==(const KWindow&, const KWindow&) = default;
};

}  // namespace qgraph
