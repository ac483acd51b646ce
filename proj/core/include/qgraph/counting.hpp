#pragma once

// Counting-function statistics of spectra: Weyl law, the fluctuating part
// N_fl, the spectral shift dN = N - N~ between two spectra, its measure
// distribution, interlacing degree, and the missing-level diagnostic.
//
// Counting functions are absolute: N(k) = levels_below + number of window
// levels <= k, so two spectra over the same window compare correctly even
// when their windows do not start at k = 0.

#include <map>
#include <utility>
#include <vector>

#include "qgraph/solver.hpp"

namespace qgraph {

/// Smooth (Weyl) eigenvalue count L k / pi.
double weyl_count(double total_length, double k);

/// Right-continuous counting function N(k) of `spectrum`.
int counting_function(const Spectrum& spectrum, double k);

struct FluctuationPoint {
  double k;
  double n_fl;
};

/// N(k_i) - L k_i / pi at every distinct level.
std::vector<FluctuationPoint> fluctuating_count(const Spectrum& spectrum);

struct ShiftDistribution {
  /// Fraction of the window measure on which dN takes each integer value.
  std::map<int, double> mass;
  KWindow window{};
  int pairs = 1;

  double probability(int shift) const {
    auto it = mass.find(shift);
    return it == mass.end() ? 0.0 : it->second;
  }
  friend bool operator==(const ShiftDistribution&, const ShiftDistribution&) = default;
};

/// One constant piece of dN(k) over the window.
struct ShiftSegment {
  double k_begin;
  double k_end;
  int shift;
};

/// dN(k) = N(k) - N~(k) as a piecewise-constant function on the window.
/// Throws std::invalid_argument when the windows differ.
std::vector<ShiftSegment> shift_segments(const Spectrum& before, const Spectrum& after);

/// Exact Lebesgue measure of each dN value over the window, normalised.
ShiftDistribution shift_distribution(const Spectrum& before, const Spectrum& after);

/// Minimal r with nu_{n-r} <= nu~_n <= nu_{n+r} for every index, checked in
/// both directions. Levels outside the window count as lying above k_max
/// (or at/below k_min for indices <= levels_below). Throws on empty input.
int interlacing_degree(const Spectrum& before, const Spectrum& after);

struct InterlacingReport {
  int degree = 0;
  /// Indices (over both directions) that need r > 1.
  int violations = 0;
  /// Largest |dN| on the window; equals degree.
  int max_abs_shift = 0;
};

InterlacingReport interlacing_report(const Spectrum& before, const Spectrum& after);

enum class SpectrumSide { Before, After };

struct MissingResonanceFlag {
  /// The deficit starts in [k_begin, k_first_violation]; |dN| >= 2 occurs
  /// up to k_end.
  double k_begin = 0.0;
  double k_first_violation = 0.0;
  double k_end = 0.0;
  int max_abs_shift = 0;
  /// The spectrum with fewer levels on the interval.
  SpectrumSide suspect = SpectrumSide::After;
  /// Mean N_fl after the suspected location minus mean N_fl before it.
  double drift_before = 0.0;
  double drift_after = 0.0;
  /// Centre of the widest gap of the suspect spectrum in
  /// [k_begin, k_first_violation].
  double suspected_location = 0.0;
};

struct MissingResonanceReport {
  std::vector<MissingResonanceFlag> flags;
  bool empty() const noexcept { return flags.empty(); }
};

/// One flag per level deficit: where |dN| >= 2, i.e. level-1 interlacing
/// breaks, together with the interval the missing level must lie in.
MissingResonanceReport detect_missing_resonances(const Spectrum& before, const Spectrum& after);

std::string to_string(SpectrumSide side);

}  // namespace qgraph
