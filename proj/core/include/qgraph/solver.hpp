#pragma once

// Real-wavenumber spectrum of a closed Neumann metric graph.
//
// Roots of det(I - U(k)) are located in three stages:
//   1. a uniform scan of the window at `scan_step` (default pi / (8 L)),
//   2. exact root counting on each scan cell from the winding of the
//      eigenphases of U(k), with bisection until each bracket holds a
//      single root (or a cluster narrower than root_tolerance),
//   3. a bracketed solve (TOMS 748) for the zero of the phase of the
//      eigenvalue of U(k) nearest 1, falling back to golden-section on the
//      smallest singular value of I - U(k); every refined root is
//      re-checked with the exact count.
//
// The eigenphases of U(k) = exp(i k Lambda) M increase monotonically with k
// and their lifted sum grows at exactly sum_b L_b = 2 L, so the number of
// roots in (k1, k2] is
//
//     [2 L (k2 - k1) - sum_j theta_j(k2) + sum_j theta_j(k1)] / (2 pi)
//
// with theta_j reduced to [0, 2 pi).

#include <cstdint>
#include <string>
#include <vector>

#include "qgraph/bond_scattering.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/units.hpp"

namespace qgraph {

struct SolverConfig {
  KWindow window{};
  /// 0 selects pi / (8 * total_length).
  double scan_step = 0.0;
  double root_tolerance = 1e-10;
  double residual_threshold = 1e-6;
  /// Number of step halvings attempted when the completeness check fails.
  int max_refinement_iterations = 3;
  /// Bound on |N_fl| used by the completeness check.
  double weyl_bound = 3.0;
};

/// Throws std::invalid_argument describing the first invalid field.
void check_config(const SolverConfig& config);

enum class SolveStatus { Complete, Incomplete };

struct SpectrumDiagnostics {
  std::vector<double> residuals;
  /// Singular values of I - U below residual_threshold at each root.
  std::vector<int> svd_multiplicities;
  /// Roots whose refined residual exceeded the threshold and were dropped.
  int rejected_roots = 0;
  /// Exact eigenphase count of roots in the window.
  int expected_count = 0;
  double max_abs_fluctuation = 0.0;
  bool weyl_ok = true;
  bool count_ok = true;
  bool complete = true;
  SolveStatus status = SolveStatus::Complete;
  double scan_step_used = 0.0;
  int refinement_passes = 0;

  friend bool operator==(const SpectrumDiagnostics&, const SpectrumDiagnostics&) = default;
};

struct Spectrum {
  std::vector<double> wavenumbers;
  std::vector<int> multiplicities;
  KWindow window{};
  double total_length = 0.0;
  /// Number of eigenvalues (with multiplicity) in (0, window.k_min].
  int levels_below = 0;
  SpectrumDiagnostics diagnostics{};

  std::size_t distinct_count() const noexcept { return wavenumbers.size(); }
  /// Number of levels with multiplicity.
  int level_count() const noexcept;
  /// Levels with multiplicities expanded, ascending.
  std::vector<double> expanded() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// Builds a Spectrum from bare levels (tests, CSV input, fault injection).
/// Equal consecutive values are merged into one level with multiplicity.
Spectrum make_spectrum(std::vector<double> levels, KWindow window, double total_length,
                       int levels_below = 0);

/// Exact number of eigenvalues (with multiplicity) in (k1, k2], 0 < k1 < k2.
int count_roots(const BondScattering& bs, double k1, double k2);
int count_roots(const MetricGraph& graph, double k1, double k2);

Spectrum solve_spectrum(const MetricGraph& graph, const SolverConfig& config);

/// Recomputes the completeness diagnostics of `spectrum` against `graph`,
/// e.g. after a level has been removed on purpose.
void assess_completeness(const MetricGraph& graph, const SolverConfig& config, Spectrum& spectrum);

/// Copy of `spectrum` with expanded level `index` (0-based) removed, for
/// fault injection. Diagnostics are carried over unchanged; call
/// assess_completeness to re-check. Throws std::out_of_range.
Spectrum without_level(const Spectrum& spectrum, int index);

struct PhaseReversalPair {
  Spectrum plus;
  Spectrum minus;
};

/// Spectra for phases +A and -A over the same window.
PhaseReversalPair spectrum_under_phase_reversal(const MetricGraph& graph, const SolverConfig& config);

/// Window lower edge actually used for root search (k = 0 is excluded).
double effective_k_min(const KWindow& window) noexcept;

}  // namespace qgraph
