#pragma once

// Nearest-neighbour spacing statistics: unfolding with the exact Weyl
// density, Wigner surmises, the GOE->GUE transition density P(s, xi),
// binned least-squares fitting of xi, and Kolmogorov-Smirnov distances.

#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/solver.hpp"

namespace qgraph {

enum class EnsembleClass { GOE, GUE };

std::string to_string(EnsembleClass c);
EnsembleClass ensemble_class_from_string(const std::string& name);

struct SpacingSample {
  std::vector<double> spacings;
  std::string ensemble_label;
  int configuration_count = 0;

  std::size_t size() const noexcept { return spacings.size(); }
  bool empty() const noexcept { return spacings.empty(); }
  double mean() const;
};

/// s_i = (k_{i+1} - k_i) L / pi over the expanded levels. Throws
/// std::invalid_argument for fewer than two levels.
SpacingSample unfold_spacings(const Spectrum& spectrum);

/// Concatenates samples and sorts the spacings.
SpacingSample pool_spacings(const std::vector<SpacingSample>& samples, std::string label = {});

double wigner_pdf(double s, EnsembleClass c);
double wigner_cdf(double s, EnsembleClass c);

/// c(xi) of the transition density.
double transition_scale(double xi);

/// P(s, xi); at xi = 0 the erf factor is replaced by its limit 1 (GOE).
double transition_pdf(double s, double xi);

struct SpacingHistogram {
  double bin_width = 0.1;
  std::vector<double> centers;
  std::vector<double> density;
  std::size_t sample_size = 0;
};

/// Empirical density on [0, s_max) with bins of `bin_width`; the
/// normalisation uses the full sample size.
SpacingHistogram spacing_histogram(const SpacingSample& sample, double bin_width = 0.1, double s_max = 4.0);

class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, std::vector<double> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<double>& objective_trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

struct TransitionFitResult {
  double xi = 0.0;
  /// Two standard errors from the curvature of the objective.
  double xi_uncertainty = 0.0;
  /// Residual sum of squares at the optimum.
  double objective = 0.0;
  int bins = 0;
};

/// Upper end of the xi search range.
inline constexpr double kMaxXi = 50.0;

/// Binned least-squares fit of P(s, xi) over xi in [0, kMaxXi]. The model is
/// averaged over each bin. Requires >= 200 spacings.
TransitionFitResult fit_xi(const SpacingSample& sample, double bin_width = 0.1, double s_max = 4.0);
TransitionFitResult fit_xi(const SpacingHistogram& histogram);

/// sup |F_empirical - F_class| over the sample.
double ks_distance(const SpacingSample& sample, EnsembleClass c);

}  // namespace qgraph
