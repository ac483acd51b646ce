#include "qgraph/level_stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qgraph {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498949;
}  // namespace

std::string to_string(EnsembleClass c) { return c == EnsembleClass::GOE ? "GOE" : "GUE"; }

EnsembleClass ensemble_class_from_string(const std::string& name) {
  if (name == "GOE" || name == "goe") return EnsembleClass::GOE;
  if (name == "GUE" || name == "gue") return EnsembleClass::GUE;
  throw std::invalid_argument("unknown ensemble class '" + name + "'");
}

double SpacingSample::mean() const {
  if (spacings.empty()) return 0.0;
  return std::accumulate(spacings.begin(), spacings.end(), 0.0) / static_cast<double>(spacings.size());
}

SpacingSample unfold_spacings(const Spectrum& spectrum) {
  const auto levels = spectrum.expanded();
  if (levels.size() < 2) throw std::invalid_argument("unfolding needs at least two levels");
  const double density = spectrum.total_length / kPi;
  SpacingSample out;
  out.configuration_count = 1;
  out.spacings.reserve(levels.size() - 1);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) out.spacings.push_back((levels[i + 1] - levels[i]) * density);
  return out;
}

SpacingSample pool_spacings(const std::vector<SpacingSample>& samples, std::string label) {
  SpacingSample out;
  out.ensemble_label = std::move(label);
  for (const auto& s : samples) {
    out.spacings.insert(out.spacings.end(), s.spacings.begin(), s.spacings.end());
    out.configuration_count += s.configuration_count;
  }
  std::sort(out.spacings.begin(), out.spacings.end());
  return out;
}

double wigner_pdf(double s, EnsembleClass c) {
  if (s < 0.0) return 0.0;
  if (c == EnsembleClass::GOE) return 0.5 * kPi * s * std::exp(-0.25 * kPi * s * s);
  return 32.0 / (kPi * kPi) * s * s * std::exp(-4.0 * s * s / kPi);
}

double wigner_cdf(double s, EnsembleClass c) {
  if (s <= 0.0) return 0.0;
  if (c == EnsembleClass::GOE) return 1.0 - std::exp(-0.25 * kPi * s * s);
  return std::erf(2.0 * s / std::sqrt(kPi)) - 4.0 * s / kPi * std::exp(-4.0 * s * s / kPi);
}

double transition_scale(double xi) {
  const double q = 2.0 + xi * xi;
  const double bracket = std::atan(xi / std::numbers::sqrt2) - std::numbers::sqrt2 * xi / q;
  return std::sqrt(kPi * q / 4.0) * (1.0 - 2.0 / kPi * bracket);
}

double transition_pdf(double s, double xi) {
  if (s < 0.0) return 0.0;
  const double c = transition_scale(xi);
  const double prefactor = std::sqrt((2.0 + xi * xi) / 2.0);
  const double erf_term = xi > 0.0 ? std::erf(s * c / xi) : 1.0;
  return prefactor * s * c * c * erf_term * std::exp(-0.5 * s * s * c * c);
}

SpacingHistogram spacing_histogram(const SpacingSample& sample, double bin_width, double s_max) {
  if (!(bin_width > 0.0) || !(s_max > bin_width)) throw std::invalid_argument("bad histogram binning");
  const auto bins = static_cast<std::size_t>(std::llround(s_max / bin_width));
  SpacingHistogram h;
  h.bin_width = bin_width;
  h.sample_size = sample.size();
  h.centers.resize(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (std::size_t b = 0; b < bins; ++b) h.centers[b] = (static_cast<double>(b) + 0.5) * bin_width;
  for (double s : sample.spacings) {
    if (s < 0.0) continue;
    const auto b = static_cast<std::size_t>(std::floor(s / bin_width));
    if (b < bins) ++counts[b];
  }
  h.density.resize(bins);
  const double norm = sample.empty() ? 0.0 : 1.0 / (static_cast<double>(sample.size()) * bin_width);
  for (std::size_t b = 0; b < bins; ++b) h.density[b] = static_cast<double>(counts[b]) * norm;
  return h;
}

namespace {

// Average of P(s, xi) over [lo, hi], five-point Gauss-Legendre.
double bin_average(double lo, double hi, double xi) {
  static constexpr std::array<double, 5> nodes{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                               0.9061798459386640};
  static constexpr std::array<double, 5> weights{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                 0.2369268850561891, 0.2369268850561891};
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * transition_pdf(mid + half * nodes[i], xi);
  return 0.5 * acc;
}

class XiObjective {
 public:
  explicit XiObjective(const SpacingHistogram& h) : h_(h) {}

  double operator()(double xi) const {
    double sum = 0.0;
    for (std::size_t b = 0; b < h_.centers.size(); ++b) {
      const double lo = h_.centers[b] - 0.5 * h_.bin_width;
      const double r = h_.density[b] - bin_average(lo, lo + h_.bin_width, xi);
      sum += r * r;
    }
    return sum;
  }

 private:
  const SpacingHistogram& h_;
};

}  // namespace

TransitionFitResult fit_xi(const SpacingHistogram& histogram) {
  if (histogram.sample_size < 200) throw std::invalid_argument("xi fit needs at least 200 spacings");
  const XiObjective objective(histogram);

  std::vector<double> grid{0.0};
  constexpr int kGridPoints = 240;
  const double log_lo = std::log(1e-3);
  const double log_hi = std::log(kMaxXi);
  for (int i = 0; i < kGridPoints; ++i)
    grid.push_back(std::exp(log_lo + (log_hi - log_lo) * i / (kGridPoints - 1)));

  std::vector<double> trace;
  trace.reserve(grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    trace.push_back(objective(grid[i]));
    if (!std::isfinite(trace.back())) throw FitError("xi objective is not finite", trace);
    if (trace[i] < trace[best]) best = i;
  }

  double lo = grid[best == 0 ? 0 : best - 1];
  double hi = grid[std::min(best + 1, grid.size() - 1)];
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-9 * std::max(1.0, hi); ++it) {
    if (f1 <= f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = objective(x2);
    }
    trace.push_back(std::min(f1, f2));
  }
  double xi = 0.5 * (lo + hi);
  double s_min = objective(xi);
  if (trace[best] < s_min) {
    xi = grid[best];
    s_min = trace[best];
  }
  if (!std::isfinite(s_min)) throw FitError("xi fit did not converge", trace);

  TransitionFitResult result;
  result.xi = xi;
  result.objective = s_min;
  result.bins = static_cast<int>(histogram.centers.size());

  // Sandwich standard error: Gauss-Newton curvature of the objective for the
  // sensitivity, multinomial bin noise (var of a density bin ~ P_b / (n w))
  // for the spread.
  const double n = static_cast<double>(histogram.sample_size);
  auto standard_error = [&](double x) {
    const double h = std::max(1e-3, 1e-2 * x);
    const double dx = std::min(h, x);
    double curvature = 0.0, spread = 0.0;
    for (std::size_t b = 0; b < histogram.centers.size(); ++b) {
      const double lo_s = histogram.centers[b] - 0.5 * histogram.bin_width;
      const double hi_s = lo_s + histogram.bin_width;
      const double jac = (bin_average(lo_s, hi_s, x + h) - bin_average(lo_s, hi_s, x - dx)) / (h + dx);
      curvature += jac * jac;
      spread += jac * jac * bin_average(lo_s, hi_s, x) / (n * histogram.bin_width);
    }
    return curvature > 0.0 ? std::sqrt(spread) / curvature : kMaxXi;
  };
  // The model is less sensitive at larger xi, so the standard error is also
  // taken one standard error above the optimum and the larger one is used.
  const double se = standard_error(xi);
  const double bar = 2.0 * std::max(se, xi + se < kMaxXi ? standard_error(xi + se) : se);
  result.xi_uncertainty = std::min(bar, kMaxXi);
  return result;
}

TransitionFitResult fit_xi(const SpacingSample& sample, double bin_width, double s_max) {
  if (sample.size() < 200) throw std::invalid_argument("xi fit needs at least 200 spacings");
  return fit_xi(spacing_histogram(sample, bin_width, s_max));
}

double ks_distance(const SpacingSample& sample, EnsembleClass c) {
  if (sample.spacings.empty()) throw std::invalid_argument("KS distance of an empty sample");
  auto sorted = sample.spacings;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = wigner_cdf(sorted[i], c);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace qgraph
