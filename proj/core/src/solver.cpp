#include "qgraph/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/toms748_solve.hpp>

namespace qgraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio
constexpr int kMaxBisections = 200;

double phase_sum(const BondScattering& bs, double k) {
  const auto phases = bs.eigenphases(k);
  return std::accumulate(phases.begin(), phases.end(), 0.0);
}

int count_between(const BondScattering& bs, double k1, double sum1, double k2, double sum2) {
  const double crossings = (bs.bond_length_sum() * (k2 - k1) - sum2 + sum1) / kTwoPi;
  const double rounded = std::round(crossings);
  if (std::abs(crossings - rounded) > 1e-3 || rounded < 0.0)
    throw std::runtime_error("eigenphase root count is not a non-negative integer (" +
                             std::to_string(crossings) + ")");
  return static_cast<int>(rounded);
}

struct Sample {
  double k;
  double sum;
};

struct Root {
  double k;
  int multiplicity;
};

class RootFinder {
 public:
  RootFinder(const BondScattering& bs, const SolverConfig& config, double fine_width)
      : bs_(bs), config_(config), fine_width_(fine_width) {}

  Sample sample(double k) const { return {k, phase_sum(bs_, k)}; }

  int count(const Sample& a, const Sample& b) const { return count_between(bs_, a.k, a.sum, b.k, b.sum); }

  // Appends the roots inside (a.k, b.k] in ascending order.
  void isolate(const Sample& a, const Sample& b, int n, std::vector<Root>& out) const {
    if (n <= 0) return;
    const double width = b.k - a.k;
    if (n == 1 && width <= fine_width_) {
      out.push_back({refine_single(a, b), 1});
      return;
    }
    if (width <= config_.root_tolerance) {
      out.push_back({0.5 * (a.k + b.k), n});
      return;
    }
    const auto m = sample(0.5 * (a.k + b.k));
    const int left = std::min(count(a, m), n);
    isolate(a, m, left, out);
    isolate(m, b, n - left, out);
  }

 private:
  double refine_single(const Sample& a, const Sample& b) const {
    const double tol = config_.root_tolerance;
    const double guess = phase_root(a.k, b.k);
    const double lo = std::max(a.k, guess - tol);
    const double hi = std::min(b.k, guess + tol);
    if (hi > lo) {
      const auto s_lo = lo == a.k ? a : sample(lo);
      const auto s_hi = hi == b.k ? b : sample(hi);
      if (count(s_lo, s_hi) == 1) return guess;
    }
    // Neither refinement landed on the counted root; fall back to counting.
    Sample left = a;
    Sample right = b;
    for (int i = 0; i < kMaxBisections && right.k - left.k > tol; ++i) {
      const auto m = sample(0.5 * (left.k + right.k));
      if (count(left, m) == 1)
        right = m;
      else
        left = m;
    }
    return 0.5 * (left.k + right.k);
  }

  // Signed phase of the eigenvalue of U(k) closest to 1. Inside a bracket
  // holding one root it changes sign exactly once, upwards.
  double nearest_phase(double k) const {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(bs_.matrix(k), false);
    const auto& ev = solver.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < ev.size(); ++i)
      if (std::abs(1.0 - ev(i)) < std::abs(1.0 - ev(best))) best = i;
    return std::arg(ev(best));
  }

  double phase_root(double lo, double hi) const {
    const double f_lo = nearest_phase(lo);
    const double f_hi = nearest_phase(hi);
    if (!(f_lo < 0.0 && f_hi > 0.0)) return golden_section(lo, hi);
    const double tol = config_.root_tolerance;
    std::uintmax_t iterations = kMaxBisections;
    const auto bracket = boost::math::tools::toms748_solve(
        [this](double k) { return nearest_phase(k); }, lo, hi, f_lo, f_hi,
        [tol](double x, double y) { return std::abs(y - x) <= tol; }, iterations);
    return 0.5 * (bracket.first + bracket.second);
  }

  double golden_section(double lo, double hi) const {
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = secular_residual(bs_, x1);
    double f2 = secular_residual(bs_, x2);
    for (int i = 0; i < kMaxBisections && hi - lo > config_.root_tolerance; ++i) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = secular_residual(bs_, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = secular_residual(bs_, x2);
      }
    }
    return 0.5 * (lo + hi);
  }

  const BondScattering& bs_;
  const SolverConfig& config_;
  double fine_width_;
};

void fill_weyl_diagnostics(const SolverConfig& config, Spectrum& s) {
  auto& d = s.diagnostics;
  double cumulative = s.levels_below;
  double worst = 0.0;
  for (std::size_t i = 0; i < s.wavenumbers.size(); ++i) {
    cumulative += s.multiplicities[i];
    const double fl = cumulative - s.total_length * s.wavenumbers[i] / std::numbers::pi;
    worst = std::max(worst, std::abs(fl));
  }
  d.max_abs_fluctuation = worst;
  d.weyl_ok = worst <= config.weyl_bound;
  d.count_ok = s.level_count() == d.expected_count;
  d.complete = d.weyl_ok && d.count_ok;
  d.status = d.complete ? SolveStatus::Complete : SolveStatus::Incomplete;
}

Spectrum solve_pass(const MetricGraph& graph, const BondScattering& bs, const SolverConfig& config,
                    double step) {
  Spectrum spec;
  spec.window = config.window;
  spec.total_length = graph.total_length();
  auto& diag = spec.diagnostics;
  diag.scan_step_used = step;

  const double k_lo = effective_k_min(config.window);
  const double k_hi = config.window.k_max;
  RootFinder finder(bs, config, step / 16.0);

  const double tiny = 1e-9 * k_hi;
  Sample prev = finder.sample(k_lo);
  if (k_lo > tiny) spec.levels_below = finder.count(finder.sample(tiny), prev);

  std::vector<Root> roots;
  const auto cells = static_cast<long>(std::ceil((k_hi - k_lo) / step));
  for (long j = 1; j <= cells; ++j) {
    const double k = j == cells ? k_hi : k_lo + static_cast<double>(j) * step;
    const auto next = finder.sample(k);
    const int n = finder.count(prev, next);
    diag.expected_count += n;
    finder.isolate(prev, next, n, roots);
    prev = next;
  }

  // Roots come out ascending; merge anything closer than the tolerance.
  std::vector<Root> merged;
  for (const auto& r : roots) {
    if (!merged.empty() && r.k - merged.back().k <= config.root_tolerance)
      merged.back().multiplicity += r.multiplicity;
    else
      merged.push_back(r);
  }

  for (const auto& r : merged) {
    const auto sv = secular_singular_values(bs, r.k);
    if (!(sv(0) < config.residual_threshold)) {
      ++diag.rejected_roots;
      continue;
    }
    spec.wavenumbers.push_back(r.k);
    spec.multiplicities.push_back(r.multiplicity);
    diag.residuals.push_back(sv(0));
    diag.svd_multiplicities.push_back(
        static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](double x) { return x < config.residual_threshold; })));
  }
  fill_weyl_diagnostics(config, spec);
  return spec;
}

}  // namespace

double effective_k_min(const KWindow& window) noexcept {
  return window.k_min > 0.0 ? window.k_min : 1e-9 * window.k_max;
}

void check_config(const SolverConfig& c) {
  if (!(c.window.k_min >= 0.0) || !(c.window.k_max > c.window.k_min) || !std::isfinite(c.window.k_max))
    throw std::invalid_argument("solver window must satisfy 0 <= k_min < k_max");
  if (!(c.scan_step >= 0.0) || !std::isfinite(c.scan_step))
    throw std::invalid_argument("scan_step must be positive (or 0 for the default)");
  if (!(c.root_tolerance > 0.0)) throw std::invalid_argument("root_tolerance must be positive");
  if (!(c.residual_threshold > 0.0)) throw std::invalid_argument("residual_threshold must be positive");
  if (c.max_refinement_iterations < 0) throw std::invalid_argument("max_refinement_iterations must be >= 0");
  if (!(c.weyl_bound > 0.0)) throw std::invalid_argument("weyl_bound must be positive");
}

int Spectrum::level_count() const noexcept {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

std::vector<double> Spectrum::expanded() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(level_count()));
  for (std::size_t i = 0; i < wavenumbers.size(); ++i)
    out.insert(out.end(), static_cast<std::size_t>(multiplicities[i]), wavenumbers[i]);
  return out;
}

Spectrum make_spectrum(std::vector<double> levels, KWindow window, double total_length, int levels_below) {
  std::sort(levels.begin(), levels.end());
  Spectrum s;
  s.window = window;
  s.total_length = total_length;
  s.levels_below = levels_below;
  for (double k : levels) {
    if (!s.wavenumbers.empty() && s.wavenumbers.back() == k) {
      ++s.multiplicities.back();
    } else {
      s.wavenumbers.push_back(k);
      s.multiplicities.push_back(1);
    }
  }
  s.diagnostics.expected_count = s.level_count();
  s.diagnostics.residuals.assign(s.wavenumbers.size(), 0.0);
  s.diagnostics.svd_multiplicities = s.multiplicities;
  return s;
}

int count_roots(const BondScattering& bs, double k1, double k2) {
  if (!(k1 > 0.0) || !(k2 > k1)) throw std::invalid_argument("count_roots needs 0 < k1 < k2");
  return count_between(bs, k1, phase_sum(bs, k1), k2, phase_sum(bs, k2));
}

int count_roots(const MetricGraph& graph, double k1, double k2) {
  return count_roots(BondScattering(graph), k1, k2);
}

Spectrum solve_spectrum(const MetricGraph& graph, const SolverConfig& config) {
  check_config(config);
  if (auto v = validate(graph); !v.empty()) throw GraphError("invalid graph: " + v.front().message);

  const BondScattering bs(graph);
  double step = config.scan_step > 0.0 ? config.scan_step : std::numbers::pi / (8.0 * graph.total_length());
  step = std::min(step, config.window.width());

  Spectrum result = solve_pass(graph, bs, config, step);
  for (int pass = 1; pass <= config.max_refinement_iterations && !result.diagnostics.complete; ++pass) {
    step *= 0.5;
    result = solve_pass(graph, bs, config, step);
    result.diagnostics.refinement_passes = pass;
  }
  return result;
}

void assess_completeness(const MetricGraph& graph, const SolverConfig& config, Spectrum& spectrum) {
  const BondScattering bs(graph);
  spectrum.diagnostics.expected_count =
      count_roots(bs, effective_k_min(spectrum.window), spectrum.window.k_max);
  fill_weyl_diagnostics(config, spectrum);
}

PhaseReversalPair spectrum_under_phase_reversal(const MetricGraph& graph, const SolverConfig& config) {
  return {solve_spectrum(graph, config), solve_spectrum(scale_phases(graph, -1.0), config)};
}

Spectrum without_level(const Spectrum& spectrum, int index) {
  if (index < 0 || index >= spectrum.level_count()) throw std::out_of_range("no level " + std::to_string(index));
  Spectrum out = spectrum;
  auto& d = out.diagnostics;
  std::size_t i = 0;
  for (int seen = 0; seen + out.multiplicities[i] <= index; ++i) seen += out.multiplicities[i];
  if (--out.multiplicities[i] == 0) {
    const auto at = static_cast<std::ptrdiff_t>(i);
    out.wavenumbers.erase(out.wavenumbers.begin() + at);
    out.multiplicities.erase(out.multiplicities.begin() + at);
    if (i < d.residuals.size()) d.residuals.erase(d.residuals.begin() + at);
    if (i < d.svd_multiplicities.size()) d.svd_multiplicities.erase(d.svd_multiplicities.begin() + at);
  }
  return out;
}

}  // namespace qgraph
