#include "qgraph/fd_oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

namespace qgraph {

namespace {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

class Discretization {
 public:
  Discretization(const MetricGraph& graph, int points_per_edge) {
    if (points_per_edge < 100) throw std::invalid_argument("fd oracle needs at least 100 points per edge");
    if (auto v = validate(graph); !v.empty()) throw GraphError("invalid graph: " + v.front().message);

    const auto n_seg = static_cast<Eigen::Index>(points_per_edge);
    const Eigen::Index vertices = graph.vertex_count();
    size_ = vertices + static_cast<Eigen::Index>(graph.edge_count()) * (n_seg - 1);
    mass_ = Eigen::VectorXd::Zero(size_);

    std::vector<Eigen::Triplet<Complex>> stiffness;
    Eigen::Index next = vertices;
    for (const auto& e : graph.edges()) {
      const double h = e.length_m / static_cast<double>(n_seg);
      const Complex link = std::polar(1.0, e.phase_per_m * h);
      Eigen::Index prev = to_index(e.u);
      mass_(prev) += 0.5 * h;
      for (Eigen::Index j = 1; j <= n_seg; ++j) {
        Eigen::Index cur;
        if (j == n_seg) {
          cur = to_index(e.v);
          mass_(cur) += 0.5 * h;
        } else {
          cur = next++;
          mass_(cur) += h;
        }
        // |psi_cur - link * psi_prev|^2 / h
        stiffness.emplace_back(prev, prev, 1.0 / h);
        stiffness.emplace_back(cur, cur, 1.0 / h);
        stiffness.emplace_back(cur, prev, -link / h);
        stiffness.emplace_back(prev, cur, -std::conj(link) / h);
        prev = cur;
      }
    }
    stiffness_.resize(size_, size_);
    stiffness_.setFromTriplets(stiffness.begin(), stiffness.end());
    for (Eigen::Index i = 0; i < size_; ++i) mass_diag_.emplace_back(i, i, Complex(mass_(i), 0.0));

    SparseMatrix probe = shifted(1.0);
    solver_.analyzePattern(probe);
  }

  int inertia_below(double lambda) {
    const SparseMatrix a = shifted(lambda);
    solver_.factorize(a);
    if (solver_.info() != Eigen::Success)
      throw OracleError("finite-difference factorisation failed at lambda = " + std::to_string(lambda));
    const auto d = solver_.vectorD();
    int negative = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i)
      if (d(i).real() < 0.0) ++negative;
    return negative;
  }

 private:
  SparseMatrix shifted(double sigma) const {
    SparseMatrix m(size_, size_);
    m.setFromTriplets(mass_diag_.begin(), mass_diag_.end());
    return stiffness_ - sigma * m;
  }

  Eigen::Index size_ = 0;
  Eigen::VectorXd mass_;
  SparseMatrix stiffness_;
  std::vector<Eigen::Triplet<Complex>> mass_diag_;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> solver_;
};

}  // namespace

int fd_inertia_below(const MetricGraph& graph, int points_per_edge, double lambda) {
  Discretization disc(graph, points_per_edge);
  return disc.inertia_below(lambda);
}

std::vector<double> fd_oracle_spectrum(const MetricGraph& graph, int points_per_edge, int count) {
  if (count < 1) throw std::invalid_argument("fd oracle count must be >= 1");
  Discretization disc(graph, points_per_edge);

  const double total = graph.total_length();
  const double unit = std::pow(std::numbers::pi / total, 2);
  // Eigenvalues below this are the zero mode (or numerically zero).
  const double floor_lambda = 1e-8 * unit;
  const int base = disc.inertia_below(floor_lambda);

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  double lo_start = floor_lambda;
  for (int j = 1; j <= count; ++j) {
    const int target = base + j;
    double hi = std::max(lo_start * 2.0, unit * std::pow(j + 4.0, 2));
    int guard = 0;
    while (disc.inertia_below(hi) < target) {
      hi *= 2.0;
      if (++guard > 60) throw OracleError("could not bracket finite-difference eigenvalue");
    }
    double lo = lo_start;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (disc.inertia_below(mid) >= target)
        hi = mid;
      else
        lo = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    out.push_back(std::sqrt(lambda));
    lo_start = lo;
  }
  return out;
}

}  // namespace qgraph
