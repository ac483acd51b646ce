#include "qgraph/bond_scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qgraph {

std::vector<DirectedBond> directed_bonds(const MetricGraph& graph) {
  std::vector<DirectedBond> bonds;
  bonds.reserve(2 * graph.edge_count());
  for (const auto& e : graph.edges()) {
    bonds.push_back({e.id, true, e.u, e.v, e.length_m, e.phase_per_m});
    bonds.push_back({e.id, false, e.v, e.u, e.length_m, -e.phase_per_m});
  }
  return bonds;
}

BondScattering::BondScattering(const MetricGraph& graph) : bonds_(directed_bonds(graph)) {
  const auto n = bonds_.size();
  scattering_ = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t in = 0; in < n; ++in) {
    const auto w = bonds_[in].terminus;
    const double d = graph.degree(w);
    for (std::size_t out = 0; out < n; ++out) {
      if (bonds_[out].origin != w) continue;
      double amp = 2.0 / d;
      if (out == reverse_bond(in)) amp -= 1.0;
      scattering_(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) = amp;
    }
  }
  for (const auto& b : bonds_) bond_length_sum_ += b.length_m;
}

ComplexMatrix BondScattering::matrix(double k) const {
  if (!(k > 0.0)) throw std::invalid_argument("bond_matrix requires k > 0");
  ComplexMatrix u = scattering_;
  for (Eigen::Index b = 0; b < u.rows(); ++b) {
    const auto& bond = bonds_[static_cast<std::size_t>(b)];
    u.row(b) *= std::polar(1.0, (k + bond.phase_per_m) * bond.length_m);
  }
  return u;
}

std::vector<double> BondScattering::eigenphases(double k) const {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(matrix(k), /*computeEigenvectors=*/false);
  std::vector<double> phases;
  phases.reserve(dimension());
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (const auto& z : solver.eigenvalues()) {
    double t = std::arg(z);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t -= two_pi;
    phases.push_back(t);
  }
  return phases;
}

ComplexMatrix bond_matrix(const MetricGraph& graph, double k) { return BondScattering(graph).matrix(k); }

Eigen::VectorXd secular_singular_values(const BondScattering& bs, double k) {
  const auto n = static_cast<Eigen::Index>(bs.dimension());
  ComplexMatrix m = ComplexMatrix::Identity(n, n) - bs.matrix(k);
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  Eigen::VectorXd s = svd.singularValues();
  std::sort(s.begin(), s.end());
  return s;
}

Eigen::VectorXd secular_singular_values(const MetricGraph& graph, double k) {
  return secular_singular_values(BondScattering(graph), k);
}

// I - U is normal, so its singular values are |1 - lambda| over the
// eigenvalues of U; cheaper than an SVD and just as accurate.
double secular_residual(const BondScattering& bs, double k) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(bs.matrix(k), /*computeEigenvectors=*/false);
  double best = 2.0;
  for (const auto& z : solver.eigenvalues()) best = std::min(best, std::abs(1.0 - z));
  return best;
}

double secular_residual(const MetricGraph& graph, double k) {
  return secular_residual(BondScattering(graph), k);
}

}  // namespace qgraph
