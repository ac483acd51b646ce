#pragma once

// Bond-scattering description of a closed metric graph.
//
// Each undirected edge e = (u, v) gives two directed bonds: forward (u -> v)
// and backward (v -> u). The bond-scattering matrix is
//
//     U(k) = D(k) * S,   D(k)_bb = exp(i (k + A_b) L_b),
//     S_{b'b} = 2/d_w - delta(b', reverse(b))   for b ending at w, b' leaving w,
//
// where A_b is the edge's phase per meter, negated on the backward bond. The
// graph eigenvalues are the k > 0 with det(I - U(k)) = 0.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qgraph/graph.hpp"

namespace qgraph {

using ComplexMatrix = Eigen::MatrixXcd;

struct DirectedBond {
  EdgeId edge{};
  bool forward = true;
  VertexId origin{};
  VertexId terminus{};
  double length_m = 0.0;
  /// Signed phase per meter; negated for the backward bond.
  double phase_per_m = 0.0;
};

/// Directed bonds in a fixed order: bond 2i is edge i forward, 2i+1 backward.
/// reverse(b) == b ^ 1.
std::vector<DirectedBond> directed_bonds(const MetricGraph& graph);

constexpr std::size_t reverse_bond(std::size_t b) noexcept { return b ^ 1u; }

/// Precomputed k-independent pieces of U(k) for one graph.
class BondScattering {
 public:
  explicit BondScattering(const MetricGraph& graph);

  std::size_t dimension() const noexcept { return bonds_.size(); }
  const std::vector<DirectedBond>& bonds() const noexcept { return bonds_; }
  const ComplexMatrix& vertex_scattering() const noexcept { return scattering_; }
  /// Sum of bond lengths, 2 * total_length.
  double bond_length_sum() const noexcept { return bond_length_sum_; }

  /// U(k); throws std::invalid_argument for k <= 0.
  ComplexMatrix matrix(double k) const;

  /// Eigenphases of U(k) reduced to [0, 2*pi).
  std::vector<double> eigenphases(double k) const;

 private:
  std::vector<DirectedBond> bonds_;
  ComplexMatrix scattering_;
  double bond_length_sum_ = 0.0;
};

/// U(k) for `graph`.
ComplexMatrix bond_matrix(const MetricGraph& graph, double k);

/// Singular values of I - U(k), ascending.
Eigen::VectorXd secular_singular_values(const MetricGraph& graph, double k);
Eigen::VectorXd secular_singular_values(const BondScattering& bs, double k);

/// Smallest singular value of I - U(k); zero exactly at eigenvalues.
double secular_residual(const MetricGraph& graph, double k);
double secular_residual(const BondScattering& bs, double k);

}  // namespace qgraph
