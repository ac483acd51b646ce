#pragma once

#include <stdexcept>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lowest `count` positive wavenumbers of a second-order finite-difference
/// discretisation of the graph Laplacian (-i d/dx - A)^2 with continuity and
/// Kirchhoff conditions at vertices.
///
/// Every edge is cut into `points_per_edge` segments. Magnetic phases enter as
/// Peierls factors exp(i A h) on the links. The generalised problem
/// K u = lambda M u (lumped mass at vertices) is solved by bisection on the
/// Sylvester inertia of K - sigma M, which is independent of the
/// bond-scattering machinery. Accuracy is O(h^2).
std::vector<double> fd_oracle_spectrum(const MetricGraph& graph, int points_per_edge, int count);

/// Number of eigenvalues of the discretised problem strictly below lambda.
/// Exposed for tests.
int fd_inertia_below(const MetricGraph& graph, int points_per_edge, double lambda);

}  // namespace qgraph
