#pragma once

#include <string>

#include "qgraph/graph.hpp"
#include "qgraph/solver.hpp"

namespace qgraph {

/// A phase-shifter sweep: configuration i moves i * step_delta metres from
/// shrink_edge to grow_edge, for i = 0..step_count, and pairs each
/// configuration with its edge-switch image.
struct SweepSpec {
  std::string name;
  MetricGraph base;
  EdgeId grow_edge{};
  EdgeId shrink_edge{};
  double step_delta = 0.0;
  int step_count = 0;
  SwitchDescriptor switch_descriptor{};
  SolverConfig solver{};
};

/// Throws std::invalid_argument naming the first broken invariant.
void check_sweep(const SweepSpec& spec);

}  // namespace qgraph
