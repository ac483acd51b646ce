#pragma once

// Tetrahedral network geometries of the microwave experiments.
//
// Experimental lengths are used where known (phase-shifter edges, switched
// cables, total optical length). The remaining edges carry default lengths
// that sum to that total without small-integer ratios; override them through
// a graph file.
//
// Vertices: a = 0, b = 1, c = 2, d = 3. Edge ids are the cable numbers.

#include <string>
#include <vector>

#include "qgraph/sweep.hpp"

namespace qgraph {

inline constexpr double kGoeTotalLength = 2.248;
inline constexpr double kGueTotalLength = 2.918;
/// Length change per 6 degree phase-shifter step.
inline constexpr double kPhaseShifterStep = 0.005;
/// Levels per configuration in the GUE numerics (5960 over 40 configurations).
inline constexpr int kGueNumericsLevelsPerConfiguration = 149;
inline constexpr int kGueNumericsConfigurations = 40;

struct Preset {
  std::string name;
  std::string description;
  SweepSpec sweep;

  const MetricGraph& graph() const noexcept { return sweep.base; }
};

std::vector<std::string> preset_names();

/// Throws std::invalid_argument for an unknown name.
Preset preset(const std::string& name);

/// Window for the extended-range GUE numerics: (0, k_max] with
/// L k_max / pi = 149 for the gue total length.
KWindow gue_numerics_window();

}  // namespace qgraph
