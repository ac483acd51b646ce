#include "qgraph/presets.hpp"

#include <numbers>
#include <stdexcept>

namespace qgraph {

namespace {

constexpr VertexId a{0}, b{1}, c{2}, d{3};

Edge edge(std::uint32_t id, VertexId u, VertexId v, double length, double phase = 0.0) {
  return Edge{EdgeId{id}, u, v, length, phase};
}

SolverConfig window_ghz(double lo, double hi) {
  SolverConfig config;
  config.window = KWindow::from_ghz(lo, hi);
  return config;
}

Preset goe_a() {
  Preset p;
  p.name = "goe_a";
  p.description =
      "Tetrahedral network, preserved time reversal. Phase shifters on edges 1 (grows) and 2 (shrinks); "
      "switch of cables 3 and 5 at vertex a.";
  p.sweep.name = p.name;
  p.sweep.base = MetricGraph(4, {
                                    edge(1, c, d, 0.697),
                                    edge(2, b, d, 0.612),
                                    edge(3, a, b, 0.170),
                                    edge(4, a, d, 0.210),
                                    edge(5, a, c, 0.243),
                                    edge(6, b, c, 0.316),
                                });
  p.sweep.grow_edge = EdgeId{1};
  p.sweep.shrink_edge = EdgeId{2};
  p.sweep.step_delta = kPhaseShifterStep;
  p.sweep.step_count = 10;
  p.sweep.switch_descriptor = {a, EdgeId{3}, EdgeId{5}};
  p.sweep.solver = window_ghz(0.01, 2.5);
  return p;
}

Preset goe_b() {
  Preset p;
  p.name = "goe_b";
  p.description =
      "Tetrahedral network, preserved time reversal, second phase-shifter placement. Edge 1 grows, edge 4 "
      "shrinks; switch of cables 3 and 2 at vertex b.";
  p.sweep.name = p.name;
  p.sweep.base = MetricGraph(4, {
                                    edge(1, c, d, 0.697),
                                    edge(2, b, c, 0.327),
                                    edge(3, a, b, 0.170),
                                    edge(4, a, d, 0.520),
                                    edge(5, a, c, 0.243),
                                    edge(6, b, d, 0.291),
                                });
  p.sweep.grow_edge = EdgeId{1};
  p.sweep.shrink_edge = EdgeId{4};
  p.sweep.step_delta = kPhaseShifterStep;
  p.sweep.step_count = 10;
  p.sweep.switch_descriptor = {b, EdgeId{3}, EdgeId{2}};
  p.sweep.solver = window_ghz(0.01, 2.5);
  return p;
}

Preset gue() {
  // Phase per metre on every edge; |A L| lies between 0.8 and 1.2 rad.
  Preset p;
  p.name = "gue";
  p.description =
      "Tetrahedral network with a magnetic vector potential on all edges (broken time reversal). Edge 1 "
      "grows, edge 6 shrinks; switch of cables 2 and 3 at vertex b.";
  p.sweep.name = p.name;
  p.sweep.base = MetricGraph(4, {
                                    edge(1, c, d, 0.7413, 1.31),
                                    edge(2, b, c, 0.327, -2.47),
                                    edge(3, a, b, 0.170, 6.83),
                                    edge(4, a, d, 0.5128, 1.93),
                                    edge(5, a, c, 0.4519, -2.29),
                                    edge(6, b, d, 0.7150, 1.57),
                                });
  p.sweep.grow_edge = EdgeId{1};
  p.sweep.shrink_edge = EdgeId{6};
  p.sweep.step_delta = kPhaseShifterStep;
  p.sweep.step_count = 7;
  p.sweep.switch_descriptor = {b, EdgeId{2}, EdgeId{3}};
  p.sweep.solver = window_ghz(0.01, 2.5);
  return p;
}

}  // namespace

std::vector<std::string> preset_names() { return {"goe_a", "goe_b", "gue"}; }

Preset preset(const std::string& name) {
  if (name == "goe_a") return goe_a();
  if (name == "goe_b") return goe_b();
  if (name == "gue") return gue();
  throw std::invalid_argument("unknown preset '" + name + "' (expected goe_a, goe_b or gue)");
}

KWindow gue_numerics_window() {
  return {0.0, kGueNumericsLevelsPerConfiguration * std::numbers::pi / gue().graph().total_length()};
}

}  // namespace qgraph
