#include "qgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace qgraph {

MetricGraph::MetricGraph(std::uint32_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {}

double MetricGraph::total_length() const noexcept {
  double total = 0.0;
  for (const auto& e : edges_) total += e.length_m;
  return total;
}

std::uint32_t MetricGraph::degree(VertexId v) const noexcept {
  std::uint32_t d = 0;
  for (const auto& e : edges_) {
    if (e.u == v) ++d;
    if (e.v == v) ++d;
  }
  return d;
}

bool MetricGraph::has_magnetic_phase() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.phase_per_m != 0.0; });
}

std::size_t MetricGraph::edge_index(EdgeId id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return i;
  throw GraphError("no edge with id " + std::to_string(to_index(id)));
}

std::string to_string(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::NonPositiveLength: return "non_positive_length";
    case InvariantKind::NonFiniteValue: return "non_finite_value";
    case InvariantKind::VertexOutOfRange: return "vertex_out_of_range";
    case InvariantKind::DuplicateEdgeId: return "duplicate_edge_id";
    case InvariantKind::IsolatedVertex: return "isolated_vertex";
    case InvariantKind::Disconnected: return "disconnected";
    case InvariantKind::Empty: return "empty";
  }
  return "unknown";
}

namespace {

std::string edge_label(const Edge& e) {
  std::ostringstream os;
  os << "edge " << to_index(e.id) << " (" << to_index(e.u) << "-" << to_index(e.v) << ")";
  return os.str();
}

// Union-find over vertices; returns the number of components among vertices
// that appear in at least one in-range edge.
struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<Violation> validate(const MetricGraph& graph) {
  std::vector<Violation> out;
  const auto n = graph.vertex_count();
  if (n == 0 || graph.edges().empty()) {
    out.push_back({InvariantKind::Empty, "graph has no vertices or no edges"});
    return out;
  }

  std::set<std::uint32_t> ids;
  bool ranges_ok = true;
  for (const auto& e : graph.edges()) {
    if (!ids.insert(to_index(e.id)).second)
      out.push_back({InvariantKind::DuplicateEdgeId, edge_label(e) + ": duplicate edge id"});
    if (to_index(e.u) >= n || to_index(e.v) >= n) {
      ranges_ok = false;
      out.push_back({InvariantKind::VertexOutOfRange,
                     edge_label(e) + ": endpoint outside 0.." + std::to_string(n - 1)});
    }
    if (!std::isfinite(e.length_m) || !std::isfinite(e.phase_per_m)) {
      out.push_back({InvariantKind::NonFiniteValue, edge_label(e) + ": non-finite length or phase"});
    } else if (e.length_m <= 0.0) {
      std::ostringstream os;
      os << edge_label(e) << ": optical length " << e.length_m << " m is not positive";
      out.push_back({InvariantKind::NonPositiveLength, os.str()});
    }
  }
  if (!ranges_ok) return out;

  for (std::uint32_t v = 0; v < n; ++v) {
    if (graph.degree(VertexId{v}) == 0)
      out.push_back({InvariantKind::IsolatedVertex, "vertex " + std::to_string(v) + " has degree 0"});
  }

  DisjointSets sets(n);
  for (const auto& e : graph.edges()) sets.unite(to_index(e.u), to_index(e.v));
  std::set<std::uint32_t> roots;
  for (std::uint32_t v = 0; v < n; ++v) roots.insert(sets.find(v));
  if (roots.size() > 1)
    out.push_back({InvariantKind::Disconnected,
                   "graph has " + std::to_string(roots.size()) + " connected components"});
  return out;
}

std::string check_switch(const MetricGraph& graph, const SwitchDescriptor& d) {
  if (d.edge_a == d.edge_b) return "switch edges must differ";
  const Edge* a = nullptr;
  const Edge* b = nullptr;
  for (const auto& e : graph.edges()) {
    if (e.id == d.edge_a) a = &e;
    if (e.id == d.edge_b) b = &e;
  }
  if (a == nullptr || b == nullptr) return "switch edge id not present in graph";
  const auto pivot = std::to_string(to_index(d.pivot));
  if (!a->touches(d.pivot) || !b->touches(d.pivot))
    return "switch edges do not share pivot vertex " + pivot;
  if (a->is_loop() || b->is_loop()) return "switch edge is a loop at pivot " + pivot;
  return {};
}

MetricGraph edge_switch(const MetricGraph& graph, const SwitchDescriptor& d) {
  if (auto why = check_switch(graph, d); !why.empty()) throw GraphError(why);

  auto edges = graph.edges();
  Edge& a = edges[graph.edge_index(d.edge_a)];
  Edge& b = edges[graph.edge_index(d.edge_b)];
  // The far endpoint is replaced in place, so the stored orientation relative
  // to the pivot is unchanged and so is the sign of the phase.
  VertexId& far_a = (a.u == d.pivot) ? a.v : a.u;
  VertexId& far_b = (b.u == d.pivot) ? b.v : b.u;
  std::swap(far_a, far_b);
  return graph.with_edges(std::move(edges));
}

namespace {

bool hit_total(std::vector<Edge>& edges, std::size_t idx, double length_m, double target_total) {
  auto total_with = [&](double len) {
    edges[idx].length_m = len;
    double t = 0.0;
    for (const auto& e : edges) t += e.length_m;
    return t;
  };
  constexpr int kMaxNudges = 64;
  double candidate = length_m;
  double total = total_with(candidate);
  for (int i = 0; i < 4 && total != target_total; ++i) {
    candidate += target_total - total;
    total = total_with(candidate);
  }
  for (int i = 0; i < kMaxNudges && total != target_total; ++i) {
    candidate = std::nextafter(candidate, total < target_total ? std::numeric_limits<double>::infinity()
                                                                : -std::numeric_limits<double>::infinity());
    total = total_with(candidate);
  }
  return total == target_total && candidate > 0.0;
}

}  // namespace

MetricGraph set_length_preserving_total(const MetricGraph& graph, EdgeId id, double length_m,
                                        double target_total, std::optional<EdgeId> helper) {
  const auto idx = graph.edge_index(id);
  auto edges = graph.edges();
  if (hit_total(edges, idx, length_m, target_total)) return graph.with_edges(std::move(edges));
  if (helper && *helper != id) {
    const auto h = graph.edge_index(*helper);
    const double base = edges[h].length_m;
    constexpr int kHelperSteps = 16;
    for (int step = 1; step <= kHelperSteps; ++step) {
      for (double dir : {1.0, -1.0}) {
        double len = base;
        for (int i = 0; i < step; ++i) len = std::nextafter(len, dir * std::numeric_limits<double>::infinity());
        edges[h].length_m = len;
        if (hit_total(edges, idx, length_m, target_total)) return graph.with_edges(std::move(edges));
      }
    }
  }
  throw GraphError("cannot set edge " + std::to_string(to_index(id)) +
                   " length while preserving the total length exactly");
}

MetricGraph transfer_length(const MetricGraph& graph, EdgeId from_edge, EdgeId to_edge, double delta) {
  if (from_edge == to_edge) throw GraphError("transfer_length needs two distinct edges");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw GraphError("transfer delta must be finite and >= 0");
  const auto& from = graph.edge(from_edge);
  const auto& to = graph.edge(to_edge);
  if (delta >= from.length_m)
    throw GraphError("transfer of " + std::to_string(delta) + " m would leave edge " +
                     std::to_string(to_index(from_edge)) + " with non-positive length");
  if (delta == 0.0) return graph;

  const double target = graph.total_length();
  auto edges = graph.edges();
  edges[graph.edge_index(to_edge)].length_m = to.length_m + delta;
  const auto grown = graph.with_edges(std::move(edges));
  return set_length_preserving_total(grown, from_edge, from.length_m - delta, target, to_edge);
}

std::vector<CanonicalEdge> canonical_edges(const MetricGraph& graph) {
  std::vector<CanonicalEdge> out;
  out.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) {
    auto lo = to_index(e.u);
    auto hi = to_index(e.v);
    double phase = e.phase_per_m;
    if (lo > hi) {
      std::swap(lo, hi);
      phase = -phase;
    } else if (lo == hi) {
      phase = std::abs(phase);
    }
    out.emplace_back(lo, hi, e.length_m, phase);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MetricGraph scale_phases(const MetricGraph& graph, double factor) {
  auto edges = graph.edges();
  for (auto& e : edges) e.phase_per_m *= factor;
  return graph.with_edges(std::move(edges));
}

}  // namespace qgraph
