#pragma once

// Metric graphs with Neumann (standard) vertex conditions and optional
// per-edge magnetic vector potential.
//
// A MetricGraph is an immutable value: every transformation returns a new
// graph. Vertices are densely indexed 0..V-1; edges carry their own ids,
// which need not be dense (the presets use the cable numbers 1..6).

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace qgraph {

enum class VertexId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};

constexpr std::uint32_t to_index(VertexId v) noexcept { return static_cast<std::uint32_t>(v); }
constexpr std::uint32_t to_index(EdgeId e) noexcept { return static_cast<std::uint32_t>(e); }

/// An undirected edge. The magnetic phase is A along the edge, with the sign
/// taken in the direction u -> v.
struct Edge {
  EdgeId id{};
  VertexId u{};
  VertexId v{};
  double length_m = 0.0;
  double phase_per_m = 0.0;

  bool is_loop() const noexcept { return u == v; }
  bool touches(VertexId w) const noexcept { return u == w || v == w; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class BoundaryCondition { Neumann };

/// Thrown for caller misuse of graph operations (bad switch descriptors,
/// degenerate length transfers, unknown edge ids).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MetricGraph {
 public:
  MetricGraph() = default;
  MetricGraph(std::uint32_t vertex_count, std::vector<Edge> edges);

  std::uint32_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  BoundaryCondition boundary_condition() const noexcept { return BoundaryCondition::Neumann; }

  /// Sum of optical lengths, accumulated in edge order.
  double total_length() const noexcept;

  /// Number of half-edges at v (a loop counts twice).
  std::uint32_t degree(VertexId v) const noexcept;

  bool has_magnetic_phase() const noexcept;

  /// Position of the edge with the given id; throws GraphError if absent.
  std::size_t edge_index(EdgeId id) const;
  const Edge& edge(EdgeId id) const { return edges_[edge_index(id)]; }

  MetricGraph with_edges(std::vector<Edge> edges) const {
    return MetricGraph(vertex_count_, std::move(edges));
  }

 private:
  std::uint32_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

enum class InvariantKind {
  NonPositiveLength,
  NonFiniteValue,
  VertexOutOfRange,
  DuplicateEdgeId,
  IsolatedVertex,
  Disconnected,
  Empty,
};

struct Violation {
  InvariantKind kind;
  std::string message;
};

std::string to_string(InvariantKind kind);

/// Checks every MetricGraph invariant; an empty result means the graph is valid.
std::vector<Violation> validate(const MetricGraph& graph);

struct SwitchDescriptor {
  VertexId pivot{};
  EdgeId edge_a{};
  EdgeId edge_b{};

  friend bool operator==(const SwitchDescriptor&, const SwitchDescriptor&) = default;
};

/// Returns the reason a descriptor is unusable on this graph, or an empty
/// string if it is valid.
std::string check_switch(const MetricGraph& graph, const SwitchDescriptor& d);

/// Exchanges the non-pivot endpoints of edge_a and edge_b. Each edge keeps its
/// length, and its phase keeps its sign relative to the pivot->far direction.
MetricGraph edge_switch(const MetricGraph& graph, const SwitchDescriptor& d);

/// Lengthens `to_edge` by delta and shortens `from_edge` by the same amount.
/// total_length() of the result is bit-identical to the input's.
MetricGraph transfer_length(const MetricGraph& graph, EdgeId from_edge, EdgeId to_edge, double delta);

/// Sets edge `id` to approximately `length_m`, then nudges it by whole ulps
/// until total_length() equals `target_total` exactly. Rounding in the
/// ordered sum can skip the target; then `helper` (if given) is moved by a few
/// ulps and the search repeated. Throws if no nearby value achieves it.
MetricGraph set_length_preserving_total(const MetricGraph& graph, EdgeId id, double length_m,
                                        double target_total, std::optional<EdgeId> helper = std::nullopt);

/// Sorted (min endpoint, max endpoint, length, oriented phase) tuples; two
/// graphs with equal canonical edges are the same metric graph up to edge
/// labels.
using CanonicalEdge = std::tuple<std::uint32_t, std::uint32_t, double, double>;
std::vector<CanonicalEdge> canonical_edges(const MetricGraph& graph);

/// Copy of the graph with every magnetic phase multiplied by `factor`.
MetricGraph scale_phases(const MetricGraph& graph, double factor);

}  // namespace qgraph
