#pragma once

// JSON graph files.
//
//   {
//     "version": 1,
//     "vertices": [0, 1, 2, 3],
//     "edges": [{"id": 1, "u": 2, "v": 3, "length_m": 0.697, "phase_per_m": 0.0}, ...],
//     "metadata": {"name": "...", "switch": {"pivot": 0, "edges": [3, 5]}, ...}
//   }
//
// Doubles are written in shortest round-trip form, so load(save(g)) == g
// bit for bit. Loading does not validate: a file with a negative length
// loads, and validate() reports it.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "qgraph/graph.hpp"
#include "qgraph/sweep.hpp"
#include "qgraph/units.hpp"

namespace qgraph {

inline constexpr int kGraphFileVersion = 1;

class GraphFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphDocument {
  MetricGraph graph;
  std::string name;
  std::optional<SwitchDescriptor> switch_descriptor;
  /// metadata.window_rad_per_m, when present.
  std::optional<KWindow> window;
  /// Whole metadata object as JSON text ("{}" when absent).
  std::string metadata_json = "{}";
};

GraphDocument parse_graph_json(const std::string& text);
GraphDocument load_graph_file(const std::filesystem::path& path);

std::string graph_to_json(const GraphDocument& doc);
void save_graph_file(const std::filesystem::path& path, const GraphDocument& doc);

/// Graph document for a preset, with its switch and sweep in the metadata.
GraphDocument preset_document(const std::string& preset_name);

}  // namespace qgraph
