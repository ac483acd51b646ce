#include "qgraph/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qgraph/presets.hpp"

namespace qgraph {

using nlohmann::json;

namespace {

template <typename T>
T require(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key)) throw GraphFileError(std::string(where) + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw GraphFileError(std::string(where) + ": field '" + key + "' has the wrong type");
  }
}

std::uint32_t non_negative(const json& obj, const char* key, const char* where) {
  const auto value = require<long long>(obj, key, where);
  if (value < 0 || value > 0xffffffffLL)
    throw GraphFileError(std::string(where) + ": field '" + key + "' must be a non-negative integer");
  return static_cast<std::uint32_t>(value);
}

}  // namespace

GraphDocument parse_graph_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphFileError(std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw GraphFileError("graph file must be a JSON object");
  const auto version = require<int>(root, "version", "graph file");
  if (version != kGraphFileVersion)
    throw GraphFileError("unsupported graph file version " + std::to_string(version));

  const auto vertices = require<std::vector<long long>>(root, "vertices", "graph file");
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] != static_cast<long long>(i))
      throw GraphFileError("vertices must be listed as 0..V-1 in order");

  if (!root.contains("edges") || !root["edges"].is_array()) throw GraphFileError("graph file: 'edges' must be an array");
  std::vector<Edge> edges;
  for (const auto& e : root["edges"]) {
    if (!e.is_object()) throw GraphFileError("graph file: every edge must be an object");
    Edge edge;
    edge.id = EdgeId{non_negative(e, "id", "edge")};
    edge.u = VertexId{non_negative(e, "u", "edge")};
    edge.v = VertexId{non_negative(e, "v", "edge")};
    edge.length_m = require<double>(e, "length_m", "edge");
    edge.phase_per_m = e.contains("phase_per_m") ? require<double>(e, "phase_per_m", "edge") : 0.0;
    edges.push_back(edge);
  }

  GraphDocument doc;
  doc.graph = MetricGraph(static_cast<std::uint32_t>(vertices.size()), std::move(edges));
  if (root.contains("metadata")) {
    const auto& meta = root["metadata"];
    if (!meta.is_object()) throw GraphFileError("graph file: 'metadata' must be an object");
    doc.metadata_json = meta.dump();
    if (meta.contains("name") && meta["name"].is_string()) doc.name = meta["name"].get<std::string>();
    if (meta.contains("switch")) {
      const auto& sw = meta["switch"];
      const auto ids = require<std::vector<long long>>(sw, "edges", "metadata.switch");
      if (ids.size() != 2 || ids[0] < 0 || ids[1] < 0)
        throw GraphFileError("metadata.switch.edges must hold two edge ids");
      doc.switch_descriptor = SwitchDescriptor{VertexId{non_negative(sw, "pivot", "metadata.switch")},
                                               EdgeId{static_cast<std::uint32_t>(ids[0])},
                                               EdgeId{static_cast<std::uint32_t>(ids[1])}};
    }
    if (meta.contains("window_rad_per_m")) {
      const auto w = require<std::vector<double>>(meta, "window_rad_per_m", "metadata");
      if (w.size() != 2) throw GraphFileError("metadata.window_rad_per_m must hold two numbers");
      doc.window = KWindow{w[0], w[1]};
    }
  }
  return doc;
}

GraphDocument load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GraphFileError("cannot open graph file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_json(buffer.str());
}

std::string graph_to_json(const GraphDocument& doc) {
  json root;
  root["version"] = kGraphFileVersion;
  json vertices = json::array();
  for (std::uint32_t v = 0; v < doc.graph.vertex_count(); ++v) vertices.push_back(v);
  root["vertices"] = vertices;
  json edges = json::array();
  for (const auto& e : doc.graph.edges()) {
    edges.push_back({{"id", to_index(e.id)},
                     {"u", to_index(e.u)},
                     {"v", to_index(e.v)},
                     {"length_m", e.length_m},
                     {"phase_per_m", e.phase_per_m}});
  }
  root["edges"] = edges;
  json meta = json::parse(doc.metadata_json.empty() ? "{}" : doc.metadata_json);
  if (!doc.name.empty()) meta["name"] = doc.name;
  if (doc.switch_descriptor) {
    meta["switch"] = {{"pivot", to_index(doc.switch_descriptor->pivot)},
                      {"edges", {to_index(doc.switch_descriptor->edge_a), to_index(doc.switch_descriptor->edge_b)}}};
  }
  if (doc.window) meta["window_rad_per_m"] = {doc.window->k_min, doc.window->k_max};
  root["metadata"] = meta;
  return root.dump(2) + "\n";
}

void save_graph_file(const std::filesystem::path& path, const GraphDocument& doc) {
  std::ofstream out(path);
  if (!out) throw GraphFileError("cannot write graph file " + path.string());
  out << graph_to_json(doc);
}

GraphDocument preset_document(const std::string& preset_name) {
  const auto p = preset(preset_name);
  GraphDocument doc;
  doc.graph = p.graph();
  doc.name = p.name;
  doc.switch_descriptor = p.sweep.switch_descriptor;
  json meta;
  meta["preset"] = p.name;
  meta["description"] = p.description;
  meta["sweep"] = {{"grow_edge", to_index(p.sweep.grow_edge)},
                   {"shrink_edge", to_index(p.sweep.shrink_edge)},
                   {"step_delta_m", p.sweep.step_delta},
                   {"step_count", p.sweep.step_count}};
  doc.window = p.sweep.solver.window;
  doc.metadata_json = meta.dump();
  return doc;
}

}  // namespace qgraph
