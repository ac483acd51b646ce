#include "qgraph/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qgraph/csv.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/presets.hpp"

namespace qgraph {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::vector<double> pair_of_numbers(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ManifestError(std::string("'") + key + "' must be a two-number array");
  return {j[0].get<double>(), j[1].get<double>()};
}

void apply_solver_overrides(const json& s, SolverConfig& config) {
  if (!s.is_object()) throw ManifestError("'solver' must be an object");
  for (const auto& [key, value] : s.items()) {
    if (!value.is_number()) throw ManifestError("solver." + key + " must be a number");
    if (key == "scan_step")
      config.scan_step = value.get<double>();
    else if (key == "root_tolerance")
      config.root_tolerance = value.get<double>();
    else if (key == "residual_threshold")
      config.residual_threshold = value.get<double>();
    else if (key == "max_refinement_iterations")
      config.max_refinement_iterations = value.get<int>();
    else if (key == "weyl_bound")
      config.weyl_bound = value.get<double>();
    else
      throw ManifestError("unknown solver field '" + key + "'");
  }
}

SweepSpec source_sweep(const json& src, const std::filesystem::path& base_dir) {
  if (!src.is_object()) throw ManifestError("every source must be an object");
  if (src.contains("preset")) {
    try {
      return preset(src["preset"].get<std::string>()).sweep;
    } catch (const std::exception& e) {
      throw ManifestError(e.what());
    }
  }
  if (!src.contains("graph")) throw ManifestError("source needs 'preset' or 'graph'");
  auto path = std::filesystem::path(src["graph"].get<std::string>());
  if (path.is_relative()) path = base_dir / path;
  GraphDocument doc;
  try {
    doc = load_graph_file(path);
  } catch (const std::exception& e) {
    throw ManifestError(e.what());
  }
  SweepSpec spec;
  spec.name = doc.name.empty() ? path.stem().string() : doc.name;
  spec.base = doc.graph;
  if (src.contains("switch")) {
    const auto& sw = src["switch"];
    const auto edges = sw.at("edges").get<std::vector<std::uint32_t>>();
    if (edges.size() != 2) throw ManifestError("switch.edges must hold two edge ids");
    spec.switch_descriptor = {VertexId{sw.at("pivot").get<std::uint32_t>()}, EdgeId{edges[0]}, EdgeId{edges[1]}};
  } else if (doc.switch_descriptor) {
    spec.switch_descriptor = *doc.switch_descriptor;
  } else {
    throw ManifestError("graph source " + path.string() + " has no switch");
  }
  if (!src.contains("sweep")) throw ManifestError("graph source " + path.string() + " needs a 'sweep' object");
  const auto& sw = src["sweep"];
  spec.grow_edge = EdgeId{sw.at("grow_edge").get<std::uint32_t>()};
  spec.shrink_edge = EdgeId{sw.at("shrink_edge").get<std::uint32_t>()};
  spec.step_delta = sw.at("step_delta_m").get<double>();
  spec.step_count = sw.at("step_count").get<int>();
  spec.solver.window = doc.window.value_or(KWindow::from_ghz(0.01, 2.5));
  return spec;
}

}  // namespace

CampaignManifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir,
                                const ManifestOverrides& overrides) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!root.is_object() || root.empty()) throw ManifestError("manifest is empty");
  if (overrides.seed) root["seed"] = *overrides.seed;

  try {
    if (root.value("version", 1) != 1) throw ManifestError("unsupported manifest version");
    if (!root.contains("sources") || !root["sources"].is_array() || root["sources"].empty())
      throw ManifestError("manifest needs a non-empty 'sources' array");

    CampaignManifest m;
    const auto name = root.value("name", std::string("campaign"));
    std::vector<SweepSpec> sweeps;
    for (const auto& src : root["sources"]) sweeps.push_back(source_sweep(src, base_dir));

    std::optional<KWindow> window;
    if (root.contains("window_ghz")) {
      const auto w = pair_of_numbers(root["window_ghz"], "window_ghz");
      window = KWindow::from_ghz(w[0], w[1]);
    } else if (root.contains("window_rad_per_m")) {
      const auto w = pair_of_numbers(root["window_rad_per_m"], "window_rad_per_m");
      window = KWindow{w[0], w[1]};
    } else if (root.contains("window_weyl_levels")) {
      const double levels = root["window_weyl_levels"].get<double>();
      window = KWindow{0.0, levels * std::numbers::pi / sweeps.front().base.total_length()};
    }
    for (auto& s : sweeps) {
      if (window) s.solver.window = *window;
      if (root.contains("solver")) apply_solver_overrides(root["solver"], s.solver);
    }

    const auto seed = root.value("seed", std::uint64_t{0});
    const json ensemble = root.value("ensemble", json{{"mode", "sweep"}});
    const auto mode = ensemble.value("mode", std::string("sweep"));
    if (mode == "sweep") {
      m.plan = plan_from_sweeps(sweeps, name);
      m.plan.provenance.seed = seed;
    } else if (mode == "random") {
      if (sweeps.size() != 1) throw ManifestError("random ensembles take exactly one source");
      const int count = ensemble.at("count").get<int>();
      const double jitter = ensemble.at("length_jitter").get<double>();
      m.plan = plan_randomized(sweeps.front(), count, jitter, seed, sweeps.front().solver.window, name);
    } else {
      throw ManifestError("unknown ensemble mode '" + mode + "'");
    }

    m.workers = root.value("workers", 0);
    if (root.contains("output_dir")) {
      auto out = std::filesystem::path(root["output_dir"].get<std::string>());
      m.output_dir = out.is_relative() ? base_dir / out : out;
    }
    json canonical = root;
    canonical.erase("workers");
    canonical.erase("output_dir");
    m.canonical_json = canonical.dump();
    m.content_hash = fnv1a64(m.canonical_json);
    return m;
  } catch (const ManifestError&) {
    throw;
  } catch (const std::exception& e) {
    throw ManifestError(std::string("invalid manifest: ") + e.what());
  }
}

CampaignManifest load_manifest(const std::filesystem::path& path, const ManifestOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open manifest " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str(), path.has_parent_path() ? path.parent_path() : std::filesystem::path("."),
                        overrides);
}

std::vector<std::filesystem::path> write_campaign_outputs(const CampaignResult& result,
                                                          const CampaignManifest& manifest,
                                                          const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::filesystem::path& p, const std::string& text) {
    write_text(p, text);
    written.push_back(p);
  };

  std::vector<InterlacingRow> rows;
  for (const auto& p : result.pairs) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "pair_%03d", p.index);
    emit(dir / "spectra" / (std::string(stem) + "_before.csv"), spectrum_csv(p.before));
    emit(dir / "spectra" / (std::string(stem) + "_after.csv"), spectrum_csv(p.after));
    rows.push_back({p.index, p.interlacing.degree, p.interlacing.violations});
  }
  emit(dir / "shift_distribution.csv", shift_distribution_csv(result.pooled_shift, result.shift_std_error));
  emit(dir / "interlacing.csv", interlacing_csv(rows));
  emit(dir / "spacings.csv", spacings_csv(result.pooled_spacings));

  double xi = 0.0;
  if (result.pooled_spacings.size() >= 200) xi = fit_xi(result.pooled_spacings).xi;
  emit(dir / "spacing_histogram.csv", spacing_histogram_csv(spacing_histogram(result.pooled_spacings), xi));

  json echo = manifest.canonical_json.empty() ? json::object() : json::parse(manifest.canonical_json);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(manifest.content_hash));
  json run;
  run["content_hash_fnv1a64"] = hash;
  run["pairs"] = result.pairs.size();
  run["degraded"] = result.degraded;
  run["degraded_pairs"] = result.degraded_pairs;
  run["levels_before_total"] = result.levels_before_total;
  run["levels_after_total"] = result.levels_after_total;
  run["seed"] = result.provenance.seed;
  run["mode"] = result.provenance.mode;
  run["sources"] = result.provenance.sources;
  emit(dir / "manifest_echo.json", json{{"manifest", echo}, {"run", run}}.dump(2) + "\n");
  return written;
}

}  // namespace qgraph
