#include "qgraph_cli/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qgraph/counting.hpp"
#include "qgraph/csv.hpp"
#include "qgraph/ensemble.hpp"
#include "qgraph/level_stats.hpp"
#include "qgraph/manifest.hpp"
#include "qgraph/presets.hpp"
#include "qgraph/solver.hpp"

namespace qgraph::cli {

namespace {

// Thrown for bad input; mapped to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::string window_text(const KWindow& w) {
  return "[" + fmt("%.6g", w.k_min) + ", " + fmt("%.6g", w.k_max) + "] rad/m (" + fmt("%.6g", k_to_ghz(w.k_min)) +
         "-" + fmt("%.6g", k_to_ghz(w.k_max)) + " GHz)";
}

void require_valid(const MetricGraph& graph) {
  const auto violations = validate(graph);
  if (violations.empty()) return;
  std::string text = "graph is invalid:";
  for (const auto& v : violations) text += "\n  " + v.message;
  throw UsageError(text);
}

SolverConfig solver_for(const GraphDocument& doc, const std::optional<KWindow>& window) {
  SolverConfig config;
  config.window = window.value_or(doc.window.value_or(KWindow::from_ghz(0.01, 2.5)));
  try {
    check_config(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

std::string weyl_line(const Spectrum& s) {
  const double k_lo = effective_k_min(s.window);
  const double weyl = s.total_length * (s.window.k_max - k_lo) / std::numbers::pi;
  std::ostringstream os;
  os << "found " << s.level_count() << " levels; L*dk/pi = " << fmt("%.3f", weyl) << "; exact count "
     << s.diagnostics.expected_count << "; max |N_fl| = " << fmt("%.3f", s.diagnostics.max_abs_fluctuation)
     << (s.diagnostics.complete ? "; complete" : "; INCOMPLETE");
  return os.str();
}

Spectrum apply_drop(const MetricGraph& graph, const SolverConfig& config, const Spectrum& s, int index) {
  if (index < 0 || index >= s.level_count())
    throw UsageError("--drop-level " + std::to_string(index) + " is outside 0.." + std::to_string(s.level_count() - 1));
  auto dropped = without_level(s, index);
  assess_completeness(graph, config, dropped);
  return dropped;
}

template <typename F>
CommandOutcome guarded(F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    return {kUsage, e.what(), {}};
  } catch (const GraphFileError& e) {
    return {kUsage, e.what(), {}};
  } catch (const ManifestError& e) {
    return {kUsage, e.what(), {}};
  } catch (const CsvError& e) {
    return {kUsage, e.what(), {}};
  } catch (const std::invalid_argument& e) {
    return {kUsage, e.what(), {}};
  }
}

}  // namespace

KWindow parse_window_ghz(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("window must look like a:b (GHz), got '" + text + "'");
  double lo, hi;
  try {
    lo = parse_double(text.substr(0, colon));
    hi = parse_double(text.substr(colon + 1));
  } catch (const CsvError&) {
    throw std::invalid_argument("window must look like a:b (GHz), got '" + text + "'");
  }
  if (!(lo >= 0.0) || !(hi > lo)) throw std::invalid_argument("window needs 0 <= a < b, got '" + text + "'");
  return KWindow::from_ghz(lo, hi);
}

GraphDocument load_graph_source(const std::string& source) {
  constexpr std::string_view prefix = "preset:";
  if (source.starts_with(prefix)) return preset_document(source.substr(prefix.size()));
  return load_graph_file(source);
}

CommandOutcome cmd_validate(const std::string& graph_source) {
  return guarded([&]() -> CommandOutcome {
    const auto doc = load_graph_source(graph_source);
    const auto violations = validate(doc.graph);
    std::ostringstream os;
    if (!violations.empty()) {
      os << violations.size() << " violation(s):";
      for (const auto& v : violations) os << "\n  " << v.message;
      return {kUsage, os.str(), {}};
    }
    os << "ok: " << doc.graph.vertex_count() << " vertices, " << doc.graph.edge_count()
       << " edges, total length " << format_double(doc.graph.total_length()) << " m";
    if (doc.graph.has_magnetic_phase()) os << ", magnetic phases present";
    if (doc.switch_descriptor) {
      if (auto why = check_switch(doc.graph, *doc.switch_descriptor); !why.empty()) {
        os << "\nswitch in metadata is invalid: " << why;
        return {kUsage, os.str(), {}};
      }
    }
    return {kOk, os.str(), {}};
  });
}

CommandOutcome cmd_solve(const std::string& graph_source, const SolveOptions& options) {
  return guarded([&]() -> CommandOutcome {
    const auto doc = load_graph_source(graph_source);
    require_valid(doc.graph);
    const auto config = solver_for(doc, options.window);
    auto spectrum = solve_spectrum(doc.graph, config);
    if (options.drop_level) spectrum = apply_drop(doc.graph, config, spectrum, *options.drop_level);

    CommandOutcome outcome;
    outcome.summary = "window " + window_text(config.window) + "\n" + weyl_line(spectrum);
    if (options.out_csv) {
      write_text(*options.out_csv, spectrum_csv(spectrum));
      outcome.files.push_back(*options.out_csv);
    }
    outcome.exit_code = spectrum.diagnostics.complete ? kOk : kDegraded;
    return outcome;
  });
}

CommandOutcome cmd_compare(const std::string& graph_source, const CompareOptions& options) {
  return guarded([&]() -> CommandOutcome {
    const auto doc = load_graph_source(graph_source);
    require_valid(doc.graph);
    SwitchDescriptor sw;
    if (options.pivot || !options.edges.empty()) {
      if (!options.pivot || options.edges.size() != 2) throw UsageError("--pivot needs --edges a,b (two edge ids)");
      sw = {VertexId{*options.pivot}, EdgeId{options.edges[0]}, EdgeId{options.edges[1]}};
    } else if (doc.switch_descriptor) {
      sw = *doc.switch_descriptor;
    } else {
      throw UsageError("no switch given: pass --pivot and --edges, or put one in the graph metadata");
    }
    if (auto why = check_switch(doc.graph, sw); !why.empty()) throw UsageError("invalid switch: " + why);

    const auto config = solver_for(doc, options.window);
    const auto switched = edge_switch(doc.graph, sw);
    const auto before = solve_spectrum(doc.graph, config);
    auto after = solve_spectrum(switched, config);
    if (options.drop_level) after = apply_drop(switched, config, after, *options.drop_level);

    const auto shift = shift_distribution(before, after);
    const auto report = interlacing_report(before, after);
    const auto missing = detect_missing_resonances(before, after);

    CommandOutcome outcome;
    const auto& dir = options.out_dir;
    auto emit = [&](const std::filesystem::path& p, const std::string& text) {
      write_text(p, text);
      outcome.files.push_back(p);
    };
    emit(dir / "spectrum_before.csv", spectrum_csv(before));
    emit(dir / "spectrum_after.csv", spectrum_csv(after));
    emit(dir / "counting_steps.csv", counting_steps_csv(before, after));
    emit(dir / "shift_distribution.csv", shift_distribution_csv(shift));
    emit(dir / "interlacing.csv", interlacing_csv({{0, report.degree, report.violations}}));

    std::ostringstream os;
    os << "window " << window_text(config.window) << "\n";
    os << "before: " << weyl_line(before) << "\n";
    os << "after:  " << weyl_line(after) << "\n";
    os << "P(dN):";
    for (const auto& [dn, p] : shift.mass) os << " " << dn << ":" << fmt("%.4f", p);
    os << "\ninterlacing degree " << report.degree;
    if (!missing.empty()) {
      std::string rows = "k_begin,k_first_violation,k_end,max_abs_shift,suspect,drift_before,drift_after,suspected_k,suspected_GHz\n";
      for (const auto& f : missing.flags) {
        os << "\nmissing resonance suspected in the " << to_string(f.suspect) << " spectrum near k = "
           << fmt("%.6g", f.suspected_location) << " rad/m (" << fmt("%.6g", k_to_ghz(f.suspected_location))
           << " GHz), between " << fmt("%.6g", f.k_begin) << " and " << fmt("%.6g", f.k_first_violation)
           << " rad/m; |dN| reaches " << f.max_abs_shift << " up to " << fmt("%.6g", f.k_end) << " rad/m";
        rows += format_double(f.k_begin) + "," + format_double(f.k_first_violation) + "," + format_double(f.k_end) + "," + std::to_string(f.max_abs_shift) + "," +
                to_string(f.suspect) + "," + format_double(f.drift_before) + "," + format_double(f.drift_after) + "," +
                format_double(f.suspected_location) + "," + format_double(k_to_ghz(f.suspected_location)) + "\n";
      }
      emit(dir / "missing_resonances.csv", rows);
    }
    outcome.summary = os.str();
    const bool degraded = !before.diagnostics.complete || !after.diagnostics.complete || report.degree > 1;
    outcome.exit_code = degraded ? kDegraded : kOk;
    return outcome;
  });
}

int resolve_workers(std::optional<int> explicit_workers, int fallback) {
  if (explicit_workers) {
    if (*explicit_workers < 1) throw UsageError("--workers must be >= 1");
    return *explicit_workers;
  }
  if (const char* env = std::getenv("QGRAPH_WORKERS"); env && *env) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(env, &used);
      if (used == std::string(env).size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("QGRAPH_WORKERS must be a positive integer, got '") + env + "'");
  }
  if (fallback >= 1) return fallback;
  return std::max(1u, std::thread::hardware_concurrency());
}

CommandOutcome cmd_campaign(const std::filesystem::path& manifest_path, const CampaignOptions& options) {
  return guarded([&]() -> CommandOutcome {
    ManifestOverrides overrides;
    overrides.seed = options.seed;
    auto manifest = load_manifest(manifest_path, overrides);
    const int workers = resolve_workers(options.workers, manifest.workers);
    const auto dir = options.out_dir.value_or(manifest.output_dir.empty() ? std::filesystem::path("campaign_out")
                                                                          : manifest.output_dir);
    const auto result = run_campaign(manifest.plan, workers);

    CommandOutcome outcome;
    outcome.files = write_campaign_outputs(result, manifest, dir);

    std::ostringstream os;
    os << "campaign " << result.provenance.name << ": " << result.pairs.size() << " pairs, " << workers
       << " worker(s)\n";
    os << "levels: " << result.levels_before_total << " before, " << result.levels_after_total << " after\n";
    os << "max interlacing degree " << result.max_interlacing_degree() << "\n";
    os << "P(dN):";
    for (const auto& [dn, p] : result.pooled_shift.mass) {
      const auto se = result.shift_std_error.find(dn);
      os << " " << dn << ":" << fmt("%.4f", p) << "+-" << fmt("%.4f", se == result.shift_std_error.end() ? 0.0 : se->second);
    }
    const auto& sp = result.pooled_spacings;
    if (!sp.empty()) {
      os << "\nspacings: " << sp.size() << ", mean " << fmt("%.4f", sp.mean()) << ", KS(GOE) "
         << fmt("%.4f", ks_distance(sp, EnsembleClass::GOE)) << ", KS(GUE) "
         << fmt("%.4f", ks_distance(sp, EnsembleClass::GUE));
      if (sp.size() >= 200) {
        const auto fit = fit_xi(sp);
        os << ", xi " << fmt("%.3f", fit.xi) << " +- " << fmt("%.3f", fit.xi_uncertainty);
      }
    }
    if (result.degraded) {
      os << "\nDEGRADED pairs:";
      for (int i : result.degraded_pairs) os << " " << i;
    }
    os << "\noutputs in " << dir.string();
    outcome.summary = os.str();
    outcome.exit_code = result.degraded ? kDegraded : kOk;
    return outcome;
  });
}

CommandOutcome cmd_fit_xi(const std::filesystem::path& spacings_csv,
                          const std::optional<std::filesystem::path>& out_csv) {
  return guarded([&]() -> CommandOutcome {
    const auto table = read_csv(spacings_csv);
    SpacingSample sample;
    const auto col = table.column("s");
    for (const auto& row : table.rows) sample.spacings.push_back(parse_double(row.at(col)));
    if (sample.size() < 200)
      throw UsageError("fit-xi needs at least 200 spacings, file has " + std::to_string(sample.size()));
    const auto fit = fit_xi(sample);
    CommandOutcome outcome;
    std::ostringstream os;
    os << "xi = " << fmt("%.4f", fit.xi) << " +- " << fmt("%.4f", fit.xi_uncertainty) << " (" << sample.size()
       << " spacings, " << fit.bins << " bins, residual " << fmt("%.4g", fit.objective) << ")\n";
    os << "KS(GOE) " << fmt("%.4f", ks_distance(sample, EnsembleClass::GOE)) << ", KS(GUE) "
       << fmt("%.4f", ks_distance(sample, EnsembleClass::GUE));
    const auto out = out_csv.value_or(spacings_csv.parent_path() / "spacing_histogram.csv");
    write_text(out, spacing_histogram_csv(spacing_histogram(sample), fit.xi));
    outcome.files.push_back(out);
    outcome.summary = os.str();
    return outcome;
  });
}

CommandOutcome cmd_preset_list() {
  std::ostringstream os;
  bool first = true;
  for (const auto& name : preset_names()) {
    if (!first) os << "\n";
    first = false;
    const auto p = preset(name);
    os << name << "  L = " << format_double(p.graph().total_length()) << " m  " << p.description;
  }
  return {kOk, os.str(), {}};
}

CommandOutcome cmd_preset_dump(const std::string& name, const std::optional<std::filesystem::path>& out) {
  return guarded([&]() -> CommandOutcome {
    const auto text = graph_to_json(preset_document(name));
    if (!out) return {kOk, text.substr(0, text.size() - 1), {}};
    write_text(*out, text);
    return {kOk, "", {*out}};
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra, interlacing and level statistics of quantum graphs"};
  app.name("qgraph");
  app.require_subcommand(1);

  std::string graph_source, manifest_path, spacings_path, window_text_arg, preset_name;
  std::string out_path;
  std::optional<int> drop_level, workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> pivot;
  std::vector<std::uint32_t> edges;

  auto* validate_cmd = app.add_subcommand("validate", "Check a graph file against the graph invariants");
  validate_cmd->add_option("graph", graph_source, "Graph JSON file or preset:<name>")->required();

  auto* solve_cmd = app.add_subcommand("solve", "Find all eigenvalues in a window");
  solve_cmd->add_option("graph", graph_source, "Graph JSON file or preset:<name>")->required();
  solve_cmd->add_option("--window-ghz", window_text_arg, "Frequency window a:b in GHz");
  solve_cmd->add_option("--out", out_path, "Spectrum CSV to write");
  solve_cmd->add_option("--drop-level", drop_level, "Delete level n (0-based) before checking completeness");

  auto* compare_cmd = app.add_subcommand("compare", "Compare spectra before and after an edge switch");
  compare_cmd->add_option("graph", graph_source, "Graph JSON file or preset:<name>")->required();
  compare_cmd->add_option("--pivot", pivot, "Switch pivot vertex");
  compare_cmd->add_option("--edges", edges, "The two switched edge ids")->delimiter(',')->expected(2);
  compare_cmd->add_option("--window-ghz", window_text_arg, "Frequency window a:b in GHz");
  compare_cmd->add_option("--out", out_path, "Output directory");
  compare_cmd->add_option("--drop-level", drop_level, "Delete level n (0-based) of the after spectrum");

  auto* campaign_cmd = app.add_subcommand("campaign", "Run a campaign manifest");
  campaign_cmd->add_option("manifest", manifest_path, "Campaign manifest JSON")->required();
  campaign_cmd->add_option("--workers", workers, "Worker threads (default: QGRAPH_WORKERS or all cores)");
  campaign_cmd->add_option("--seed", seed, "Override the manifest seed");
  campaign_cmd->add_option("--out", out_path, "Output directory (overrides the manifest)");

  auto* fit_cmd = app.add_subcommand("fit-xi", "Fit the GOE-GUE transition parameter to a spacings CSV");
  fit_cmd->add_option("spacings", spacings_path, "CSV with a column 's'")->required();
  fit_cmd->add_option("--out", out_path, "Histogram overlay CSV to write");

  auto* preset_cmd = app.add_subcommand("preset", "Built-in graphs");
  preset_cmd->require_subcommand(1);
  preset_cmd->add_subcommand("list", "List presets");
  auto* dump_cmd = preset_cmd->add_subcommand("dump", "Print a preset as a graph file");
  dump_cmd->add_option("name", preset_name, "Preset name")->required();
  dump_cmd->add_option("--out", out_path, "File to write instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto optional_path = [&]() -> std::optional<std::filesystem::path> {
    if (out_path.empty()) return std::nullopt;
    return std::filesystem::path(out_path);
  };

  CommandOutcome outcome;
  try {
    std::optional<KWindow> window;
    if (!window_text_arg.empty()) window = parse_window_ghz(window_text_arg);

    if (validate_cmd->parsed()) {
      outcome = cmd_validate(graph_source);
    } else if (solve_cmd->parsed()) {
      outcome = cmd_solve(graph_source, {window, optional_path(), drop_level});
    } else if (compare_cmd->parsed()) {
      CompareOptions o;
      o.window = window;
      o.pivot = pivot;
      o.edges = edges;
      if (!out_path.empty()) o.out_dir = out_path;
      o.drop_level = drop_level;
      outcome = cmd_compare(graph_source, o);
    } else if (campaign_cmd->parsed()) {
      outcome = cmd_campaign(manifest_path, {workers, seed, optional_path()});
    } else if (fit_cmd->parsed()) {
      outcome = cmd_fit_xi(spacings_path, optional_path());
    } else if (dump_cmd->parsed()) {
      outcome = cmd_preset_dump(preset_name, optional_path());
    } else {
      outcome = cmd_preset_list();
    }
  } catch (const UsageError& e) {
    outcome = {kUsage, e.what(), {}};
  } catch (const std::invalid_argument& e) {
    outcome = {kUsage, e.what(), {}};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  auto& stream = outcome.exit_code == kUsage ? err : out;
  if (outcome.exit_code == kUsage) stream << "error: ";
  if (!outcome.summary.empty()) stream << outcome.summary << "\n";
  for (const auto& f : outcome.files) out << "wrote " << f.string() << "\n";
  return outcome.exit_code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace qgraph::cli
