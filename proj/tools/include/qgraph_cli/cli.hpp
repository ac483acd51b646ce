#pragma once

// qgraph command-line front end. Exit codes: 0 ok, 1 degraded result,
// 2 usage or input error.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qgraph/graph_io.hpp"
#include "qgraph/units.hpp"

namespace qgraph::cli {

enum ExitCode : int { kOk = 0, kDegraded = 1, kUsage = 2 };

struct CommandOutcome {
  int exit_code = kOk;
  std::string summary;
  std::vector<std::filesystem::path> files;
};

/// "a:b" in GHz. Throws std::invalid_argument.
KWindow parse_window_ghz(const std::string& text);

/// A path, or "preset:<name>".
GraphDocument load_graph_source(const std::string& source);

CommandOutcome cmd_validate(const std::string& graph_source);

struct SolveOptions {
  std::optional<KWindow> window;
  std::optional<std::filesystem::path> out_csv;
  /// 0-based level to delete before the completeness check.
  std::optional<int> drop_level;
};
CommandOutcome cmd_solve(const std::string& graph_source, const SolveOptions& options);

struct CompareOptions {
  std::optional<KWindow> window;
  std::optional<std::uint32_t> pivot;
  std::vector<std::uint32_t> edges;
  std::filesystem::path out_dir = "compare_out";
  /// 0-based level of the after spectrum to delete.
  std::optional<int> drop_level;
};
CommandOutcome cmd_compare(const std::string& graph_source, const CompareOptions& options);

struct CampaignOptions {
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
};
CommandOutcome cmd_campaign(const std::filesystem::path& manifest, const CampaignOptions& options);

CommandOutcome cmd_fit_xi(const std::filesystem::path& spacings_csv, const std::optional<std::filesystem::path>& out_csv);

CommandOutcome cmd_preset_list();
CommandOutcome cmd_preset_dump(const std::string& name, const std::optional<std::filesystem::path>& out);

/// Worker count: explicit value, else QGRAPH_WORKERS, else `fallback`, else
/// the hardware concurrency.
int resolve_workers(std::optional<int> explicit_workers, int fallback = 0);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgraph::cli
