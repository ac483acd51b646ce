#pragma once

// Campaign manifest files and campaign output directories.
//
//   {
//     "version": 1,
//     "name": "goe",
//     "sources": [{"preset": "goe_a"}, {"preset": "goe_b"}],
//     "ensemble": {"mode": "sweep"},
//     "window_ghz": [0.01, 2.5],
//     "seed": 1,
//     "output_dir": "out/goe"
//   }
//
// A source is either {"preset": name} or {"graph": path, "switch": {...},
// "sweep": {...}}. Random ensembles use {"mode": "random", "count": n,
// "length_jitter": x} with a single source; their window may be given as
// "window_weyl_levels": n (k_max = n pi / L). Optional "solver" overrides
// SolverConfig fields.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/ensemble.hpp"

namespace qgraph {

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CampaignManifest {
  CampaignPlan plan;
  std::filesystem::path output_dir;
  /// 0 when the manifest does not set a worker count.
  int workers = 0;
  /// Manifest with keys sorted, without workers and output_dir.
  std::string canonical_json;
  std::uint64_t content_hash = 0;
};

struct ManifestOverrides {
  std::optional<std::uint64_t> seed;
};

/// Relative paths inside the manifest resolve against `base_dir`.
CampaignManifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir,
                                const ManifestOverrides& overrides = {});
CampaignManifest load_manifest(const std::filesystem::path& path, const ManifestOverrides& overrides = {});

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);

/// Writes spectra/, shift_distribution.csv, spacing_histogram.csv,
/// spacings.csv, interlacing.csv and manifest_echo.json; returns the paths.
std::vector<std::filesystem::path> write_campaign_outputs(const CampaignResult& result,
                                                          const CampaignManifest& manifest,
                                                          const std::filesystem::path& dir);

}  // namespace qgraph
