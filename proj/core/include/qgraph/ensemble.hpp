#pragma once

// Configuration ensembles (phase-shifter sweeps, seeded length jitter) and
// the parallel campaign runner.
//
// Workers share nothing mutable: each solves whole before/after pairs and
// writes into its own result slot. Aggregation is a fold over pairs in
// configuration order, so results do not depend on the worker count.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qgraph/counting.hpp"
#include "qgraph/level_stats.hpp"
#include "qgraph/sweep.hpp"

namespace qgraph {

struct ConfigurationPair {
  int index = 0;
  std::string source;
  MetricGraph before;
  MetricGraph after;
  SolverConfig solver{};
};

/// Configuration i = transfer_length(base, shrink, grow, i * step_delta),
/// paired with its edge-switch image, for i = 0..step_count.
std::vector<ConfigurationPair> generate_configurations(const SweepSpec& spec);

/// `count` graphs whose edge lengths are the base lengths scaled by
/// (1 + jitter * u), u uniform in [-1, 1), except `compensate_edge`, which
/// absorbs the difference so total_length() is bit-identical to the base.
/// Deterministic for a fixed seed.
std::vector<MetricGraph> randomized_ensemble(const MetricGraph& base, int count, double length_jitter,
                                             std::uint64_t seed, EdgeId compensate_edge);

struct Provenance {
  std::string name;
  std::vector<std::string> sources;
  std::uint64_t seed = 0;
  double length_jitter = 0.0;
  std::string mode = "sweep";
};

struct CampaignPlan {
  std::vector<ConfigurationPair> pairs;
  Provenance provenance;
};

/// All sweeps concatenated; pair indices run over the combined list.
CampaignPlan plan_from_sweeps(const std::vector<SweepSpec>& sweeps, std::string name = {});

/// `count` jittered copies of the sweep's base graph (shrink_edge
/// compensates), each paired with its switch image, solved over `window`.
CampaignPlan plan_randomized(const SweepSpec& spec, int count, double length_jitter, std::uint64_t seed,
                             KWindow window, std::string name = {});

struct PairResult {
  int index = 0;
  std::string source;
  Spectrum before;
  Spectrum after;
  ShiftDistribution shift;
  InterlacingReport interlacing;
  bool degraded = false;
  std::string error;
};

struct CampaignResult {
  std::vector<PairResult> pairs;
  /// Measure-weighted average over non-degraded pairs.
  ShiftDistribution pooled_shift;
  /// Standard deviation across pairs / sqrt(pairs), per shift value.
  std::map<int, double> shift_std_error;
  SpacingSample pooled_spacings;
  int levels_before_total = 0;
  int levels_after_total = 0;
  bool degraded = false;
  std::vector<int> degraded_pairs;
  Provenance provenance;

  int max_interlacing_degree() const;
};

/// Solves every pair with `workers` threads (>= 1).
CampaignResult run_campaign(const CampaignPlan& plan, int workers);
CampaignResult run_campaign(const SweepSpec& spec, int workers);

/// Recomputes the aggregates of `result` from its pairs.
void aggregate_campaign(CampaignResult& result);

}  // namespace qgraph
