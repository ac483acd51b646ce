#include "qgraph/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace qgraph {

void check_sweep(const SweepSpec& spec) {
  if (auto v = validate(spec.base); !v.empty()) throw std::invalid_argument("sweep base graph invalid: " + v.front().message);
  if (spec.step_count < 1) throw std::invalid_argument("sweep step_count must be >= 1");
  if (!(spec.step_delta > 0.0)) throw std::invalid_argument("sweep step_delta must be positive");
  if (spec.grow_edge == spec.shrink_edge) throw std::invalid_argument("sweep grow and shrink edges must differ");
  const auto& shrink = spec.base.edge(spec.shrink_edge);
  (void)spec.base.edge(spec.grow_edge);
  if (!(spec.step_delta * spec.step_count < shrink.length_m))
    throw std::invalid_argument("sweep would shrink edge " + std::to_string(to_index(spec.shrink_edge)) +
                                " to a non-positive length");
  if (auto why = check_switch(spec.base, spec.switch_descriptor); !why.empty())
    throw std::invalid_argument("sweep switch invalid: " + why);
  check_config(spec.solver);
}

std::vector<ConfigurationPair> generate_configurations(const SweepSpec& spec) {
  check_sweep(spec);
  std::vector<ConfigurationPair> out;
  for (int i = 0; i <= spec.step_count; ++i) {
    ConfigurationPair pair;
    pair.index = i;
    pair.source = spec.name;
    pair.before = transfer_length(spec.base, spec.shrink_edge, spec.grow_edge, i * spec.step_delta);
    pair.after = edge_switch(pair.before, spec.switch_descriptor);
    pair.solver = spec.solver;
    out.push_back(std::move(pair));
  }
  return out;
}

namespace {

// Uniform in [-1, 1) from the raw 64-bit output, portable across standard
// libraries (std::uniform_real_distribution is implementation-defined).
double symmetric_unit(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

}  // namespace

std::vector<MetricGraph> randomized_ensemble(const MetricGraph& base, int count, double length_jitter,
                                             std::uint64_t seed, EdgeId compensate_edge) {
  if (count < 1) throw std::invalid_argument("ensemble count must be >= 1");
  if (!(length_jitter >= 0.0) || length_jitter >= 1.0)
    throw std::invalid_argument("length jitter must lie in [0, 1)");
  if (count > 1 && length_jitter == 0.0)
    throw std::invalid_argument("zero jitter cannot give pairwise-distinct configurations");
  const auto comp_index = base.edge_index(compensate_edge);
  const double total = base.total_length();

  std::mt19937_64 rng(seed);
  std::vector<MetricGraph> out;
  std::set<std::vector<double>> seen;
  if (length_jitter == 0.0) out.push_back(base);
  for (int i = static_cast<int>(out.size()); i < count; ++i) {
    auto edges = base.edges();
    double others = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (e == comp_index) continue;
      edges[e].length_m *= 1.0 + length_jitter * symmetric_unit(rng);
      others += edges[e].length_m;
    }
    const double remainder = total - others;
    if (!(remainder > 0.0)) throw std::invalid_argument("length jitter leaves no length for the compensating edge");
    const auto helper = edges[comp_index == 0 ? 1 : 0].id;
    auto graph =
        set_length_preserving_total(base.with_edges(std::move(edges)), compensate_edge, remainder, total, helper);

    std::vector<double> lengths;
    for (const auto& e : graph.edges()) lengths.push_back(e.length_m);
    if (!seen.insert(lengths).second) throw std::invalid_argument("randomized ensemble produced a repeated configuration");
    out.push_back(std::move(graph));
  }
  return out;
}

CampaignPlan plan_from_sweeps(const std::vector<SweepSpec>& sweeps, std::string name) {
  if (sweeps.empty()) throw std::invalid_argument("campaign needs at least one sweep");
  CampaignPlan plan;
  plan.provenance.name = std::move(name);
  plan.provenance.mode = "sweep";
  int next = 0;
  for (const auto& s : sweeps) {
    plan.provenance.sources.push_back(s.name);
    for (auto& pair : generate_configurations(s)) {
      pair.index = next++;
      plan.pairs.push_back(std::move(pair));
    }
  }
  return plan;
}

CampaignPlan plan_randomized(const SweepSpec& spec, int count, double length_jitter, std::uint64_t seed,
                             KWindow window, std::string name) {
  if (auto why = check_switch(spec.base, spec.switch_descriptor); !why.empty())
    throw std::invalid_argument("switch invalid: " + why);
  SolverConfig solver = spec.solver;
  solver.window = window;
  check_config(solver);

  CampaignPlan plan;
  plan.provenance = {std::move(name), {spec.name}, seed, length_jitter, "random"};
  const auto graphs = randomized_ensemble(spec.base, count, length_jitter, seed, spec.shrink_edge);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    ConfigurationPair pair;
    pair.index = static_cast<int>(i);
    pair.source = spec.name;
    pair.before = graphs[i];
    pair.after = edge_switch(graphs[i], spec.switch_descriptor);
    pair.solver = solver;
    plan.pairs.push_back(std::move(pair));
  }
  return plan;
}

int CampaignResult::max_interlacing_degree() const {
  int worst = 0;
  for (const auto& p : pairs)
    if (!p.degraded) worst = std::max(worst, p.interlacing.degree);
  return worst;
}

namespace {

PairResult solve_pair(const ConfigurationPair& pair) {
  PairResult r;
  r.index = pair.index;
  r.source = pair.source;
  try {
    r.before = solve_spectrum(pair.before, pair.solver);
    r.after = solve_spectrum(pair.after, pair.solver);
    r.degraded = !r.before.diagnostics.complete || !r.after.diagnostics.complete;
    r.shift = shift_distribution(r.before, r.after);
    if (!r.before.wavenumbers.empty() && !r.after.wavenumbers.empty())
      r.interlacing = interlacing_report(r.before, r.after);
  } catch (const std::exception& e) {
    r.degraded = true;
    r.error = e.what();
  }
  return r;
}

}  // namespace

void aggregate_campaign(CampaignResult& result) {
  result.pooled_shift = {};
  result.shift_std_error.clear();
  result.degraded_pairs.clear();
  result.levels_before_total = 0;
  result.levels_after_total = 0;

  std::vector<const PairResult*> good;
  for (const auto& p : result.pairs) {
    if (p.degraded)
      result.degraded_pairs.push_back(p.index);
    else
      good.push_back(&p);
  }
  result.degraded = !result.degraded_pairs.empty();

  std::set<int> support;
  double measure = 0.0;
  for (const auto* p : good) {
    for (const auto& [shift, m] : p->shift.mass) support.insert(shift);
    measure += p->shift.window.width();
  }
  for (int shift : support) {
    double weighted = 0.0;
    for (const auto* p : good) weighted += p->shift.probability(shift) * p->shift.window.width();
    result.pooled_shift.mass[shift] = weighted / measure;

    double se = 0.0;
    if (good.size() > 1) {
      double mean = 0.0;
      for (const auto* p : good) mean += p->shift.probability(shift);
      mean /= static_cast<double>(good.size());
      double ss = 0.0;
      for (const auto* p : good) ss += std::pow(p->shift.probability(shift) - mean, 2);
      se = std::sqrt(ss / static_cast<double>(good.size() - 1)) / std::sqrt(static_cast<double>(good.size()));
    }
    result.shift_std_error[shift] = se;
  }
  result.pooled_shift.pairs = static_cast<int>(good.size());
  if (!good.empty()) result.pooled_shift.window = good.front()->shift.window;

  std::vector<SpacingSample> samples;
  for (const auto* p : good) {
    result.levels_before_total += p->before.level_count();
    result.levels_after_total += p->after.level_count();
    for (const auto* s : {&p->before, &p->after})
      if (s->level_count() >= 2) samples.push_back(unfold_spacings(*s));
  }
  result.pooled_spacings = pool_spacings(samples, result.provenance.name);
}

CampaignResult run_campaign(const CampaignPlan& plan, int workers) {
  if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
  CampaignResult result;
  result.provenance = plan.provenance;
  result.pairs.resize(plan.pairs.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < plan.pairs.size(); i = next++) result.pairs[i] = solve_pair(plan.pairs[i]);
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), plan.pairs.size());
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < n_threads; ++t) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();

  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const PairResult& a, const PairResult& b) { return a.index < b.index; });
  aggregate_campaign(result);
  return result;
}

CampaignResult run_campaign(const SweepSpec& spec, int workers) {
  auto plan = plan_from_sweeps({spec}, spec.name);
  return run_campaign(plan, workers);
}

}  // namespace qgraph
