#include "qgraph/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace qgraph {

double weyl_count(double total_length, double k) { return total_length * k / std::numbers::pi; }

int counting_function(const Spectrum& spectrum, double k) {
  int n = spectrum.levels_below;
  for (std::size_t i = 0; i < spectrum.wavenumbers.size() && spectrum.wavenumbers[i] <= k; ++i)
    n += spectrum.multiplicities[i];
  return n;
}

std::vector<FluctuationPoint> fluctuating_count(const Spectrum& spectrum) {
  std::vector<FluctuationPoint> out;
  out.reserve(spectrum.wavenumbers.size());
  int n = spectrum.levels_below;
  for (std::size_t i = 0; i < spectrum.wavenumbers.size(); ++i) {
    n += spectrum.multiplicities[i];
    const double k = spectrum.wavenumbers[i];
    out.push_back({k, n - weyl_count(spectrum.total_length, k)});
  }
  return out;
}

std::vector<ShiftSegment> shift_segments(const Spectrum& before, const Spectrum& after) {
  if (!(before.window == after.window))
    throw std::invalid_argument("shift distribution needs spectra over identical windows");
  const auto& w = before.window;

  // Events: +multiplicity for `before`, -multiplicity for `after`.
  std::vector<std::pair<double, int>> events;
  events.reserve(before.wavenumbers.size() + after.wavenumbers.size());
  for (std::size_t i = 0; i < before.wavenumbers.size(); ++i)
    events.emplace_back(before.wavenumbers[i], before.multiplicities[i]);
  for (std::size_t i = 0; i < after.wavenumbers.size(); ++i)
    events.emplace_back(after.wavenumbers[i], -after.multiplicities[i]);
  std::sort(events.begin(), events.end());

  std::vector<ShiftSegment> out;
  int shift = before.levels_below - after.levels_below;
  double pos = w.k_min;
  std::size_t i = 0;
  while (i < events.size()) {
    const double k = events[i].first;
    if (k > pos) {
      out.push_back({pos, std::min(k, w.k_max), shift});
      pos = k;
    }
    while (i < events.size() && events[i].first == k) shift += events[i++].second;
  }
  if (w.k_max > pos) out.push_back({pos, w.k_max, shift});
  return out;
}

ShiftDistribution shift_distribution(const Spectrum& before, const Spectrum& after) {
  ShiftDistribution dist;
  dist.window = before.window;
  double total = 0.0;
  for (const auto& seg : shift_segments(before, after)) {
    const double len = seg.k_end - seg.k_begin;
    if (len <= 0.0) continue;
    dist.mass[seg.shift] += len;
    total += len;
  }
  if (total > 0.0)
    for (auto& [shift, m] : dist.mass) m /= total;
  return dist;
}

namespace {

// Worst r needed by the levels of `probe` against `reference`.
// Violations count probe indices that need r > 1.
std::pair<int, int> one_sided_degree(const Spectrum& reference, const Spectrum& probe) {
  const auto ref = reference.expanded();
  const auto levels = probe.expanded();
  int worst = 0;
  int violations = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const int n = probe.levels_below + static_cast<int>(i) + 1;
    const double y = levels[i];
    // Reference levels below the window lie below y; those beyond it above.
    const int at_or_below =
        reference.levels_below + static_cast<int>(std::upper_bound(ref.begin(), ref.end(), y) - ref.begin());
    const int strictly_below =
        reference.levels_below + static_cast<int>(std::lower_bound(ref.begin(), ref.end(), y) - ref.begin());
    const int r = std::max({0, n - at_or_below, strictly_below + 1 - n});
    worst = std::max(worst, r);
    if (r > 1) ++violations;
  }
  return {worst, violations};
}

}  // namespace

InterlacingReport interlacing_report(const Spectrum& before, const Spectrum& after) {
  if (before.wavenumbers.empty() || after.wavenumbers.empty())
    throw std::invalid_argument("interlacing degree needs two non-empty spectra");
  const auto [r1, v1] = one_sided_degree(before, after);
  const auto [r2, v2] = one_sided_degree(after, before);
  InterlacingReport report;
  report.degree = std::max(r1, r2);
  report.violations = v1 + v2;
  if (before.window == after.window) {
    for (const auto& seg : shift_segments(before, after))
      report.max_abs_shift = std::max(report.max_abs_shift, std::abs(seg.shift));
  }
  return report;
}

int interlacing_degree(const Spectrum& before, const Spectrum& after) {
  return interlacing_report(before, after).degree;
}

std::string to_string(SpectrumSide side) { return side == SpectrumSide::Before ? "before" : "after"; }

namespace {

double fluctuation_drift(const Spectrum& s, double k_split) {
  double sum_lo = 0.0, sum_hi = 0.0;
  int n_lo = 0, n_hi = 0;
  for (const auto& p : fluctuating_count(s)) {
    if (p.k < k_split) {
      sum_lo += p.n_fl;
      ++n_lo;
    } else {
      sum_hi += p.n_fl;
      ++n_hi;
    }
  }
  if (n_hi == 0) return 0.0;
  if (n_lo == 0) {
    // Nothing below the split: anchor at the window's lower edge.
    const double k0 = effective_k_min(s.window);
    sum_lo = s.levels_below - weyl_count(s.total_length, k0);
    n_lo = 1;
  }
  return sum_hi / n_hi - sum_lo / n_lo;
}

// Centre of the widest gap between consecutive levels of `s` that overlaps
// [lo, hi], clipped to that interval.
double widest_gap_centre(const Spectrum& s, double lo, double hi) {
  double best_gap = -1.0;
  double centre = 0.5 * (lo + hi);
  double prev = s.window.k_min;
  for (double k : s.expanded()) {
    if (prev > hi) break;
    if (k > lo && k - prev > best_gap) {
      best_gap = k - prev;
      centre = std::clamp(0.5 * (k + prev), lo, hi);
    }
    prev = k;
  }
  if (prev <= hi && s.window.k_max - prev > best_gap) centre = std::clamp(0.5 * (prev + s.window.k_max), lo, hi);
  return centre;
}

}  // namespace

// For switch-related spectra dN stays in {-1, 0, 1}. Dropping one level
// from the after spectrum at k_d adds 1 to dN for k >= k_d, so afterwards
// dN never reaches -1 again: k_d lies between the last dN = -1 point and the
// first dN = 2 point. All |dN| >= 2 runs up to the next opposite excursion
// belong to the same deficit.
MissingResonanceReport detect_missing_resonances(const Spectrum& before, const Spectrum& after) {
  MissingResonanceReport report;
  const auto segments = shift_segments(before, after);
  if (segments.empty()) return report;

  double last_neg_end = segments.front().k_begin;
  double last_pos_end = segments.front().k_begin;
  std::size_t i = 0;
  while (i < segments.size()) {
    const auto& seg = segments[i];
    if (std::abs(seg.shift) < 2) {
      if (seg.shift <= -1) last_neg_end = seg.k_end;
      if (seg.shift >= 1) last_pos_end = seg.k_end;
      ++i;
      continue;
    }
    const int sign = seg.shift > 0 ? 1 : -1;
    MissingResonanceFlag flag{};
    flag.k_begin = sign > 0 ? last_neg_end : last_pos_end;
    flag.k_first_violation = seg.k_begin;
    for (; i < segments.size() && segments[i].shift * sign > -1; ++i) {
      const int shift = segments[i].shift;
      if (shift * sign >= 2) flag.k_end = segments[i].k_end;
      flag.max_abs_shift = std::max(flag.max_abs_shift, std::abs(shift));
      if (shift <= -1) last_neg_end = segments[i].k_end;
      if (shift >= 1) last_pos_end = segments[i].k_end;
    }
    // dN = N - N~ > 0 means the switched spectrum is short of levels.
    flag.suspect = sign > 0 ? SpectrumSide::After : SpectrumSide::Before;
    const auto& suspect = flag.suspect == SpectrumSide::After ? after : before;
    flag.suspected_location = widest_gap_centre(suspect, flag.k_begin, flag.k_first_violation);
    flag.drift_before = fluctuation_drift(before, flag.suspected_location);
    flag.drift_after = fluctuation_drift(after, flag.suspected_location);
    report.flags.push_back(flag);
  }
  return report;
}

}  // namespace qgraph
