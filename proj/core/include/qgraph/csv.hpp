#pragma once

// Locale-independent CSV emitters and readers. Doubles use std::to_chars
// shortest round-trip form, so every file re-parses to identical values.

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/counting.hpp"
#include "qgraph/level_stats.hpp"
#include "qgraph/solver.hpp"

namespace qgraph {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double x);
double parse_double(const std::string& field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// index, k_rad_per_m, freq_GHz, multiplicity, residual
std::string spectrum_csv(const Spectrum& spectrum);

struct SpectrumRow {
  int index;
  double k_rad_per_m;
  double freq_ghz;
  int multiplicity;
  double residual;
};
std::vector<SpectrumRow> parse_spectrum_csv(const std::string& text);

/// delta_n, probability, std_error
std::string shift_distribution_csv(const ShiftDistribution& dist, const std::map<int, double>& std_error = {});

/// s_bin_center, density_empirical, density_goe, density_gue, density_transition
std::string spacing_histogram_csv(const SpacingHistogram& histogram, double xi);

/// s
std::string spacings_csv(const SpacingSample& sample);
SpacingSample parse_spacings_csv(const std::string& text);

struct InterlacingRow {
  int pair_id;
  int degree;
  int violations;
};
/// pair_id, degree, violations
std::string interlacing_csv(const std::vector<InterlacingRow>& rows);

/// k_rad_per_m, freq_GHz, n_before, n_after, delta_n: one row per breakpoint
/// of the two counting functions (values just after the breakpoint).
std::string counting_steps_csv(const Spectrum& before, const Spectrum& after);

}  // namespace qgraph
