#include "qgraph/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qgraph/units.hpp"

namespace qgraph {

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw CsvError("cannot format number");
  return std::string(buf, ptr);
}

double parse_double(const std::string& field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw CsvError("not a number: '" + field + "'");
  return value;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    field.erase(0, field.find_first_not_of(" \t\r"));
    field.erase(field.find_last_not_of(" \t\r") + 1);
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

int parse_int(const std::string& field) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) throw CsvError("not an integer: '" + field + "'");
  return value;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw CsvError("missing CSV column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const auto col = column(name);
  if (col >= rows.at(row).size()) throw CsvError("short CSV row " + std::to_string(row + 1));
  return parse_double(rows[row][col]);
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_line(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) throw CsvError("CSV has no header line");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CsvError("cannot write " + path.string());
  out << text;
}

std::string spectrum_csv(const Spectrum& spectrum) {
  std::string out = "index,k_rad_per_m,freq_GHz,multiplicity,residual\n";
  for (std::size_t i = 0; i < spectrum.wavenumbers.size(); ++i) {
    const double k = spectrum.wavenumbers[i];
    const double residual = i < spectrum.diagnostics.residuals.size() ? spectrum.diagnostics.residuals[i] : 0.0;
    out += std::to_string(i + 1) + ',' + format_double(k) + ',' + format_double(k_to_ghz(k)) + ',' +
           std::to_string(spectrum.multiplicities[i]) + ',' + format_double(residual) + '\n';
  }
  return out;
}

std::vector<SpectrumRow> parse_spectrum_csv(const std::string& text) {
  const auto table = parse_csv(text);
  const auto c_index = table.column("index");
  const auto c_mult = table.column("multiplicity");
  std::vector<SpectrumRow> rows;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() < table.header.size()) throw CsvError("short CSV row " + std::to_string(r + 1));
    rows.push_back({parse_int(table.rows[r][c_index]), table.number(r, "k_rad_per_m"), table.number(r, "freq_GHz"),
                    parse_int(table.rows[r][c_mult]), table.number(r, "residual")});
  }
  return rows;
}

std::string shift_distribution_csv(const ShiftDistribution& dist, const std::map<int, double>& std_error) {
  std::string out = "delta_n,probability,std_error\n";
  for (const auto& [shift, mass] : dist.mass) {
    const auto it = std_error.find(shift);
    out += std::to_string(shift) + ',' + format_double(mass) + ',' +
           format_double(it == std_error.end() ? 0.0 : it->second) + '\n';
  }
  return out;
}

std::string spacing_histogram_csv(const SpacingHistogram& h, double xi) {
  std::string out = "s_bin_center,density_empirical,density_goe,density_gue,density_transition\n";
  for (std::size_t b = 0; b < h.centers.size(); ++b) {
    const double s = h.centers[b];
    out += format_double(s) + ',' + format_double(h.density[b]) + ',' +
           format_double(wigner_pdf(s, EnsembleClass::GOE)) + ',' + format_double(wigner_pdf(s, EnsembleClass::GUE)) +
           ',' + format_double(transition_pdf(s, xi)) + '\n';
  }
  return out;
}

std::string spacings_csv(const SpacingSample& sample) {
  std::string out = "s\n";
  for (double s : sample.spacings) out += format_double(s) + '\n';
  return out;
}

SpacingSample parse_spacings_csv(const std::string& text) {
  const auto table = parse_csv(text);
  SpacingSample sample;
  for (std::size_t r = 0; r < table.rows.size(); ++r) sample.spacings.push_back(table.number(r, "s"));
  return sample;
}

std::string interlacing_csv(const std::vector<InterlacingRow>& rows) {
  std::string out = "pair_id,degree,violations\n";
  for (const auto& r : rows)
    out += std::to_string(r.pair_id) + ',' + std::to_string(r.degree) + ',' + std::to_string(r.violations) + '\n';
  return out;
}

std::string counting_steps_csv(const Spectrum& before, const Spectrum& after) {
  std::vector<double> points = before.wavenumbers;
  points.insert(points.end(), after.wavenumbers.begin(), after.wavenumbers.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::string out = "k_rad_per_m,freq_GHz,n_before,n_after,delta_n\n";
  auto row = [&](double k) {
    const int n = counting_function(before, k);
    const int m = counting_function(after, k);
    out += format_double(k) + ',' + format_double(k_to_ghz(k)) + ',' + std::to_string(n) + ',' + std::to_string(m) +
           ',' + std::to_string(n - m) + '\n';
  };
  row(before.window.k_min);
  for (double k : points) row(k);
  return out;
}

}  // namespace qgraph
