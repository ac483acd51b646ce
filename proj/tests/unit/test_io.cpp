#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "qgraph/csv.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/manifest.hpp"
#include "qgraph/presets.hpp"

using namespace qgraph;

namespace {
std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("qgraph_test_io_" + name);
  std::filesystem::remove_all(p);
  return p;
}
}  // namespace

TEST(GraphJson, RoundTripIsBitExact) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    GraphDocument doc;
    doc.graph = oracle::random_graph(rng, 5, 9, 1e-3, 3.0, 7.0);
    doc.name = "r" + std::to_string(t);
    doc.switch_descriptor = SwitchDescriptor{VertexId{0}, EdgeId{1}, EdgeId{2}};
    const auto back = parse_graph_json(graph_to_json(doc));
    EXPECT_EQ(back.graph.edges(), doc.graph.edges());
    EXPECT_EQ(back.graph.vertex_count(), doc.graph.vertex_count());
    EXPECT_EQ(back.name, doc.name);
    EXPECT_EQ(back.switch_descriptor, doc.switch_descriptor);
  }
}

TEST(GraphJson, PresetDocumentCarriesSweep) {
  const auto doc = preset_document("goe_a");
  const auto back = parse_graph_json(graph_to_json(doc));
  EXPECT_EQ(back.graph.edges(), preset("goe_a").graph().edges());
  EXPECT_EQ(back.switch_descriptor, preset("goe_a").sweep.switch_descriptor);
  ASSERT_TRUE(back.window.has_value());
  EXPECT_EQ(*back.window, preset("goe_a").sweep.solver.window);
}

TEST(GraphJson, Malformed) {
  EXPECT_THROW(parse_graph_json("{"), GraphFileError);
  EXPECT_THROW(parse_graph_json("[]"), GraphFileError);
  EXPECT_THROW(parse_graph_json(R"({"version": 2, "vertices": [], "edges": []})"), GraphFileError);
  EXPECT_THROW(parse_graph_json(R"({"version": 1, "vertices": [1], "edges": []})"), GraphFileError);
  EXPECT_THROW(parse_graph_json(R"({"version": 1, "vertices": [0, 1], "edges": [{"id": 1, "u": 0}]})"), GraphFileError);
  EXPECT_THROW(load_graph_file("/nonexistent/graph.json"), GraphFileError);
  // Loads but does not validate.
  const auto doc = parse_graph_json(
      R"({"version": 1, "vertices": [0, 1], "edges": [{"id": 1, "u": 0, "v": 1, "length_m": -0.5}]})");
  EXPECT_FALSE(validate(doc.graph).empty());
}

TEST(Csv, DoublesRoundTrip) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng) * std::pow(10.0, i % 20 - 10);
    EXPECT_EQ(parse_double(format_double(x)), x);
  }
  EXPECT_THROW(parse_double("1,5"), CsvError);
  EXPECT_THROW(parse_double(""), CsvError);
}

TEST(Csv, SpectrumRoundTrip) {
  const auto p = preset("gue");
  const auto s = solve_spectrum(p.graph(), p.sweep.solver);
  const auto rows = parse_spectrum_csv(spectrum_csv(s));
  ASSERT_EQ(rows.size(), s.wavenumbers.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].k_rad_per_m, s.wavenumbers[i]);
    EXPECT_EQ(rows[i].multiplicity, s.multiplicities[i]);
    EXPECT_EQ(rows[i].residual, s.diagnostics.residuals[i]);
    EXPECT_EQ(rows[i].freq_ghz, k_to_ghz(s.wavenumbers[i]));
  }
}

TEST(Csv, OtherTablesRoundTrip) {
  SpacingSample sample;
  for (int i = 0; i < 300; ++i) sample.spacings.push_back(0.01 * i + 1e-7 * i * i);
  EXPECT_EQ(parse_spacings_csv(spacings_csv(sample)).spacings, sample.spacings);

  ShiftDistribution d;
  d.mass = {{-1, 0.125}, {0, 0.75}, {1, 0.125}};
  const auto table = parse_csv(shift_distribution_csv(d, {{-1, 0.01}, {0, 0.02}, {1, 0.03}}));
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_EQ(table.number(1, "probability"), 0.75);
  EXPECT_EQ(table.number(2, "std_error"), 0.03);

  const auto h = spacing_histogram(sample);
  const auto ht = parse_csv(spacing_histogram_csv(h, 1.0));
  ASSERT_EQ(ht.rows.size(), h.centers.size());
  for (std::size_t i = 0; i < h.centers.size(); ++i) {
    EXPECT_EQ(ht.number(i, "s_bin_center"), h.centers[i]);
    EXPECT_EQ(ht.number(i, "density_empirical"), h.density[i]);
    EXPECT_EQ(ht.number(i, "density_transition"), transition_pdf(h.centers[i], 1.0));
  }
  const auto it = parse_csv(interlacing_csv({{0, 1, 0}, {1, 2, 3}}));
  EXPECT_EQ(it.number(1, "violations"), 3.0);
  EXPECT_THROW(it.column("nope"), CsvError);
}

TEST(Csv, LocaleIndependent) {
  const auto* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) GTEST_SKIP() << "de_DE locale not installed";
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(parse_double("0.5"), 0.5);
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST(Manifest, EmptyAndMalformed) {
  EXPECT_THROW(parse_manifest("", "."), ManifestError);
  EXPECT_THROW(parse_manifest("{}", "."), ManifestError);
  EXPECT_THROW(parse_manifest(R"({"sources": []})", "."), ManifestError);
  EXPECT_THROW(parse_manifest(R"({"sources": [{"preset": "nope"}]})", "."), ManifestError);
  EXPECT_THROW(parse_manifest(R"({"sources": [{"preset": "goe_a"}], "ensemble": {"mode": "x"}})", "."),
               ManifestError);
  EXPECT_THROW(parse_manifest(R"({"sources": [{"preset": "goe_a"}], "solver": {"bogus": 1}})", "."),
               ManifestError);
  EXPECT_THROW(load_manifest("/nonexistent/m.json"), ManifestError);
}

TEST(Manifest, SweepAndRandom) {
  const auto m = parse_manifest(
      R"({"name": "goe", "sources": [{"preset": "goe_a"}, {"preset": "goe_b"}], "workers": 3, "output_dir": "o"})", "/base");
  EXPECT_EQ(m.plan.pairs.size(), 22u);
  EXPECT_EQ(m.workers, 3);
  EXPECT_EQ(m.output_dir, std::filesystem::path("/base/o"));

  const auto same = parse_manifest(R"({"name": "goe", "sources": [{"preset": "goe_a"}, {"preset": "goe_b"}]})", ".");
  EXPECT_EQ(m.content_hash, same.content_hash);

  const auto r = parse_manifest(R"({"name": "g", "sources": [{"preset": "gue"}],
      "ensemble": {"mode": "random", "count": 5, "length_jitter": 0.02}, "window_weyl_levels": 149, "seed": 4})", ".");
  EXPECT_EQ(r.plan.pairs.size(), 5u);
  EXPECT_EQ(r.plan.provenance.seed, 4u);
  EXPECT_EQ(r.plan.pairs[0].solver.window, gue_numerics_window());
  const auto r2 = parse_manifest(R"({"name": "g", "sources": [{"preset": "gue"}],
      "ensemble": {"mode": "random", "count": 5, "length_jitter": 0.02}, "window_weyl_levels": 149, "seed": 4})", ".",
                                 ManifestOverrides{5});
  EXPECT_NE(r2.content_hash, r.content_hash);
  EXPECT_NE(r2.plan.pairs[0].before.edges(), r.plan.pairs[0].before.edges());
}

TEST(Manifest, GraphFileSource) {
  const auto dir = scratch("manifest");
  std::filesystem::create_directories(dir);
  save_graph_file(dir / "g.json", preset_document("goe_b"));
  write_text(dir / "m.json", R"({"sources": [{"graph": "g.json",
      "sweep": {"grow_edge": 1, "shrink_edge": 4, "step_delta_m": 0.005, "step_count": 2}}]})");
  const auto m = load_manifest(dir / "m.json");
  ASSERT_EQ(m.plan.pairs.size(), 3u);
  EXPECT_EQ(m.plan.pairs[0].before.edges(), preset("goe_b").graph().edges());
  EXPECT_EQ(m.plan.pairs[0].solver.window, preset("goe_b").sweep.solver.window);
}

TEST(Manifest, Fnv1a) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}
