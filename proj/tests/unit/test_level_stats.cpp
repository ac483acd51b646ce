#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qgraph/level_stats.hpp"

using namespace qgraph;

namespace {
constexpr double pi = std::numbers::pi;

SpacingSample sample_of(std::vector<double> s) {
  SpacingSample out;
  out.spacings = std::move(s);
  out.configuration_count = 1;
  return out;
}
}  // namespace

TEST(Wigner, ZeroAtOrigin) {
  EXPECT_EQ(wigner_pdf(0.0, EnsembleClass::GOE), 0.0);
  EXPECT_EQ(wigner_pdf(0.0, EnsembleClass::GUE), 0.0);
}

TEST(Wigner, NormalisedWithUnitMean) {
  for (auto c : {EnsembleClass::GOE, EnsembleClass::GUE}) {
    const auto f = [c](double s) { return wigner_pdf(s, c); };
    EXPECT_NEAR(oracle::simpson(f, 0.0, 12.0, 20000), 1.0, 1e-8);
    EXPECT_NEAR(oracle::simpson([&](double s) { return s * f(s); }, 0.0, 12.0, 20000), 1.0, 1e-8);
  }
}

TEST(Wigner, MatchesClosedForms) {
  const double expected_ratio = (32 / (pi * pi) * std::exp(-4 / pi)) / (pi / 2 * std::exp(-pi / 4));
  EXPECT_NEAR(wigner_pdf(1.0, EnsembleClass::GUE) / wigner_pdf(1.0, EnsembleClass::GOE), expected_ratio, 1e-14);
  for (double s = 0.0; s < 4.0; s += 0.01) {
    EXPECT_NEAR(wigner_pdf(s, EnsembleClass::GOE), oracle::goe_density(s), 1e-14);
    EXPECT_NEAR(wigner_pdf(s, EnsembleClass::GUE), oracle::gue_density(s), 1e-14);
    for (auto c : {EnsembleClass::GOE, EnsembleClass::GUE}) {
      const auto f = [c](double x) { return wigner_pdf(x, c); };
      EXPECT_NEAR(wigner_cdf(s, c), oracle::simpson(f, 0.0, s, 2000), 1e-9);
    }
  }
}

TEST(Transition, GoeLimitExact) {
  EXPECT_NEAR(transition_scale(0.0), std::sqrt(pi / 2), 1e-15);
  for (double s = 0.0; s <= 4.0; s += 0.05) EXPECT_NEAR(transition_pdf(s, 0.0), wigner_pdf(s, EnsembleClass::GOE), 1e-14);
}

TEST(Transition, Limits) {
  double sup_goe = 0.0, sup_gue = 0.0;
  for (double s = 0.0; s <= 4.0; s += 1e-3) {
    sup_goe = std::max(sup_goe, std::abs(transition_pdf(s, 1e-3) - wigner_pdf(s, EnsembleClass::GOE)));
    sup_gue = std::max(sup_gue, std::abs(transition_pdf(s, 100.0) - wigner_pdf(s, EnsembleClass::GUE)));
  }
  EXPECT_LT(sup_goe, 1e-2);
  EXPECT_LT(sup_gue, 2e-2);
}

TEST(Transition, NormalisedAndMatchesOracle) {
  for (double xi : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(oracle::simpson([xi](double s) { return transition_pdf(s, xi); }, 0.0, 12.0, 20000), 1.0, 1e-6);
    for (double s = 0.0; s < 4.0; s += 0.1) EXPECT_NEAR(transition_pdf(s, xi), oracle::transition_density(s, xi), 1e-13);
  }
}

TEST(Unfolding, SingleGap) {
  const double L = 2.0;
  const auto s = unfold_spacings(make_spectrum({1.0, 1.0 + pi / L}, {0.0, 5.0}, L));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s.spacings[0], 1.0, 1e-15);
  EXPECT_THROW(unfold_spacings(make_spectrum({1.0}, {0.0, 5.0}, L)), std::invalid_argument);
}

TEST(Unfolding, PoissonMean) {
  std::mt19937_64 rng(1);
  const double L = 3.1;
  std::exponential_distribution<double> gap(L / pi);
  std::vector<double> k;
  double x = 0;
  for (int i = 0; i < 1001; ++i) k.push_back(x += gap(rng));
  EXPECT_NEAR(unfold_spacings(make_spectrum(k, {0.0, x + 1}, L)).mean(), 1.0, 0.05);
}

TEST(Ks, PrefersTheTrueClass) {
  const oracle::InverseTransformSampler gue(oracle::gue_density);
  const auto s = sample_of(gue.draw(5000, 3));
  EXPECT_LT(ks_distance(s, EnsembleClass::GUE), ks_distance(s, EnsembleClass::GOE));
  const oracle::InverseTransformSampler goe(oracle::goe_density);
  const auto t = sample_of(goe.draw(5000, 4));
  EXPECT_LT(ks_distance(t, EnsembleClass::GOE), ks_distance(t, EnsembleClass::GUE));
}

TEST(Ks, DegenerateSampleBounded) {
  const double d = ks_distance(sample_of({1, 1, 1}), EnsembleClass::GOE);
  EXPECT_GE(d, 0.0);
  EXPECT_LE(d, 1.0);
  EXPECT_THROW(ks_distance(sample_of({}), EnsembleClass::GOE), std::invalid_argument);
}

TEST(FitXi, RecoversOne) {
  const oracle::InverseTransformSampler sampler([](double s) { return oracle::transition_density(s, 1.0); });
  const auto fit = fit_xi(sample_of(sampler.draw(2000, 7)));
  EXPECT_GE(fit.xi, 0.85);
  EXPECT_LE(fit.xi, 1.15);
  EXPECT_GT(fit.xi_uncertainty, 0.0);
}

TEST(FitXi, TruthWithinReportedUncertainty) {
  const oracle::InverseTransformSampler sampler([](double s) { return oracle::transition_density(s, 1.0); });
  int inside = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const auto fit = fit_xi(sample_of(sampler.draw(2000, 1000 + rep)));
    if (std::abs(fit.xi - 1.0) <= fit.xi_uncertainty) ++inside;
  }
  EXPECT_GE(inside, 45);
}

TEST(FitXi, Limits) {
  const oracle::InverseTransformSampler goe(oracle::goe_density);
  EXPECT_LT(fit_xi(sample_of(goe.draw(2000, 5))).xi, 0.2);
  const oracle::InverseTransformSampler gue(oracle::gue_density);
  EXPECT_GT(fit_xi(sample_of(gue.draw(2000, 6))).xi, 3.0);
}

TEST(FitXi, TooFewSpacings) {
  EXPECT_THROW(fit_xi(sample_of(std::vector<double>(10, 1.0))), std::invalid_argument);
}

TEST(Histogram, NormalisedDensity) {
  const oracle::InverseTransformSampler goe(oracle::goe_density);
  const auto h = spacing_histogram(sample_of(goe.draw(4000, 2)));
  ASSERT_EQ(h.centers.size(), 40u);
  double mass = 0;
  for (double d : h.density) mass += d * h.bin_width;
  EXPECT_LE(mass, 1.0 + 1e-12);
  EXPECT_GT(mass, 0.99);
}
