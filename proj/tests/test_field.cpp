#include <gtest/gtest.h>

#include <cmath>

#include "sks/error.hpp"
#include "sks/field.hpp"

using namespace sks;

namespace {

const ModelParams unit(1.0, 1.0);

// two equilibrium bumps of mass 1 each, centered at +-c
MassGrid two_bumps(double c, std::size_t n) {
  DensitySampler s{[c](double y) { return 0.5 * (std::exp(-std::abs(y - c)) + std::exp(-std::abs(y + c))); },
                   -50.0, 50.0, {-c, c}};
  return init_grid_from_density(s, n, unit);
}

// number of sign changes of dS/dx for the exact two-bump density, by direct quadrature
int oracle_two_bump_critical_count(double c) {
  // S' = -(1/2) int sign(x - y) e^{-|x-y|} rho(y) dy; Simpson on a fine grid
  auto dS = [c](double x) {
    const int m = 40000;
    const double a = -60.0, b = 60.0, h = (b - a) / m;
    double s = 0.0;
    for (int k = 0; k <= m; ++k) {
      const double y = a + k * h;
      const double w = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      const double rho = 0.5 * (std::exp(-std::abs(y - c)) + std::exp(-std::abs(y + c)));
      const double sg = (x > y) - (x < y);
      s += w * sg * std::exp(-std::abs(x - y)) * rho;
    }
    return -0.5 * s * h / 3.0;
  };
  int count = 0;
  double prev = dS(-15.0);
  for (double x = -15.0 + 0.01; x <= 15.0; x += 0.01) {
    const double cur = dS(x);
    if ((prev > 0) != (cur > 0)) ++count;
    prev = cur;
  }
  return count;
}

}  // namespace

TEST(Field, EquilibriumPeakValue) {
  const auto g = equilibrium_grid(unit, 400);
  EXPECT_NEAR(S_at(g, unit, 0.0), 0.5, 5e-3);
}

TEST(Field, SingleParticle) {
  const MassGrid g(0.7, {0.0});
  const ModelParams p(1.0, 4.0, 0.7);
  EXPECT_DOUBLE_EQ(S_at(g, p, 0.0), 0.7 / 4.0);
}

TEST(Field, SymmetryAndTranslation) {
  const auto g = equilibrium_grid(unit, 400);
  for (double x : {0.1, 0.77, 3.0}) EXPECT_NEAR(S_at(g, unit, x), S_at(g, unit, -x), 1e-15);
  const auto t = g.translated(1.25);
  for (double x : {-2.0, 0.1, 4.0}) EXPECT_NEAR(S_at(t, unit, x + 1.25), S_at(g, unit, x), 1e-14);
}

TEST(Field, AlphaZeroUnsupported) {
  const auto g = equilibrium_grid(unit, 10);
  const ModelParams p(1.0, 0.0);
  EXPECT_THROW(S_at(g, p, 0.0), Error);
  EXPECT_THROW(grad_S_all(g, p), Error);
}

TEST(Field, TwoBodyGradient) {
  const double d = 0.4, de = 0.3;
  const MassGrid g(de, {-d, d});
  const ModelParams p(1.0, 2.25, 0.6);
  const double expect = 0.5 * de * std::exp(-1.5 * 2.0 * d);
  EXPECT_NEAR(grad_S_sum(g, p, 1), expect, 1e-16);
  EXPECT_NEAR(grad_S_sum(g, p, 0), -expect, 1e-16);
  EXPECT_LT(dS_at(g, p, d + 1e-9), 0.0);
}

TEST(Field, MiddleParticleOfSymmetricGrid) {
  const auto g = equilibrium_grid(unit, 401);
  EXPECT_NEAR(grad_S_sum(g, unit, 200), 0.0, 1e-16);
  const auto G = grad_S_all(g, unit);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (i != 200) EXPECT_EQ(G[i] > 0, g[i] > 0) << i;
}

TEST(Field, RecursionMatchesDirectSum) {
  for (const auto& g : {equilibrium_grid(unit, 400), init_grid_from_density(two_peaks_density(unit), 800, unit)}) {
    const auto a = grad_S_direct(g, unit);
    const auto b = grad_S_all(g, unit);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  }
}

TEST(Field, DirectSumIndependentOfThreadCount) {
  const auto g = init_grid_from_density(two_peaks_density(unit), 300, unit);
  setenv("THREADS", "1", 1);
  const auto a = grad_S_direct(g, unit);
  setenv("THREADS", "4", 1);
  const auto b = grad_S_direct(g, unit);
  unsetenv("THREADS");
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(CriticalPoints, EquilibriumHasOne) {
  for (std::size_t n : {400, 401}) {
    const auto g = equilibrium_grid(unit, n);
    for (auto m : {CenterMethod::interpolated, CenterMethod::bisection}) {
      const auto c = critical_points(g, unit, m);
      ASSERT_EQ(c.size(), 1u);
      EXPECT_LT(std::abs(c[0].x), g.delta_eta());
      EXPECT_FALSE(c[0].plateau);
    }
  }
}

TEST(CriticalPoints, TwoSeparatedBumpsHaveThree) {
  ASSERT_EQ(oracle_two_bump_critical_count(5.0), 3);
  const auto c = critical_points(two_bumps(5.0, 400), unit);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[1].x, 0.0, 1e-2);
  EXPECT_NEAR(std::abs(c[0].x), std::abs(c[2].x), 1e-2);
}

TEST(CriticalPoints, TranslationEquivariant) {
  const auto g = two_bumps(5.0, 400);
  const auto a = critical_points(g, unit);
  const auto b = critical_points(g.translated(2.5), unit);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(b[k].x, a[k].x + 2.5, 1e-12);
}

TEST(CriticalPoints, BisectionLandsOnTheContinuousMapSignChange) {
  const auto g = init_grid_from_density(equilibrium_density(unit, 0.3), 400, unit);
  const auto c = critical_points(g, unit, CenterMethod::bisection);
  ASSERT_EQ(c.size(), 1u);
  // the continuous map changes sign within 1e-10 of the returned point
  const double l = -dS_at(g, unit, c[0].x - 2e-10), r = -dS_at(g, unit, c[0].x + 2e-10);
  EXPECT_TRUE(l <= 0.0 && r >= 0.0 || l >= 0.0 && r <= 0.0 || std::abs(l) < 1e-12 || std::abs(r) < 1e-12);
}

TEST(Xdot, EquilibriumIsNearlyStill) {
  const auto g = equilibrium_grid(unit, 400);
  const double c = critical_points(g, unit)[0].x;
  EXPECT_LT(std::abs(xdot(g, unit, c)), 1e-2);
  // denominator 2 d2S(0) = -1 up to discretization
  EXPECT_NEAR(2.0 * field_at(g, unit, c).d2S, -1.0, 2e-2);
}

TEST(Xdot, MirrorFlipsSign) {
  DensitySampler s{[](double y) { return std::exp(-std::abs(y)) * (1.0 + 0.2 * y * std::exp(-y * y)); }, -40, 40, {0.0}};
  const auto g = init_grid_from_density(s, 400, unit);
  const double c = critical_points(g, unit)[0].x;
  const double a = xdot(g, unit, c), b = xdot(g.mirrored(), unit, -c);
  EXPECT_NE(a, 0.0);
  EXPECT_NEAR(a, -b, 1e-12 * std::abs(a));
}

TEST(Field, EllipticIdentityAgainstSecondDifference) {
  const auto g = equilibrium_grid(unit, 400);
  const double h = 0.05;
  for (double x : {-2.0, -0.7, 0.9, 1.6}) {
    const double fd = (S_at(g, unit, x + h) - 2 * S_at(g, unit, x) + S_at(g, unit, x - h)) / (h * h);
    EXPECT_NEAR(field_at(g, unit, x).d2S, fd, 1e-2) << x;
  }
}

TEST(Field, PositiveConcentration) {
  const auto g = init_grid_from_density(two_peaks_density(unit), 200, unit);
  for (double x : {-30.0, -3.0, 0.0, 2.0, 30.0}) EXPECT_GT(S_at(g, unit, x), 0.0);
}
