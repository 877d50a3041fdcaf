#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sks/diagnostics.hpp"
#include "sks/error.hpp"

using namespace sks;

namespace {

const ModelParams unit(1.0, 1.0);
constexpr double eps = 0.05;

// v = eps (cos y - 1/2) has zero e^{-|y|} mean, so the density keeps mass 2
double v_exact(double y) { return eps * (std::cos(y) - 0.5); }
double w_exact(double y) { return -eps * std::sin(y); }
double dw_exact(double y) { return -eps * std::cos(y); }

MassGrid cosine_grid(std::size_t n) {
  DensitySampler s{[](double y) { return std::exp(-std::abs(y)) * (1.0 + v_exact(y)); }, -40.0, 40.0, {0.0}};
  return init_grid_from_density(s, n, unit);
}

// composite Simpson of f(y) e^{-|y|} on [0, R], doubled by symmetry
template <class F>
double simpson_even(F f, double R) {
  const int m = 20000;
  const double h = R / m;
  double s = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double y = k * h;
    const double w = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    s += w * f(y) * std::exp(-y);
  }
  return 2.0 * s * h / 3.0;
}

std::vector<EnergyRecord> synthetic(double gamma, double dt, int count) {
  std::vector<EnergyRecord> s;
  for (int k = 0; k < count; ++k) {
    EnergyRecord r;
    r.t = k * dt;
    r.F = 3.0 * std::exp(-2.0 * gamma * r.t);
    r.G = 0.5 * r.F;
    s.push_back(r);
  }
  return s;
}

}  // namespace

TEST(Frame, EquilibriumPerturbationIsSmallInTheCore) {
  double prev = 0.0;
  for (std::size_t n : {400, 800}) {
    const auto f = moving_frame(equilibrium_grid(unit, n), unit);
    EXPECT_EQ(f.y[f.mid], 0.0);
    double m = 0.0;
    for (std::size_t k = 0; k < f.y.size(); ++k)
      if (std::abs(f.y[k]) <= 4.0) m = std::max(m, std::abs(f.v[k]));
    EXPECT_LT(m, 3e-2);
    if (prev > 0.0) EXPECT_LT(m, 0.3 * prev);  // second order
    prev = m;
  }
}

TEST(Frame, FollowsTheCenter) {
  const auto g = init_grid_from_density(equilibrium_density(unit, 1.7), 400, unit);
  const auto f = moving_frame(g, unit);
  EXPECT_NEAR(f.center, 1.7, 1e-2);
  EXPECT_NEAR(f.y.back(), 40.0, 1e-9);
  EXPECT_NEAR(f.h, 1e-2, 1e-15);
}

TEST(Frame, LengthsScaleWithChi) {
  const ModelParams p(2.0, 1.0);
  const auto f = moving_frame(equilibrium_grid(p, 400), p);
  EXPECT_NEAR(f.h, 5e-3, 1e-15);
  EXPECT_NEAR(f.y.back(), 20.0, 1e-9);
}

TEST(Frame, RecoversAKnownPerturbation) {
  const auto f = moving_frame(cosine_grid(800), unit);
  EXPECT_NEAR(f.center, 0.0, 1e-10);
  for (std::size_t k = 0; k < f.y.size(); ++k) {
    if (std::abs(f.y[k]) > 4.0) continue;
    EXPECT_NEAR(f.v[k], v_exact(f.y[k]), 1e-2) << f.y[k];
    if (std::abs(f.y[k]) <= 3.0) EXPECT_NEAR(f.w[k], w_exact(f.y[k]), 2e-3) << f.y[k];
  }
}

TEST(Frame, AmbiguousWithTwoPeaks) {
  DensitySampler s{[](double y) { return 0.5 * (std::exp(-std::abs(y - 5)) + std::exp(-std::abs(y + 5))); },
                   -50, 50, {-5.0, 5.0}};
  const auto g = init_grid_from_density(s, 400, unit);
  try {
    moving_frame(g, unit);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ambiguous_frame);
  }
}

TEST(Energies, MatchQuadratureOfTheKnownPerturbation) {
  const auto f = moving_frame(cosine_grid(800), unit);
  const auto e = energies(f, unit, 4.0);
  const double E = 0.5 * simpson_even([](double y) { return v_exact(y) * v_exact(y); }, 4.0);
  const double F = 0.5 * simpson_even([](double y) { return w_exact(y) * w_exact(y); }, 4.0);
  const double G = 0.5 * simpson_even([](double y) { return dw_exact(y) * dw_exact(y); }, 4.0);
  EXPECT_NEAR(e.E, E, 0.05 * E);
  EXPECT_NEAR(e.F, F, 0.05 * F);
  EXPECT_NEAR(e.G, G, 0.05 * G);
}

TEST(Energies, GridRefinementChangesLittle) {
  const auto g = cosine_grid(400);
  FrameOptions fine;
  fine.hy = 1e-3;
  const auto a = energies(moving_frame(g, unit), unit, 4.0);
  const auto b = energies(moving_frame(g, unit, fine), unit, 4.0);
  EXPECT_NEAR(a.E, b.E, 1e-3 * b.E);
  EXPECT_NEAR(a.F, b.F, 1e-3 * b.F);
  EXPECT_NEAR(a.G, b.G, 1e-3 * b.G);
}

TEST(Conservation, ResidualsVanishForAMassNormalizedProfile) {
  const auto f = moving_frame(cosine_grid(800), unit);
  const auto c = conservation_residuals(f, unit);
  EXPECT_LT(std::abs(c.cons_chi), 5e-3);
  EXPECT_LT(std::abs(c.cons_lambda), 5e-3);
  std::vector<double> one(f.y.size(), 1.0);
  EXPECT_NEAR(weighted_average(f, one, 1.0), 1.0, 1e-4);
  EXPECT_NEAR(weighted_average(f, one, 2.0), 1.0, 1e-4);
}

TEST(Mu, DenominatorsAgreeAtEquilibrium) {
  const auto g = equilibrium_grid(unit, 400);
  const auto f = moving_frame(g, unit);
  const auto m = mu_of_v(f, unit, &g);
  EXPECT_NEAR(m.denom, 1.0, 2e-2);
  EXPECT_NEAR(m.denom_alt, 1.0, 2e-2);
  EXPECT_LT(std::abs(m.mu), 2e-2);
  EXPECT_TRUE(std::isnan(mu_of_v(f, unit).denom_alt));
}

TEST(Records, ParallelMatchesSerial) {
  const auto g = cosine_grid(200);
  std::vector<Sample> traj{{0.0, g}, {0.1, g.translated(0.1)}, {0.2, g.translated(-0.3)}};
  const auto rs = make_records(traj, unit);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto r = make_record(traj[k].t, traj[k].grid, unit);
    EXPECT_EQ(rs[k].F, r.F);
    EXPECT_EQ(rs[k].x_center, r.x_center);
  }
  EXPECT_NEAR(rs[1].x_center - rs[0].x_center, 0.1, 1e-10);
  EXPECT_NEAR(rs[2].F, rs[0].F, 1e-8);
}

TEST(Dissipation, ResidualOfAnExactSeries) {
  // F' = -F and 2G = F, w(0) = 0: the residual is only the centered-difference error
  auto s = synthetic(0.5, 1e-2, 50);
  const auto r = dissipation_residual(s, unit);
  ASSERT_EQ(r.size(), 48u);
  for (const auto& d : r) EXPECT_NEAR(d.r, 0.0, 1e-4 * d.F);
  s.resize(2);
  EXPECT_THROW(dissipation_residual(s, unit), Error);
}

TEST(Dissipation, BoundCountsViolations) {
  std::vector<DissipationPoint> r{{0.0, 0.1, 1.0, 1.0}, {1.0, -0.5, 0.25, 1.0}, {2.0, 0.01, 0.0, 0.0}};
  const auto c = check_dissipation(r, 0.2, 0.0);
  EXPECT_EQ(c.violations, 2u);
  EXPECT_NEAR(c.max_excess, 0.4, 1e-15);
  EXPECT_NEAR(c.fitted_C, 0.5 / 0.75, 1e-15);
  EXPECT_EQ(check_dissipation(r, 0.2, 0.5).violations, 0u);
}

TEST(RateFit, RecoversAnExponentialRate) {
  const auto s = synthetic(0.3, 0.1, 201);
  const auto r = fit_decay_rate(s, unit);
  EXPECT_NEAR(r.gamma_fit, 0.3, 1e-12);
  EXPECT_NEAR(r.t_lo, 10.0, 1e-9);
  EXPECT_NEAR(r.t_hi, 20.0, 1e-9);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(r.gamma0, 1.0 / 6.0, 1e-15);
  EXPECT_FALSE(r.truncated);
  const auto w = fit_decay_rate(s, unit, 2.0, 5.0);
  EXPECT_NEAR(w.gamma_fit, 0.3, 1e-12);
}

TEST(RateFit, StopsAtTheFloor) {
  auto s = synthetic(0.3, 0.1, 201);
  for (std::size_t k = 150; k < s.size(); ++k) s[k].F = 0.0;
  const auto r = fit_decay_rate(s, unit);
  EXPECT_TRUE(r.truncated);
  EXPECT_NEAR(r.t_hi, 14.9, 1e-9);
  EXPECT_NEAR(r.gamma_fit, 0.3, 1e-12);
  for (auto& x : s) x.F = 0.0;
  EXPECT_THROW(fit_decay_rate(s, unit), Error);
}

TEST(EnergiesCsv, HeaderAndRows) {
  const auto csv = energies_csv(synthetic(0.1, 1.0, 3));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,E,F,G,h1_chi,x_center,xdot,cons_chi,cons_lambda,w0,mu");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}
