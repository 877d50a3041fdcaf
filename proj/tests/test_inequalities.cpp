#include <gtest/gtest.h>

#include <cmath>

#include "sks/error.hpp"
#include "sks/inequalities.hpp"

using namespace sks;

TEST(Kernel, CdfAndOmegaBasics) {
  EXPECT_DOUBLE_EQ(cdf_M(2.0, 0.0), 0.5);
  EXPECT_NEAR(cdf_M(2.0, -30.0), 0.0, 1e-20);
  EXPECT_NEAR(cdf_M(2.0, 30.0), 1.0, 1e-15);
  const KernelParams kp{3.0, 1.0};
  for (double x : {-2.0, -0.3, 0.0, 1.1})
    for (double y : {-1.5, 0.2, 4.0}) {
      EXPECT_DOUBLE_EQ(omega(kp, x, y), omega(kp, y, x));
      EXPECT_GE(omega(kp, x, y), 0.0);
    }
  EXPECT_THROW(omega({0.5, 1.0}, 0.0, 0.0), Error);
}

TEST(WeightedMean, ExactOnConstantsAndOddFunctions) {
  const auto c = sample([](double) { return 2.5; }, 10.0, 0.1);
  EXPECT_NEAR(weighted_mean(c, 1.7), 2.5, 1e-15);
  const auto o = sample([](double y) { return y * y * y; }, 10.0, 0.1);
  EXPECT_NEAR(weighted_mean(o, 1.0), 0.0, 1e-12);
  // <|y|>_a = 1/a
  const auto a = sample([](double y) { return std::abs(y); }, 40.0, 0.01);
  EXPECT_NEAR(weighted_mean(a, 2.0), 0.5, 1e-4);
}

TEST(Poincare, LinearFunctionHasRatioOneHalf) {
  // chi = lambda = 1, w = y: lhs = int y^2 e^{-|y|} = 4, rhs = int e^{-|y|} = 2
  const auto w = sample([](double y) { return y; }, 40.0, 0.01);
  const auto r = poincare_check(w, {1.0, 1.0});
  EXPECT_NEAR(r.lhs, 4.0, 1e-3);
  EXPECT_NEAR(r.rhs, 2.0, 1e-3);
  EXPECT_NEAR(r.ratio, 0.5, 1e-3);
  EXPECT_FALSE(r.violation);
}

TEST(Poincare, ConstantsAndOrdering) {
  const auto c = sample([](double) { return 1.0; }, 10.0, 0.1);
  const auto r = poincare_check(c, {2.0, 1.0});
  EXPECT_EQ(r.ratio, 0.0);
  EXPECT_FALSE(r.violation);
  try {
    poincare_check(c, {0.5, 1.0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parameter_order);
  }
}

TEST(Poincare, ScalesWithChi) {
  // w(y) = g(chi y) gives the same ratio at (lambda chi, chi) as g at (lambda, 1)
  auto g = [](double y) { return std::sin(y) + 0.3 * y * std::exp(-0.2 * y * y); };
  const auto a = poincare_check(sample(g, 40.0, 0.005), {2.0, 1.0});
  const auto b = poincare_check(sample([&](double y) { return g(2.0 * y); }, 20.0, 0.0025), {4.0, 2.0});
  EXPECT_NEAR(a.ratio, b.ratio, 1e-10);
}

TEST(Poincare, NearOptimizerApproachesTheConstant) {
  double prev = 0.0;
  for (double R : {10.0, 20.0, 40.0}) {
    const auto w = near_optimizer(R, 0.01);
    EXPECT_EQ(w.values[w.center()], -1.0);
    const double r = poincare_check(w, {2.0, 1.0}).ratio;
    EXPECT_LE(r, 1.0 + 1e-3);
    EXPECT_GT(r, prev);
    prev = r;
  }
  EXPECT_GE(prev, 0.9);
}

TEST(Poincare, RandomSuiteStaysBelowOne) {
  const auto rows = poincare_suite({1.0, 1.5, 3.0, 10.0}, 1.0, 25);
  ASSERT_EQ(rows.size(), 100u);
  for (const auto& r : rows) {
    EXPECT_LE(r.ratio, 1.0 + 1e-3);
    EXPECT_GE(r.ratio, 0.0);
  }
  const auto csv = poincare_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda,chi,function_id,ratio,lhs,rhs");
}

TEST(RandomFunctions, SeededAndWithinRanges) {
  const auto a = random_gaussian_sums(50, 42), b = random_gaussian_sums(50, 42), c = random_gaussian_sums(50, 7);
  bool differs = false;
  for (std::size_t i = 0; i < 50; ++i) {
    ASSERT_EQ(a[i].bumps.size(), b[i].bumps.size());
    EXPECT_GE(a[i].bumps.size(), 1u);
    EXPECT_LE(a[i].bumps.size(), 8u);
    EXPECT_EQ(a[i](0.3), b[i](0.3));
    differs |= a[i](0.3) != c[i](0.3);
    for (const auto& g : a[i].bumps) {
      EXPECT_GE(g.center, -5.0);
      EXPECT_LE(g.center, 5.0);
      EXPECT_GE(g.width, 0.3);
      EXPECT_LE(g.width, 2.0);
      EXPECT_LE(std::abs(g.amplitude), 1.0);
    }
  }
  EXPECT_TRUE(differs);
}

TEST(QuadraticForm, PrefixSumsMatchTheDoubleSum) {
  // 81 cells per half: no Simpson layout, the separable sums reproduce the trapezoid double sum
  const auto fs = random_gaussian_sums(3, 11);
  for (const auto& f : fs) {
    const auto w = sample(f, 8.1, 0.1);
    for (double lam : {1.0, 2.5}) {
      const KernelParams kp{lam, 1.0};
      const double naive = quadratic_form_naive(w, kp);
      EXPECT_NEAR(quadratic_form_identity(w, kp).rhs, naive, 1e-12 * (1.0 + std::abs(naive)));
    }
  }
}

TEST(QuadraticForm, SimpsonLayoutAgreesWithTheDoubleSum) {
  const auto fs = random_gaussian_sums(3, 11);
  for (const auto& f : fs) {
    const auto w = sample(f, 8.0, 0.02);
    const KernelParams kp{2.0, 1.0};
    const double naive = quadratic_form_naive(w, kp);
    EXPECT_NEAR(quadratic_form_identity(w, kp).rhs, naive, 1e-3 * std::abs(naive));
  }
}

TEST(QuadraticForm, FourthOrderInTheGridSpacing) {
  const auto f = random_gaussian_sums(141, 42)[140];
  const double a = quadratic_form_identity(sample(f, 40.0, 0.02), {1.5, 1.0}).gap;
  const double b = quadratic_form_identity(sample(f, 40.0, 0.01), {1.5, 1.0}).gap;
  EXPECT_GT(a / b, 8.0);
}

TEST(QuadraticForm, IdentityHoldsOnRandomFunctions) {
  const auto fs = random_gaussian_sums(10, 42);
  for (const auto& f : fs) {
    const auto w = sample(f, 40.0, 0.01);
    for (double lam : {1.0, 1.5, 3.0, 10.0}) EXPECT_LE(quadratic_form_identity(w, {lam, 1.0}).gap, 1e-4);
  }
}

TEST(QuadraticForm, ClosedFormForALinearFunction) {
  // w = y, chi = lambda = 1: lhs = (1/2) * 4
  const auto w = sample([](double y) { return y; }, 40.0, 0.01);
  const auto r = quadratic_form_identity(w, {1.0, 1.0});
  EXPECT_NEAR(r.lhs, 2.0, 1e-3);
  EXPECT_NEAR(r.rhs, 2.0, 1e-3);
}

TEST(PointwiseBound, ClosedFormAtEqualExponents) {
  // with lambda = chi the value is 2 - e^{-|x|/2}
  for (double x : {-10.0, -3.0, -0.5, 0.0, 0.7, 4.0, 10.0})
    EXPECT_NEAR(pointwise_bound({1.0, 1.0}, x), 2.0 - std::exp(-0.5 * std::abs(x)), 1e-9) << x;
}

TEST(PointwiseBound, IndependentOfLambdaAndBelowTwo) {
  for (double x : {-10.0, -1.0, 0.0, 2.5, 10.0}) {
    const double ref = pointwise_bound({1.0, 1.0}, x);
    for (double lam : {1.5, 3.0, 10.0}) {
      const double v = pointwise_bound({lam, 1.0}, x);
      EXPECT_NEAR(v, ref, 1e-6) << lam << ' ' << x;
      EXPECT_LE(v, 2.0 + 1e-6);
    }
  }
  // chi enters only through x/chi scaling of lambda
  EXPECT_NEAR(pointwise_bound({4.0, 2.0}, 1.0), pointwise_bound({2.0, 1.0}, 1.0), 1e-12);
  EXPECT_THROW(pointwise_bound({0.5, 1.0}, 0.0), Error);
}

TEST(Interpolation, AbsoluteValueOracle) {
  // f = |y|: lhs = 1/a^2, rhs = 1/(b (2a - b)); equal when a = b
  const auto f = sample([](double y) { return std::abs(y); }, 40.0, 0.01);
  // the centered slope at the kink is 0, which costs O(h) in the right-hand side
  const auto eq = interpolation_check(f, 1.0, 1.0);
  EXPECT_NEAR(eq.lhs, 1.0, 1e-3);
  EXPECT_NEAR(eq.rhs, 1.0, 1e-2);
  const auto r = interpolation_check(f, 2.0, 1.0);
  EXPECT_NEAR(r.lhs, 0.25, 1e-4);
  EXPECT_NEAR(r.rhs, 1.0 / 3.0, 5e-3);
  EXPECT_THROW(interpolation_check(f, 1.0, 2.0), Error);
}

TEST(Interpolation, HoldsOnRandomFunctions) {
  for (const auto& g : random_gaussian_sums(30, 42)) {
    const auto f = sample(g, 40.0, 0.01);
    for (double a : {1.0, 2.0, 3.0}) {
      const auto r = interpolation_check(f, a, 1.0);
      EXPECT_LE(r.lhs, r.rhs + 1e-6);
    }
  }
}
