#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sks {

// Uniform samples on [-R, R] with step h; y_k = -R + k h.
struct SampledFunction {
  double R = 0.0;
  double h = 0.0;
  std::vector<double> values;

  double y(std::size_t k) const { return -R + static_cast<double>(k) * h; }
  std::size_t size() const { return values.size(); }
  std::size_t center() const { return values.size() / 2; }
};

SampledFunction sample(const std::function<double(double)>& f, double R, double h);

struct KernelParams {
  double lambda = 1.0;
  double chi = 1.0;
};

double cdf_M(double lambda, double x);
double omega(const KernelParams& kp, double x, double y);

// Discrete weighted average, normalized by the discrete weight so constants are reproduced exactly.
double weighted_mean(const SampledFunction& f, double r);

struct QuadFormResult {
  double lhs = 0.0, rhs = 0.0, gap = 0.0;
};
// 1/2 * int |w - <w>_lambda|^2 e^{-chi|y|}  vs  double integral of w'(x1) w'(x2) Omega(x1, x2)
QuadFormResult quadratic_form_identity(const SampledFunction& w, const KernelParams& kp);
// same right-hand side by the direct O(n^2) double sum
double quadratic_form_naive(const SampledFunction& w, const KernelParams& kp);

struct PoincareResult {
  double ratio = 0.0;
  double lhs = 0.0;  // int |w - <w>_lambda|^2 e^{-chi|y|}
  double rhs = 0.0;  // int |w'|^2 e^{-chi|y|}
  bool violation = false;
};
PoincareResult poincare_check(const SampledFunction& w, const KernelParams& kp);

// even profile (|y|/2 - 1) e^{|y|/2} whose slope is switched off smoothly on [R-1, R]
SampledFunction near_optimizer(double R, double h);

// e^{|x|/2} int Omega_{lambda/chi,1}(x, y) e^{|y|/2} dy, x in rescaled units
double pointwise_bound(const KernelParams& kp, double x);

struct InterpolationResult {
  double lhs = 0.0, rhs = 0.0;
};
InterpolationResult interpolation_check(const SampledFunction& f, double a, double b);

// sum of at most 8 Gaussians: amplitude * exp(-((y - c)/s)^2 / 2)
struct GaussianSum {
  struct Bump {
    double center, width, amplitude;
  };
  std::vector<Bump> bumps;
  double operator()(double y) const;
};
std::vector<GaussianSum> random_gaussian_sums(std::size_t count, std::uint64_t seed = 42);

struct PoincareRow {
  double lambda, chi;
  std::size_t function_id;
  double ratio, lhs, rhs;
};
std::vector<PoincareRow> poincare_suite(const std::vector<double>& lambdas, double chi, std::size_t count,
                                        std::uint64_t seed = 42, double R = 40.0, double h = 0.01);
std::string poincare_csv(const std::vector<PoincareRow>& rows);

}  // namespace sks
