#include "sks/inequalities.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "sks/error.hpp"
#include "sks/io.hpp"
#include "sks/numerics.hpp"
#include "sks/parallel.hpp"

namespace sks {

SampledFunction sample(const std::function<double(double)>& f, double R, double h) {
  if (!(R > 0.0) || !(h > 0.0)) throw Error(Errc::invalid_params, "need R > 0 and h > 0");
  SampledFunction s{R, h, {}};
  const auto m = static_cast<std::size_t>(std::llround(R / h));
  s.values.resize(2 * m + 1);
  for (std::size_t k = 0; k <= 2 * m; ++k) s.values[k] = f(s.y(k));
  return s;
}

double cdf_M(double lambda, double x) {
  return x <= 0.0 ? 0.5 * std::exp(lambda * x) : 1.0 - 0.5 * std::exp(-lambda * x);
}

namespace {

// 1 - M_lambda(x) without cancellation in the right tail
double cdf_M_upper(double lambda, double x) {
  return x >= 0.0 ? 0.5 * std::exp(-lambda * x) : 1.0 - 0.5 * std::exp(lambda * x);
}

// M_lambda - M_chi, written so both tails keep full relative accuracy
double cdf_gap(const KernelParams& kp, double x) {
  return x <= 0.0 ? 0.5 * (std::exp(kp.lambda * x) - std::exp(kp.chi * x))
                  : 0.5 * (std::exp(-kp.chi * x) - std::exp(-kp.lambda * x));
}

}  // namespace

double omega(const KernelParams& kp, double x, double y) {
  if (kp.lambda < kp.chi || !(kp.chi > 0.0)) throw Error(Errc::parameter_order, "need lambda >= chi > 0");
  const double lo = std::min(x, y), hi = std::max(x, y);
  return cdf_gap(kp, x) * cdf_gap(kp, y) + cdf_M(kp.chi, lo) * cdf_M_upper(kp.chi, hi);
}

namespace {

// trapezoid weights times e^{-r|y|}
std::vector<double> trap_weights(const SampledFunction& f, double r) {
  std::vector<double> c(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) c[k] = f.h * std::exp(-r * std::abs(f.y(k)));
  c.front() *= 0.5;
  c.back() *= 0.5;
  return c;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> t(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) t[k] = a[k] * b[k];
  return pairwise_sum(t);
}

// int |w - <w>_lambda|^2 e^{-chi|y|}
double centered_l2(const SampledFunction& w, double lambda, double chi) {
  const double m = weighted_mean(w, lambda);
  std::vector<double> d2(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) d2[k] = (w.values[k] - m) * (w.values[k] - m);
  return dot(d2, trap_weights(w, chi));
}

}  // namespace

double weighted_mean(const SampledFunction& f, double r) {
  const auto c = trap_weights(f, r);
  return dot(f.values, c) / pairwise_sum(c);
}

namespace {

// Simpson weights on each half of the grid, so the kink of the weights at y = 0 sits on a panel
// edge; empty when the halves have an odd number of cells
std::vector<double> simpson_weights(std::size_t n, std::size_t step, double h) {
  const std::size_t m = (n - 1) / 2;
  if (n % 2 == 0 || m % (2 * step) != 0) return {};
  std::vector<double> c(n, 0.0);
  const double H = static_cast<double>(step) * h;
  for (std::size_t k = 0; k + 2 * step < n; k += 2 * step) {
    c[k] += H / 3.0;
    c[k + step] += 4.0 * H / 3.0;
    c[k + 2 * step] += H / 3.0;
  }
  return c;
}

}  // namespace

QuadFormResult quadratic_form_identity(const SampledFunction& w, const KernelParams& kp) {
  if (kp.lambda < kp.chi || !(kp.chi > 0.0)) throw Error(Errc::parameter_order, "need lambda >= chi > 0");
  QuadFormResult r;
  const auto dw = gradient4(w.values, w.h);
  const std::size_t n = w.size();
  const auto c1 = simpson_weights(n, 1, w.h), c2 = simpson_weights(n, 2, w.h);

  if (c1.empty() || c2.empty()) {
    r.lhs = 0.5 * centered_l2(w, kp.lambda, kp.chi);
    // Omega(x<=y) = A(x)A(y) + M(x)(1 - M(y)) with A = M_lambda - M_chi: separable, so prefix sums suffice
    double sA = 0.0, prefix = 0.0, cross = 0.0, diag = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double a = dw[k] * w.h * ((k == 0 || k + 1 == n) ? 0.5 : 1.0);
      const double y = w.y(k), M = cdf_M(kp.chi, y);
      sA += a * cdf_gap(kp, y);
      cross += a * cdf_M_upper(kp.chi, y) * prefix;
      diag += a * a * M * cdf_M_upper(kp.chi, y);
      prefix += a * M;
    }
    r.rhs = sA * sA + 2.0 * cross + diag;
  } else {
    std::vector<double> t(n), wl(n), wc(n);
    for (std::size_t k = 0; k < n; ++k) {
      wl[k] = c1[k] * std::exp(-kp.lambda * std::abs(w.y(k)));
      wc[k] = c1[k] * std::exp(-kp.chi * std::abs(w.y(k)));
    }
    const double mean = dot(w.values, wl) / pairwise_sum(wl);
    for (std::size_t k = 0; k < n; ++k) t[k] = (w.values[k] - mean) * (w.values[k] - mean);
    r.lhs = 0.5 * dot(t, wc);

    // same separable form; the diagonal kink of Omega is avoided by a cumulative integral
    // Q(x) = int_{-R}^x w' M, built by Simpson on even nodes, and an outer Simpson with step 2h
    for (std::size_t k = 0; k < n; ++k) t[k] = dw[k] * cdf_gap(kp, w.y(k));
    const double sA = dot(t, c1);
    double Q = 0.0;
    std::vector<double> outer(n, 0.0);
    for (std::size_t k = 0; k < n; k += 2) {
      if (k > 0) {
        auto g = [&](std::size_t j) { return dw[j] * cdf_M(kp.chi, w.y(j)); };
        Q += w.h / 3.0 * (g(k - 2) + 4.0 * g(k - 1) + g(k));
      }
      outer[k] = dw[k] * cdf_M_upper(kp.chi, w.y(k)) * Q;
    }
    r.rhs = sA * sA + 2.0 * dot(outer, c2);
  }
  const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.gap = scale > 0.0 ? std::abs(r.lhs - r.rhs) / scale : 0.0;
  return r;
}

double quadratic_form_naive(const SampledFunction& w, const KernelParams& kp) {
  const auto dw = gradient4(w.values, w.h);
  const std::size_t n = w.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ci = w.h * ((i == 0 || i + 1 == n) ? 0.5 : 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double cj = w.h * ((j == 0 || j + 1 == n) ? 0.5 : 1.0);
      s += ci * cj * dw[i] * dw[j] * omega(kp, w.y(i), w.y(j));
    }
  }
  return s;
}

PoincareResult poincare_check(const SampledFunction& w, const KernelParams& kp) {
  if (kp.lambda < kp.chi || !(kp.chi > 0.0)) throw Error(Errc::parameter_order, "need lambda >= chi > 0");
  PoincareResult r;
  r.lhs = centered_l2(w, kp.lambda, kp.chi);
  const auto dw = gradient4(w.values, w.h);
  std::vector<double> d2(dw.size());
  for (std::size_t k = 0; k < dw.size(); ++k) d2[k] = dw[k] * dw[k];
  r.rhs = dot(d2, trap_weights(w, kp.chi));
  if (r.rhs > 0.0) {
    r.ratio = r.lhs / (4.0 / (kp.chi * kp.chi) * r.rhs);
  } else if (r.lhs > 1e-300) {
    r.ratio = std::numeric_limits<double>::infinity();
    r.violation = true;
  }
  return r;
}

SampledFunction near_optimizer(double R, double h) {
  auto cut = [R](double s) {
    if (s <= R - 1.0) return 1.0;
    if (s >= R) return 0.0;
    const double t = s - (R - 1.0);
    return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
  };
  auto slope = [&](double s) { return 0.25 * s * std::exp(0.5 * s) * cut(s); };
  const double D = R + 2.0;
  const auto m = static_cast<std::size_t>(std::llround(D / h));
  // W(s) = -1 + int_0^s slope, Simpson per cell
  std::vector<double> W(m + 1);
  W[0] = -1.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double a = static_cast<double>(k) * h;
    W[k + 1] = W[k] + h / 6.0 * (slope(a) + 4.0 * slope(a + 0.5 * h) + slope(a + h));
  }
  SampledFunction s{static_cast<double>(m) * h, h, std::vector<double>(2 * m + 1)};
  for (std::size_t k = 0; k <= 2 * m; ++k) s.values[k] = W[k > m ? k - m : m - k];
  return s;
}

double pointwise_bound(const KernelParams& kp, double x) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const KernelParams unit{kp.lambda / kp.chi, 1.0};
  if (unit.lambda < 1.0) throw Error(Errc::parameter_order, "need lambda >= chi > 0");
  auto f = [&](double y) {
    const double o = omega(unit, x, y);
    return o > 0.0 ? o * std::exp(0.5 * std::abs(y)) : 0.0;
  };
  const double a = std::min(0.0, x), b = std::max(0.0, x);
  const double inf = std::numeric_limits<double>::infinity();
  double s = GK::integrate(f, -inf, a, 15, 1e-14) + GK::integrate(f, b, inf, 15, 1e-14);
  if (b > a) s += GK::integrate(f, a, b, 15, 1e-14);
  return std::exp(0.5 * std::abs(x)) * s;
}

InterpolationResult interpolation_check(const SampledFunction& f, double a, double b) {
  if (!(b > 0.0) || a < b) throw Error(Errc::parameter_order, "need a >= b > 0");
  InterpolationResult r;
  const double d = f.values[f.center()] - weighted_mean(f, a);
  r.lhs = d * d;
  const auto df = gradient4(f.values, f.h);
  std::vector<double> d2(df.size());
  for (std::size_t k = 0; k < df.size(); ++k) d2[k] = df[k] * df[k];
  r.rhs = 0.5 * dot(d2, trap_weights(f, b)) / (2.0 * a - b);
  return r;
}

double GaussianSum::operator()(double y) const {
  double s = 0.0;
  for (const auto& g : bumps) {
    const double z = (y - g.center) / g.width;
    s += g.amplitude * std::exp(-0.5 * z * z);
  }
  return s;
}

std::vector<GaussianSum> random_gaussian_sums(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nb(1, 8);
  std::uniform_real_distribution<double> c(-5.0, 5.0), w(0.3, 2.0), a(-1.0, 1.0);
  std::vector<GaussianSum> out(count);
  for (auto& g : out) {
    const int k = nb(rng);
    for (int i = 0; i < k; ++i) {
      const double ci = c(rng), wi = w(rng), ai = a(rng);
      g.bumps.push_back({ci, wi, ai});
    }
  }
  return out;
}

std::vector<PoincareRow> poincare_suite(const std::vector<double>& lambdas, double chi, std::size_t count,
                                        std::uint64_t seed, double R, double h) {
  const auto fs = random_gaussian_sums(count, seed);
  std::vector<PoincareRow> rows(lambdas.size() * count);
  parallel_chunks(count, 4, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto s = sample(fs[i], R, h);
      for (std::size_t l = 0; l < lambdas.size(); ++l) {
        const auto r = poincare_check(s, {lambdas[l], chi});
        rows[l * count + i] = {lambdas[l], chi, i, r.ratio, r.lhs, r.rhs};
      }
    }
  });
  return rows;
}

std::string poincare_csv(const std::vector<PoincareRow>& rows) {
  std::string out = "lambda,chi,function_id,ratio,lhs,rhs\n";
  for (const auto& r : rows) {
    out += fmt_double(r.lambda) + ',' + fmt_double(r.chi) + ',' + std::to_string(r.function_id) + ',' +
           fmt_double(r.ratio) + ',' + fmt_double(r.lhs) + ',' + fmt_double(r.rhs) + '\n';
  }
  return out;
}

}  // namespace sks
