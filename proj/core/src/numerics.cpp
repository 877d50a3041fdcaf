#include "sks/numerics.hpp"

#include <algorithm>

#include "sks/error.hpp"

namespace sks {

void thomas_solve(std::span<const double> sub, std::span<double> diag,
                  std::span<const double> sup, std::span<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw Error(Errc::invalid_params, "spline needs >= 2 matching knots");
  if (n == 2) return;
  // second derivatives at interior knots, natural ends
  const std::size_t k = n - 2;
  std::vector<double> sub(k), dia(k), sup(k), rhs(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    sub[i - 1] = h0 / 6.0;
    dia[i - 1] = (h0 + h1) / 3.0;
    sup[i - 1] = h1 / 6.0;
    rhs[i - 1] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
  }
  thomas_solve(sub, dia, sup, rhs);
  std::copy(rhs.begin(), rhs.end(), m_.begin() + 1);
}

double CubicSpline::operator()(double t) const {
  if (t <= x_.front()) return y_.front();
  if (t >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double trapezoid(std::span<const double> f, double h) {
  if (f.size() < 2) return 0.0;
  std::vector<double> t(f.begin(), f.end());
  t.front() *= 0.5;
  t.back() *= 0.5;
  return h * pairwise_sum(t);
}

std::vector<double> gradient(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (f[1] - f[0]) / h;
  d[n - 1] = (f[n - 1] - f[n - 2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  return d;
}

std::vector<double> gradient4(std::span<const double> f, double h) {
  auto d = gradient(f, h);
  const std::size_t n = f.size();
  for (std::size_t i = 2; i + 2 < n; ++i) d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  return d;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

}  // namespace sks
