#include "sks/field.hpp"

#include <algorithm>
#include <cmath>

#include "sks/error.hpp"
#include "sks/numerics.hpp"
#include "sks/parallel.hpp"

namespace sks {

namespace {

void require_alpha(const ModelParams& p) {
  if (!(p.alpha() > 0.0)) throw Error(Errc::unsupported, "alpha = 0 has no decaying kernel; use the scl module");
}

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

// the continuous map x -> (1/2) sum_j sign(x - X_j) e^{-sqrt(alpha)|x - X_j|} delta_eta
double drift_map(const MassGrid& g, double sa, double x) {
  std::vector<double> t(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) t[j] = sgn(x - g[j]) * std::exp(-sa * std::abs(x - g[j]));
  return 0.5 * g.delta_eta() * pairwise_sum(t);
}

}  // namespace

double S_at(const MassGrid& g, const ModelParams& p, double x) {
  require_alpha(p);
  const double sa = p.sqrt_alpha();
  std::vector<double> t(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) t[j] = std::exp(-sa * std::abs(x - g[j]));
  return g.delta_eta() / (2.0 * sa) * pairwise_sum(t);
}

double dS_at(const MassGrid& g, const ModelParams& p, double x) {
  require_alpha(p);
  return -drift_map(g, p.sqrt_alpha(), x);
}

double rho_at(const MassGrid& g, double x) {
  const auto& X = g.positions();
  if (x < X.front() || x > X.back()) return 0.0;
  const auto d = reconstruct_density(g);
  const auto it = std::upper_bound(X.begin(), X.end(), x);
  if (it == X.end()) return d.rho.back();
  const std::size_t k = static_cast<std::size_t>(it - X.begin());
  const double s = (x - X[k - 1]) / (X[k] - X[k - 1]);
  return (1.0 - s) * d.rho[k - 1] + s * d.rho[k];
}

FieldSample field_at(const MassGrid& g, const ModelParams& p, double x) {
  FieldSample f;
  f.x = x;
  f.S = S_at(g, p, x);
  f.dS = dS_at(g, p, x);
  f.d2S = p.alpha() * f.S - rho_at(g, x);
  return f;
}

double grad_S_sum(const MassGrid& g, const ModelParams& p, std::size_t i) {
  require_alpha(p);
  const double sa = p.sqrt_alpha();
  std::vector<double> t(g.size(), 0.0);
  for (std::size_t j = 0; j < g.size(); ++j)
    if (j != i) t[j] = sgn(g[i] - g[j]) * std::exp(-sa * std::abs(g[i] - g[j]));
  return 0.5 * g.delta_eta() * pairwise_sum(t);
}

std::vector<double> grad_S_direct(const MassGrid& g, const ModelParams& p) {
  std::vector<double> G(g.size());
  parallel_chunks(g.size(), 64, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) G[i] = grad_S_sum(g, p, i);
  });
  return G;
}

std::vector<double> grad_S_all(const MassGrid& g, const ModelParams& p) {
  require_alpha(p);
  const double sa = p.sqrt_alpha();
  const auto& X = g.positions();
  const std::size_t n = X.size();
  // L_i = sum_{j<i} e^{-sa(X_i-X_j)}, R_i = sum_{j>i} e^{-sa(X_j-X_i)}
  std::vector<double> L(n, 0.0), R(n, 0.0), G(n);
  for (std::size_t i = 1; i < n; ++i) L[i] = std::exp(-sa * (X[i] - X[i - 1])) * (L[i - 1] + 1.0);
  for (std::size_t i = n - 1; i-- > 0;) R[i] = std::exp(-sa * (X[i + 1] - X[i])) * (R[i + 1] + 1.0);
  for (std::size_t i = 0; i < n; ++i) G[i] = 0.5 * g.delta_eta() * (L[i] - R[i]);
  return G;
}

std::vector<CriticalPoint> critical_points(const MassGrid& g, const ModelParams& p, CenterMethod method) {
  const auto G = grad_S_all(g, p);
  const auto& X = g.positions();
  const std::size_t n = X.size();
  std::vector<CriticalPoint> out;
  std::size_t i = 0;
  while (i + 1 < n) {
    const double si = sgn(G[i]);
    if (si == 0.0) {
      ++i;
      continue;
    }
    // skip a run of exact zeros to the next signed value
    std::size_t j = i + 1;
    while (j < n && G[j] == 0.0) ++j;
    if (j == n) break;
    if (sgn(G[j]) != si) {
      if (j > i + 1) {
        const std::size_t a = i + 1, b = j - 1;
        out.push_back({a == b ? X[a] : 0.5 * (X[a] + X[b]), a != b});
      } else if (method == CenterMethod::interpolated) {
        out.push_back({X[i] - G[i] * (X[j] - X[i]) / (G[j] - G[i]), false});
      } else {
        double a = X[i], b = X[j];
        const double sa = p.sqrt_alpha();
        while (b - a > 1e-10) {
          const double m = 0.5 * (a + b);
          const double gm = drift_map(g, sa, m);
          if (gm == 0.0) {
            a = b = m;
            break;
          }
          if (sgn(gm) == si) a = m;
          else b = m;
        }
        out.push_back({0.5 * (a + b), false});
      }
    }
    i = j;
  }
  return out;
}

double xdot(const MassGrid& g, const ModelParams& p, double center) {
  const auto& X = g.positions();
  const std::size_t n = X.size();
  const std::size_t k = static_cast<std::size_t>(std::upper_bound(X.begin(), X.end(), center) - X.begin());
  if (k < 2 || k + 2 > n) throw Error(Errc::degenerate_peak, "center too close to the particle support edge");
  const auto d = reconstruct_density(g);
  const double right = (d.rho[k + 1] - d.rho[k]) / (X[k + 1] - X[k]);
  const double left = (d.rho[k - 1] - d.rho[k - 2]) / (X[k - 1] - X[k - 2]);
  const double s = (center - X[k - 1]) / (X[k] - X[k - 1]);
  const double rho_c = (1.0 - s) * d.rho[k - 1] + s * d.rho[k];
  const double d2S = p.alpha() * S_at(g, p, center) - rho_c;
  if (!(d2S < 0.0)) throw Error(Errc::degenerate_peak, "d2S >= 0 at the center");
  return (right + left) / (2.0 * d2S);
}

}  // namespace sks
