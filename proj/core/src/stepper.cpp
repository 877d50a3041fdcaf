#include "sks/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "sks/error.hpp"
#include "sks/field.hpp"
#include "sks/numerics.hpp"

namespace sks {

namespace {

void residual(const std::vector<double>& y, const std::vector<double>& x, const std::vector<double>& drift,
              double dt, std::vector<double>& F) {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) F[i] = y[i] - x[i] + drift[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double q = dt / (y[i + 1] - y[i]);
    F[i] += q;
    F[i + 1] -= q;
  }
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s);
}

double norm_inf(const std::vector<double>& v) {
  double s = 0.0;
  for (double a : v) s = std::max(s, std::abs(a));
  return s;
}

double term_scale(const std::vector<double>& y, double dt) {
  double s = 1.0 + std::max(std::abs(y.front()), std::abs(y.back()));
  double q = 0.0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) q = std::max(q, dt / (y[i + 1] - y[i]));
  return s + q;
}

}  // namespace

MassGrid step(const MassGrid& g, const ModelParams& p, const StepConfig& cfg, StepStats* stats) {
  if (cfg.dt < 0.0 || !(cfg.newton_tol > 0.0)) throw Error(Errc::invalid_params, "bad step config");
  if (cfg.dt == 0.0) return g;
  const double dt = cfg.dt;
  const auto& x = g.positions();
  const std::size_t n = x.size();

  std::vector<double> drift(n, 0.0);
  if (cfg.drift) {
    const auto G = grad_S_all(g, p);
    for (std::size_t i = 0; i < n; ++i) drift[i] = p.chi() * dt * ((G[i] > 0.0) - (G[i] < 0.0));
  }

  std::vector<double> y(x), F(n), trial(n), Ft(n), sub(n), dia(n), sup(n), d(n);
  residual(y, x, drift, dt, F);
  for (int it = 0; it <= cfg.newton_max_iter; ++it) {
    const double tol = cfg.newton_tol * term_scale(y, dt);
    const double rinf = norm_inf(F);
    if (rinf <= tol) {
      if (stats) *stats = {it, rinf};
      return MassGrid(g.delta_eta(), std::move(y));
    }
    if (it == cfg.newton_max_iter) break;

    // Jacobian: I + dt * (graph Laplacian with weights 1/gap^2), symmetric positive definite
    std::fill(dia.begin(), dia.end(), 1.0);
    std::fill(sub.begin(), sub.end(), 0.0);
    std::fill(sup.begin(), sup.end(), 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double gap = y[i + 1] - y[i];
      const double c = dt / (gap * gap);
      dia[i] += c;
      dia[i + 1] += c;
      sup[i] = -c;
      sub[i + 1] = -c;
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = -F[i];
    thomas_solve(sub, dia, sup, d);

    const double n0 = norm2(F);
    double t = 1.0;
    bool accepted = false;
    while (t >= 1e-10) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = y[i] + t * d[i];
      if (strictly_increasing(trial)) {
        residual(trial, x, drift, dt, Ft);
        if (norm2(Ft) <= (1.0 - 1e-4 * t) * n0) {
          accepted = true;
          break;
        }
      }
      t *= cfg.damping;
    }
    if (!accepted) {
      // rounding floor: no descent direction left, accept if within 100x tolerance
      if (rinf <= 100.0 * tol) {
        if (stats) *stats = {it, rinf};
        return MassGrid(g.delta_eta(), std::move(y));
      }
      throw Error(Errc::step_failure, "line search failed, residual " + std::to_string(rinf));
    }
    y.swap(trial);
    F.swap(Ft);
  }
  throw Error(Errc::step_failure, "Newton did not converge in " + std::to_string(cfg.newton_max_iter) +
                                      " iterations, residual " + std::to_string(norm_inf(F)));
}

namespace {

MassGrid advance(const MassGrid& g, const ModelParams& p, StepConfig cfg, int depth) {
  try {
    return step(g, p, cfg);
  } catch (const Error& e) {
    if (e.code() != Errc::step_failure || depth >= 5) throw;
    cfg.dt *= 0.5;
    return advance(advance(g, p, cfg, depth + 1), p, cfg, depth + 1);
  }
}

}  // namespace

std::vector<Sample> run(const MassGrid& g0, const ModelParams& p, const StepConfig& cfg, double t_final,
                        int sample_every, const StepObserver& observer) {
  if (t_final < 0.0 || !(cfg.dt > 0.0)) throw Error(Errc::invalid_params, "need t_final >= 0 and dt > 0");
  sample_every = std::max(sample_every, 1);
  std::vector<Sample> out{{0.0, g0}};
  const long nsteps = static_cast<long>(std::ceil(t_final / cfg.dt - 1e-9));
  MassGrid g = g0;
  for (long k = 1; k <= nsteps; ++k) {
    StepConfig c = cfg;
    const double t0 = static_cast<double>(k - 1) * cfg.dt;
    const double t1 = std::min(t_final, static_cast<double>(k) * cfg.dt);
    c.dt = t1 - t0;
    g = advance(g, p, c, 0);
    if (observer) observer(t1, g);
    if (k % sample_every == 0 || k == nsteps) out.push_back({t1, g});
  }
  return out;
}

}  // namespace sks
