#include "sks/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "sks/error.hpp"
#include "sks/io.hpp"
#include "sks/numerics.hpp"
#include "sks/parallel.hpp"

namespace sks {

Frame moving_frame(const MassGrid& g, const ModelParams& p, const FrameOptions& opt) {
  const auto cps = critical_points(g, p, opt.center);
  if (cps.size() != 1)
    throw Error(Errc::ambiguous_frame, std::to_string(cps.size()) + " critical points, need exactly one");
  const double chi = p.chi();
  Frame f;
  f.center = cps.front().x;
  f.h = opt.hy / chi;
  const auto m = static_cast<std::size_t>(std::llround(opt.radius / opt.hy));
  f.mid = m;

  // endpoint densities come from one-sided differences and are off by O(1); only interior nodes enter u
  const auto d = reconstruct_density(g);
  const std::size_t n = g.size();
  std::vector<double> yk, uk;
  yk.reserve(n - 2);
  uk.reserve(n - 2);
  // a density whose stencil straddles the peak averages across the kink of e^{-chi|y|}; its u
  // value is off by O(gap) and the spline would turn that into a spike in w
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d.x[i - 1] < f.center && d.x[i + 1] > f.center) continue;
    const double y = d.x[i] - f.center;
    yk.push_back(y);
    uk.push_back(std::exp(chi * std::abs(y)) * d.rho[i]);
  }
  const CubicSpline u(std::move(yk), std::move(uk));

  f.y.resize(2 * m + 1);
  f.v.resize(2 * m + 1);
  for (std::size_t k = 0; k <= 2 * m; ++k) {
    f.y[k] = (static_cast<double>(k) - static_cast<double>(m)) * f.h;
    f.v[k] = u(f.y[k]) - 1.0;
  }
  f.w = gradient(f.v, f.h);
  return f;
}

namespace {

double weighted_trapezoid(const Frame& fr, const std::vector<double>& f, double r, double radius) {
  std::vector<double> t;
  t.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k)
    if (std::abs(fr.y[k]) <= radius * (1.0 + 1e-12)) t.push_back(f[k] * std::exp(-r * std::abs(fr.y[k])));
  return trapezoid(t, fr.h);
}

}  // namespace

Energies energies(const Frame& f, const ModelParams& p, double radius) {
  const double chi = p.chi(), R = radius / chi;
  const auto dw = gradient(f.w, f.h);
  std::vector<double> v2(f.v.size()), w2(f.v.size()), dw2(f.v.size());
  for (std::size_t k = 0; k < f.v.size(); ++k) {
    v2[k] = f.v[k] * f.v[k];
    w2[k] = f.w[k] * f.w[k];
    dw2[k] = dw[k] * dw[k];
  }
  return {0.5 * weighted_trapezoid(f, v2, chi, R), 0.5 * weighted_trapezoid(f, w2, chi, R),
          0.5 * weighted_trapezoid(f, dw2, chi, R)};
}

double weighted_average(const Frame& fr, const std::vector<double>& f, double r) {
  return 0.5 * r * weighted_trapezoid(fr, f, r, std::numeric_limits<double>::infinity());
}

Conservation conservation_residuals(const Frame& f, const ModelParams& p) {
  return {weighted_average(f, f.v, p.chi()), weighted_average(f, f.w, p.lambda())};
}

MuResult mu_of_v(const Frame& f, const ModelParams& p, const MassGrid* g) {
  MuResult r;
  const double lam = p.lambda();
  r.denom = p.chi() + lam * f.v[f.mid] - p.sqrt_alpha() * weighted_average(f, f.v, lam);
  r.denom_alt = std::numeric_limits<double>::quiet_NaN();
  if (g) r.denom_alt = -lam * field_at(*g, p, f.center).d2S;
  if (!(std::abs(r.denom) > 1e-8)) throw Error(Errc::degenerate_peak, "mu denominator vanishes");
  r.mu = lam * f.w[f.mid] / r.denom;
  return r;
}

EnergyRecord make_record(double t, const MassGrid& g, const ModelParams& p, const FrameOptions& opt) {
  const Frame f = moving_frame(g, p, opt);
  const Energies e = energies(f, p, opt.energy_radius);
  const Conservation c = conservation_residuals(f, p);
  EnergyRecord r;
  r.t = t;
  r.E = e.E;
  r.F = e.F;
  r.G = e.G;
  r.h1_chi = std::sqrt(2.0 * e.E + 2.0 * e.F);
  r.x_center = f.center;
  try {
    r.xdot = xdot(g, p, f.center);
  } catch (const Error&) {
    r.xdot = std::numeric_limits<double>::quiet_NaN();
  }
  r.cons_chi = c.cons_chi;
  r.cons_lambda = c.cons_lambda;
  r.w0 = f.w[f.mid];
  r.mu = mu_of_v(f, p).mu;
  return r;
}

std::vector<EnergyRecord> make_records(const std::vector<Sample>& traj, const ModelParams& p,
                                       const FrameOptions& opt) {
  std::vector<EnergyRecord> out(traj.size());
  parallel_chunks(traj.size(), 1, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = make_record(traj[i].t, traj[i].grid, p, opt);
  });
  return out;
}

std::vector<DissipationPoint> dissipation_residual(const std::vector<EnergyRecord>& s, const ModelParams& p) {
  if (s.size() < 3) throw Error(Errc::insufficient_data, "need at least 3 samples");
  std::vector<DissipationPoint> out;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double dF = (s[k + 1].F - s[k - 1].F) / (s[k + 1].t - s[k - 1].t);
    out.push_back({s[k].t, dF + 2.0 * s[k].G - 2.0 * p.sqrt_alpha() * s[k].w0 * s[k].w0, s[k].F, s[k].G});
  }
  return out;
}

DissipationCheck check_dissipation(const std::vector<DissipationPoint>& r, double C, double slack) {
  DissipationCheck c;
  c.max_excess = -std::numeric_limits<double>::infinity();
  for (const auto& d : r) {
    const double excess = std::abs(d.r) - C * std::sqrt(d.F) * d.G - slack;
    c.max_excess = std::max(c.max_excess, excess);
    if (excess > 0.0) ++c.violations;
    const double denom = (std::sqrt(d.F) + d.F) * d.G;
    if (denom > 0.0) c.fitted_C = std::max(c.fitted_C, std::abs(d.r) / denom);
  }
  return c;
}

RateFit fit_decay_rate(const std::vector<EnergyRecord>& s, const ModelParams& p, double t_lo, double t_hi) {
  RateFit r;
  r.gamma0 = p.gamma0();
  if (s.empty()) throw Error(Errc::insufficient_data, "empty series");
  if (t_hi <= t_lo) {
    t_hi = s.back().t;
    t_lo = 0.5 * t_hi;
  }
  std::vector<double> ts, ls;
  double f_start = 0.0;
  for (const auto& e : s) {
    if (e.t < t_lo - 1e-12 || e.t > t_hi + 1e-12) continue;
    if (ts.empty()) f_start = e.F;
    // machine floor: stop the window where F stops carrying information
    if (!(e.F > 0.0) || e.F < 1e-13 * f_start) {
      r.truncated = true;
      break;
    }
    ts.push_back(e.t);
    ls.push_back(std::log(e.F));
  }
  if (ts.size() < 2) throw Error(Errc::insufficient_data, "fewer than two usable samples in the window");
  r.t_lo = ts.front();
  r.t_hi = ts.back();
  const double nn = static_cast<double>(ts.size());
  double mt = 0, ml = 0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    mt += ts[k];
    ml += ls[k];
  }
  mt /= nn;
  ml /= nn;
  double stt = 0, stl = 0, sll = 0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    stt += (ts[k] - mt) * (ts[k] - mt);
    stl += (ts[k] - mt) * (ls[k] - ml);
    sll += (ls[k] - ml) * (ls[k] - ml);
  }
  const double slope = stl / stt;
  r.gamma_fit = -slope / 2.0;
  r.r_squared = sll > 0.0 ? stl * stl / (stt * sll) : 1.0;
  return r;
}

std::string energies_csv(const std::vector<EnergyRecord>& s) {
  std::string out = "t,E,F,G,h1_chi,x_center,xdot,cons_chi,cons_lambda,w0,mu\n";
  for (const auto& r : s)
    out += csv_row({r.t, r.E, r.F, r.G, r.h1_chi, r.x_center, r.xdot, r.cons_chi, r.cons_lambda, r.w0, r.mu});
  return out;
}

}  // namespace sks
