#include "sks/scl.hpp"

#include <algorithm>
#include <cmath>

#include "sks/error.hpp"
#include "sks/io.hpp"
#include "sks/numerics.hpp"

namespace sks {

double ResponseSpec::phi(double x) const {
  if (kind == Kind::stiff_sign) return -static_cast<double>((x > 0.0) - (x < 0.0));
  return -std::tanh(k * x);
}

double ResponseSpec::Phi(double x) const {
  if (kind == Kind::stiff_sign) return -std::abs(x);
  // -log(cosh(kx))/k without overflow
  const double a = std::abs(k * x);
  return -(a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0)) / k;
}

namespace {
constexpr int kVelocityNodes = 2048;
}

double flux_from_response(const ResponseSpec& spec, double r) {
  const double dv = 2.0 * spec.v_max / kVelocityNodes;
  double s = 0.0;
  for (int i = 0; i < kVelocityNodes; ++i) {
    const double v = -spec.v_max + (i + 0.5) * dv;
    s += spec.Phi(v * r);
  }
  return -s * dv / (2.0 * spec.v_max);
}

double flux_derivative(const ResponseSpec& spec, double r) {
  const double dv = 2.0 * spec.v_max / kVelocityNodes;
  double s = 0.0;
  for (int i = 0; i < kVelocityNodes; ++i) {
    const double v = -spec.v_max + (i + 0.5) * dv;
    s += v * spec.phi(v * r);
  }
  return -s * dv / (2.0 * spec.v_max);
}

FluxTable::FluxTable(const ResponseSpec& spec, double r_max, std::size_t nodes)
    : h_(r_max / static_cast<double>(nodes - 1)), f_(nodes), df_(nodes), lip_(0.0) {
  for (std::size_t i = 0; i < nodes; ++i) {
    const double r = static_cast<double>(i) * h_;
    f_[i] = flux_from_response(spec, r);
    df_[i] = flux_derivative(spec, r);
    lip_ = std::max(lip_, std::abs(df_[i]));
  }
  // |f'| <= (1/|V|) int |v| dv = chi for any response bounded by 1
  lip_ = std::max(lip_, spec.chi());
}

double FluxTable::operator()(double r) const {
  const double a = std::abs(r);
  const double t = a / h_;
  const auto i = std::min(static_cast<std::size_t>(t), f_.size() - 2);
  if (a > h_ * static_cast<double>(f_.size() - 1)) throw Error(Errc::invalid_params, "flux table range exceeded");
  const double s = t - static_cast<double>(i);
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * f_[i] + (s3 - 2 * s2 + s) * h_ * df_[i] + (-2 * s3 + 3 * s2) * f_[i + 1] +
         (s3 - s2) * h_ * df_[i + 1];
}

double FluxTable::derivative(double r) const {
  const double a = std::abs(r);
  const double t = a / h_;
  const auto i = std::min(static_cast<std::size_t>(t), f_.size() - 2);
  const double s = t - static_cast<double>(i);
  const double s2 = s * s;
  const double d = ((6 * s2 - 6 * s) * f_[i] + (3 * s2 - 4 * s + 1) * h_ * df_[i] + (-6 * s2 + 6 * s) * f_[i + 1] +
                    (3 * s2 - 2 * s) * h_ * df_[i + 1]) /
                   h_;
  return r < 0.0 ? -d : d;
}

namespace {

std::size_t node_count(double L, double dx) {
  if (!(L > 0.0) || !(dx > 0.0)) throw Error(Errc::invalid_params, "need L > 0 and dx > 0");
  const double m = L / dx;
  if (std::abs(m - std::round(m)) > 1e-9 * m) throw Error(Errc::invalid_params, "L must be a multiple of dx");
  return static_cast<std::size_t>(std::llround(m));
}

}  // namespace

SCLState stationary_profile(const ResponseSpec& spec, double chi, double L, double dx) {
  const std::size_t m = node_count(L, dx);
  const double zb = 1.0 / chi;
  const FluxTable f(spec, 1.5 * zb);
  const double fb = f(zb);
  auto rhs = [&](double z) { return f(z) - fb; };
  SCLState s{L, dx, zb, -zb, std::vector<double>(2 * m + 1, 0.0)};
  s.z[m] = 0.0;
  for (int dir : {1, -1}) {
    const double h = dir * dx;
    const double target = dir > 0 ? -zb : zb;
    double z = 0.0;
    bool clamped = false;
    for (std::size_t j = 1; j <= m; ++j) {
      if (!clamped) {
        const double k1 = rhs(z), k2 = rhs(z + 0.5 * h * k1), k3 = rhs(z + 0.5 * h * k2), k4 = rhs(z + h * k3);
        z += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        if (std::abs(z) > zb * (1.0 + 1e-12))
          throw Error(Errc::profile_divergence, "profile left the far-field band");
        if (std::abs(z - target) <= 1e-14) {
          z = target;
          clamped = true;
        }
      }
      s.z[dir > 0 ? m + j : m - j] = z;
    }
  }
  return s;
}

SCLState shifted_profile(const SCLState& zinf, const ResponseSpec& spec, double chi, double a) {
  const double zb = 1.0 / chi;
  const FluxTable f(spec, 1.5 * zb);
  const double fb = f(zb);
  SCLState out = zinf;
  const std::size_t n = zinf.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (zinf.x(k) - a + zinf.L) / zinf.dx;
    if (t <= 0.0) {
      out.z[k] = zinf.z.front();
      continue;
    }
    if (t >= static_cast<double>(n - 1)) {
      out.z[k] = zinf.z.back();
      continue;
    }
    const auto i = static_cast<std::size_t>(t);
    const double s = t - static_cast<double>(i);
    const double z0 = zinf.z[i], z1 = zinf.z[i + 1];
    const double d0 = (f(z0) - fb) * zinf.dx, d1 = (f(z1) - fb) * zinf.dx;
    const double s2 = s * s, s3 = s2 * s;
    out.z[k] = (2 * s3 - 3 * s2 + 1) * z0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * z1 + (s3 - s2) * d1;
  }
  return out;
}

SCLState step_scl(const SCLState& s, const FluxTable& f, double dt) {
  if (dt * f.lipschitz() > s.dx * (1.0 + 1e-12))
    throw Error(Errc::step_rejected, "CFL violated: dt * max|f'| > dx");
  const std::size_t n = s.size();
  std::vector<double> flux(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k)
    flux[k] = std::max(f(std::max(s.z[k], 0.0)), f(std::min(s.z[k + 1], 0.0)));
  const std::size_t m = n - 2;
  const double mu = dt / (s.dx * s.dx);
  std::vector<double> sub(m, -mu), dia(m, 1.0 + 2.0 * mu), sup(m, -mu), rhs(m);
  for (std::size_t k = 1; k + 1 < n; ++k) rhs[k - 1] = s.z[k] - dt / s.dx * (flux[k] - flux[k - 1]);
  rhs.front() += mu * s.z_minus;
  rhs.back() += mu * s.z_plus;
  thomas_solve(sub, dia, sup, rhs);
  SCLState out = s;
  out.z.front() = s.z_minus;
  out.z.back() = s.z_plus;
  std::copy(rhs.begin(), rhs.end(), out.z.begin() + 1);
  return out;
}

ShiftResult shift_h(const SCLState& z0, const SCLState& zinf, double chi) {
  if (z0.size() != zinf.size()) throw Error(Errc::invalid_params, "grids differ");
  std::vector<double> d(z0.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = z0.z[k] - zinf.z[k];
  return {0.5 * chi * trapezoid(d, z0.dx), std::abs(d.front()) > 1e-8 || std::abs(d.back()) > 1e-8};
}

double l1_distance(const SCLState& a, const SCLState& b) {
  std::vector<double> d(a.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::abs(a.z[k] - b.z[k]);
  return trapezoid(d, a.dx);
}

SCLRun l1_convergence_run(const SCLState& z0, const ResponseSpec& spec, double t_final, double dt,
                          int sample_every, int profile_every) {
  const double chi = spec.chi();
  const double zb = 1.0 / chi;
  for (double v : z0.z)
    if (v > zb * (1.0 + 1e-12) || v < -zb * (1.0 + 1e-12))
      throw Error(Errc::invalid_params, "initial state outside the far-field band");
  const SCLState zinf = stationary_profile(spec, chi, z0.L, z0.dx);
  const FluxTable f(spec, 1.5 * zb);
  SCLRun run;
  run.h = shift_h(z0, zinf, chi).h;
  const SCLState target = shifted_profile(zinf, spec, chi, run.h);
  sample_every = std::max(sample_every, 1);
  const long nsteps = std::lround(t_final / dt);
  SCLState z = z0;
  double prev = l1_distance(z, target);
  run.series.push_back({0.0, prev, 0.0});
  if (profile_every > 0) run.profiles.emplace_back(0.0, z);
  for (long k = 1; k <= nsteps; ++k) {
    z = step_scl(z, f, dt);
    const double d = l1_distance(z, target);
    run.max_increase = std::max(run.max_increase, d - prev);
    prev = d;
    const double t = static_cast<double>(k) * dt;
    if (k % sample_every == 0 || k == nsteps) run.series.push_back({t, d, shift_h(z, zinf, chi).h - run.h});
    if (profile_every > 0 && (k % profile_every == 0 || k == nsteps)) run.profiles.emplace_back(t, z);
  }
  return run;
}

std::string scl_run_csv(const std::vector<SCLRecord>& s) {
  std::string out = "t,l1_distance,mass_residual\n";
  for (const auto& r : s) out += csv_row({r.t, r.l1_distance, r.mass_residual});
  return out;
}

std::string profile_csv(const SCLState& s) {
  std::string out = "x,z\n";
  for (std::size_t k = 0; k < s.size(); ++k) out += csv_row({s.x(k), s.z[k]});
  return out;
}

}  // namespace sks
