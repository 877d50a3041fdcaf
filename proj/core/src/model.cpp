#include "sks/model.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "sks/error.hpp"

namespace sks {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::invalid_params: return "invalid-params";
    case Errc::invalid_density: return "invalid-density";
    case Errc::mass_mismatch: return "mass-mismatch";
    case Errc::unsupported_normalization: return "unsupported-normalization";
    case Errc::ordering_violation: return "ordering-violation";
    case Errc::unsupported: return "unsupported";
    case Errc::ambiguous_frame: return "ambiguous-frame";
    case Errc::degenerate_peak: return "degenerate-peak";
    case Errc::step_failure: return "step-failure";
    case Errc::step_rejected: return "step-rejected";
    case Errc::insufficient_data: return "insufficient-data";
    case Errc::parameter_order: return "parameter-order";
    case Errc::profile_divergence: return "profile-divergence";
    case Errc::parse_error: return "parse-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

ModelParams::ModelParams(double chi, double alpha, double mass)
    : chi_(chi), alpha_(alpha), sqrt_alpha_(std::sqrt(alpha)), mass_(mass > 0.0 ? mass : 2.0 / chi),
      lambda_(chi + std::sqrt(alpha)) {
  if (!(chi > 0.0) || !std::isfinite(chi)) throw Error(Errc::invalid_params, "chi must be positive");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error(Errc::invalid_params, "alpha must be non-negative");
  if (mass < 0.0 || !std::isfinite(mass)) throw Error(Errc::invalid_params, "mass must be positive");
}

double ModelParams::gamma0() const {
  return chi_ * chi_ / 8.0 * (chi_ + sqrt_alpha_) / (chi_ / 2.0 + sqrt_alpha_);
}

bool strictly_increasing(std::span<const double> x) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) return false;
  return true;
}

MassGrid::MassGrid(double delta_eta, std::vector<double> positions)
    : delta_eta_(delta_eta), x_(std::move(positions)) {
  if (!(delta_eta > 0.0)) throw Error(Errc::invalid_params, "delta_eta must be positive");
  if (!strictly_increasing(x_)) throw Error(Errc::ordering_violation, "positions not strictly increasing");
}

MassGrid MassGrid::translated(double a) const {
  std::vector<double> y(x_);
  for (double& v : y) v += a;
  return MassGrid(delta_eta_, std::move(y));
}

MassGrid MassGrid::mirrored() const {
  std::vector<double> y(x_.rbegin(), x_.rend());
  for (double& v : y) v = -v;
  return MassGrid(delta_eta_, std::move(y));
}

DensitySampler equilibrium_density(const ModelParams& p, double shift) {
  const double chi = p.chi();
  return {[chi, shift](double y) { return std::exp(-chi * std::abs(y - shift)); },
          shift - 40.0 / chi, shift + 40.0 / chi, {shift}};
}

DensitySampler two_peaks_density(const ModelParams& p) {
  const double c = p.mass() / (1.7 * std::sqrt(std::numbers::pi / 2.0));
  return {[c](double y) {
            return c * (std::exp(-2.0 * (y + 3.0) * (y + 3.0)) + 0.7 * std::exp(-2.0 * (y - 2.0) * (y - 2.0)));
          },
          -15.0, 15.0, {}};
}

DensitySampler tabulated_density(std::vector<double> y, std::vector<double> rho, const ModelParams&) {
  if (y.size() < 2 || y.size() != rho.size()) throw Error(Errc::invalid_density, "need >= 2 (y, rho) rows");
  if (!strictly_increasing(y)) throw Error(Errc::invalid_density, "y column must be strictly increasing");
  for (double r : rho)
    if (!(r >= 0.0) || !std::isfinite(r)) throw Error(Errc::invalid_density, "negative or non-finite density");
  const double lo = y.front(), hi = y.back();
  std::vector<double> br(y);
  auto f = [y = std::move(y), rho = std::move(rho)](double t) {
    if (t < y.front() || t > y.back()) return 0.0;
    if (t == y.back()) return rho.back();
    const auto it = std::upper_bound(y.begin(), y.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - y.begin()) - 1;
    const double s = (t - y[i]) / (y[i + 1] - y[i]);
    return (1.0 - s) * rho[i] + s * rho[i + 1];
  };
  return {std::move(f), lo, hi, std::move(br)};
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double integrate(const DensitySampler& s, double a, double b) {
  if (b <= a) return 0.0;
  // panels are narrow and kinks sit on panel edges, so little refinement is needed;
  // a deep limit would chase relative accuracy in underflowing tails
  return GK::integrate(s.rho, a, b, 4, 1e-13);
}

std::vector<double> panel_edges(const DensitySampler& s) {
  constexpr int panels = 2048;
  std::vector<double> e;
  e.reserve(panels + 1 + s.breaks.size());
  for (int k = 0; k <= panels; ++k) e.push_back(s.lo + (s.hi - s.lo) * k / panels);
  for (double b : s.breaks)
    if (b > s.lo && b < s.hi) e.push_back(b);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

void check_sampler(const DensitySampler& s, const std::vector<double>& edges) {
  if (!(s.hi > s.lo)) throw Error(Errc::invalid_density, "empty support");
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    for (double t : {edges[k], 0.5 * (edges[k] + edges[k + 1])}) {
      const double r = s.rho(t);
      if (!(r >= 0.0) || !std::isfinite(r)) throw Error(Errc::invalid_density, "negative or non-finite density");
    }
  }
}

}  // namespace

double sampler_mass(const DensitySampler& s) {
  const auto e = panel_edges(s);
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < e.size(); ++k) m += integrate(s, e[k], e[k + 1]);
  return m;
}

MassGrid init_grid_from_density(const DensitySampler& rho0, std::size_t n, const ModelParams& p) {
  if (n < 3) throw Error(Errc::invalid_params, "need at least 3 particles");
  const auto e = panel_edges(rho0);
  check_sampler(rho0, e);
  std::vector<double> cum(e.size(), 0.0);
  for (std::size_t k = 0; k + 1 < e.size(); ++k) cum[k + 1] = cum[k] + integrate(rho0, e[k], e[k + 1]);
  const double total = cum.back();
  if (!std::isfinite(total) || !(total > 0.0)) throw Error(Errc::invalid_density, "density not integrable");
  if (std::abs(total - p.mass()) > 1e-6 * p.mass())
    throw Error(Errc::mass_mismatch, "density mass " + std::to_string(total) + " vs " + std::to_string(p.mass()));

  // targets are scaled to the quadrature total so the last particle stays inside the support
  const double de = p.mass() / static_cast<double>(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = (static_cast<double>(i) + 0.5) / static_cast<double>(n) * total;
    std::size_t k = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin());
    k = std::clamp<std::size_t>(k, 1, cum.size() - 1) - 1;
    double a = e[k], b = e[k + 1];
    const double rest = target - cum[k];
    const double left = e[k];
    while (b - a > 1e-12) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (integrate(rho0, left, m) < rest) a = m;
      else b = m;
    }
    x[i] = 0.5 * (a + b);
  }
  if (!strictly_increasing(x)) throw Error(Errc::ordering_violation, "inverse CDF not strictly increasing");
  return MassGrid(de, std::move(x));
}

MassGrid equilibrium_grid(const ModelParams& p, std::size_t n) {
  if (n < 3) throw Error(Errc::invalid_params, "need at least 3 particles");
  const double chi = p.chi();
  if (std::abs(p.mass() - 2.0 / chi) > 1e-12 * p.mass())
    throw Error(Errc::unsupported_normalization, "equilibrium grid needs mass 2/chi");
  const double de = p.mass() / static_cast<double>(n);
  std::vector<double> x(n);
  // left half from the closed form, right half by reflection so antisymmetry is exact
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double eta = (static_cast<double>(i) + 0.5) * de;
    x[i] = std::log(chi * eta) / chi;
    x[n - 1 - i] = -x[i];
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  return MassGrid(de, std::move(x));
}

DensityProfile reconstruct_density(const MassGrid& g) {
  const auto& x = g.positions();
  const std::size_t n = x.size();
  if (!strictly_increasing(x)) throw Error(Errc::ordering_violation, "positions not strictly increasing");
  const double de = g.delta_eta();
  DensityProfile d{x, std::vector<double>(n)};
  d.rho[0] = de / (x[1] - x[0]);
  d.rho[n - 1] = de / (x[n - 1] - x[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) d.rho[i] = 2.0 * de / (x[i + 1] - x[i - 1]);
  return d;
}

}  // namespace sks
