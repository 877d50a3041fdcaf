#pragma once

#include <string>
#include <vector>

#include "sks/field.hpp"
#include "sks/model.hpp"
#include "sks/stepper.hpp"

namespace sks {

// Lengths are given in units of 1/chi.
struct FrameOptions {
  double hy = 1e-2;             // y-grid spacing
  double radius = 40.0;         // y-grid half width
  double energy_radius = 4.0;   // window for E, F, G
  CenterMethod center = CenterMethod::interpolated;
};

// Relative perturbation in the frame of the peak: u = e^{chi|y|} rho(center + y), v = u - 1, w = v'.
struct Frame {
  double center = 0.0;
  double h = 0.0;
  std::size_t mid = 0;  // index of y = 0
  std::vector<double> y, v, w;
};

Frame moving_frame(const MassGrid& g, const ModelParams& p, const FrameOptions& opt = {});

struct Energies {
  double E = 0.0, F = 0.0, G = 0.0;
};
// weighted L2 energies of v, w and w' on |y| <= radius (in units of 1/chi)
Energies energies(const Frame& f, const ModelParams& p, double radius);

struct Conservation {
  double cons_chi = 0.0;     // <v>_chi
  double cons_lambda = 0.0;  // <w>_lambda
};
Conservation conservation_residuals(const Frame& f, const ModelParams& p);

// (r/2) * integral of f e^{-r|y|} over the frame grid
double weighted_average(const Frame& fr, const std::vector<double>& f, double r);

struct MuResult {
  double mu = 0.0;
  double denom = 0.0;      // chi + lambda v(0) - sqrt(alpha) <v>_lambda
  double denom_alt = 0.0;  // -lambda d2S(center), NaN when no grid is supplied
};
MuResult mu_of_v(const Frame& f, const ModelParams& p, const MassGrid* g = nullptr);

struct EnergyRecord {
  double t = 0.0;
  double E = 0.0, F = 0.0, G = 0.0;
  double h1_chi = 0.0;
  double x_center = 0.0;
  double xdot = 0.0;
  double cons_chi = 0.0, cons_lambda = 0.0;
  double w0 = 0.0;
  double mu = 0.0;
};

EnergyRecord make_record(double t, const MassGrid& g, const ModelParams& p, const FrameOptions& opt = {});
std::vector<EnergyRecord> make_records(const std::vector<Sample>& traj, const ModelParams& p,
                                       const FrameOptions& opt = {});

struct DissipationPoint {
  double t = 0.0;
  double r = 0.0;  // dF/dt + 2G - 2 sqrt(alpha) w(0)^2
  double F = 0.0, G = 0.0;
};
std::vector<DissipationPoint> dissipation_residual(const std::vector<EnergyRecord>& s, const ModelParams& p);

struct DissipationCheck {
  std::size_t violations = 0;
  double max_excess = 0.0;  // max of |r| - bound - slack
  double fitted_C = 0.0;    // max |r| / ((F^{1/2} + F) G)
};
// bound: C * F^{1/2} * G + slack
DissipationCheck check_dissipation(const std::vector<DissipationPoint>& r, double C, double slack);

struct RateFit {
  double gamma_fit = 0.0;
  double gamma0 = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
  double r_squared = 0.0;
  bool truncated = false;
};
// least-squares slope of log F on [t_lo, t_hi]; t_hi <= t_lo selects [T/2, T]
RateFit fit_decay_rate(const std::vector<EnergyRecord>& s, const ModelParams& p, double t_lo = 0.0,
                       double t_hi = 0.0);

std::string energies_csv(const std::vector<EnergyRecord>& s);

}  // namespace sks
