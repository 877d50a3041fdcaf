#pragma once

#include <string>
#include <vector>

namespace sks {

struct ResponseSpec {
  enum class Kind { stiff_sign, smooth_tanh };
  Kind kind = Kind::stiff_sign;
  double k = 10.0;      // steepness of the tanh response
  double v_max = 2.0;   // velocities in (-v_max, v_max)

  double chi() const { return 0.5 * v_max; }
  double phi(double x) const;      // response, odd and non-increasing
  double Phi(double x) const;      // antiderivative with Phi(0) = 0
};

// f(r) = -(1/|V|) int_V Phi(v r) dv by the midpoint rule on 2048 velocity nodes
double flux_from_response(const ResponseSpec& spec, double r);
// f'(r) = -(1/|V|) int_V v phi(v r) dv, same rule
double flux_derivative(const ResponseSpec& spec, double r);

// Flux tabulated on [0, r_max] (f is even) with cubic Hermite interpolation from exact
// node values and slopes, so repeated evaluation avoids the velocity quadrature.
class FluxTable {
 public:
  FluxTable(const ResponseSpec& spec, double r_max, std::size_t nodes = 4097);
  double operator()(double r) const;
  double derivative(double r) const;
  double lipschitz() const { return lip_; }

 private:
  double h_;
  std::vector<double> f_, df_;
  double lip_;
};

struct SCLState {
  double L = 0.0, dx = 0.0;
  double z_minus = 0.0, z_plus = 0.0;  // far field at -L and +L
  std::vector<double> z;

  double x(std::size_t k) const { return -L + static_cast<double>(k) * dx; }
  std::size_t size() const { return z.size(); }
};

// Z' = f(Z) - f(1/chi) from Z(anchor) = 0 by RK4, outward in both directions
SCLState stationary_profile(const ResponseSpec& spec, double chi, double L, double dx);
// Z(x - a) at the nodes of `grid`, by cubic Hermite interpolation of the profile and its ODE slope
SCLState shifted_profile(const SCLState& zinf, const ResponseSpec& spec, double chi, double a);

// explicit Godunov flux + implicit Euler diffusion, Dirichlet far field
SCLState step_scl(const SCLState& s, const FluxTable& f, double dt);

struct ShiftResult {
  double h = 0.0;
  bool truncation_warning = false;
};
ShiftResult shift_h(const SCLState& z0, const SCLState& zinf, double chi);

double l1_distance(const SCLState& a, const SCLState& b);

struct SCLRecord {
  double t, l1_distance, mass_residual;
};
struct SCLRun {
  double h = 0.0;
  std::vector<SCLRecord> series;
  std::vector<std::pair<double, SCLState>> profiles;
  double max_increase = 0.0;  // largest per-step growth of the L1 distance
};
// distance to Z(. - h), h from the initial state; mass_residual is the drift of the shift
SCLRun l1_convergence_run(const SCLState& z0, const ResponseSpec& spec, double t_final, double dt,
                          int sample_every, int profile_every = 0);

std::string scl_run_csv(const std::vector<SCLRecord>& s);
std::string profile_csv(const SCLState& s);

}  // namespace sks
