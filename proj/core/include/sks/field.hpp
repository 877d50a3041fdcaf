#pragma once

#include <vector>

#include "sks/model.hpp"

namespace sks {

struct FieldSample {
  double x = 0.0;
  double S = 0.0;
  double dS = 0.0;
  double d2S = 0.0;  // alpha*S - rho
};

double S_at(const MassGrid& g, const ModelParams& p, double x);
// dS/dx at a point that is not a particle position
double dS_at(const MassGrid& g, const ModelParams& p, double x);
// rho(x) by linear interpolation of reconstruct_density; zero outside the particles
double rho_at(const MassGrid& g, double x);
FieldSample field_at(const MassGrid& g, const ModelParams& p, double x);

// G_i = (1/2) sum_{j != i} sign(X_i - X_j) exp(-sqrt(alpha)|X_i - X_j|) delta_eta, so dS/dx(X_i) = -G_i
double grad_S_sum(const MassGrid& g, const ModelParams& p, std::size_t i);
// all G_i by the direct pairwise sum, O(N^2), parallel over i
std::vector<double> grad_S_direct(const MassGrid& g, const ModelParams& p);
// all G_i by the two-sided exponential recursion, O(N)
std::vector<double> grad_S_all(const MassGrid& g, const ModelParams& p);

enum class CenterMethod {
  interpolated,  // zero of the piecewise-linear interpolant of G between particles
  bisection,     // bisection on the continuous point-mass map
};

struct CriticalPoint {
  double x = 0.0;
  bool plateau = false;
};

std::vector<CriticalPoint> critical_points(const MassGrid& g, const ModelParams& p,
                                           CenterMethod method = CenterMethod::interpolated);

// peak velocity from one-sided density slopes and the elliptic identity
double xdot(const MassGrid& g, const ModelParams& p, double center);

}  // namespace sks
