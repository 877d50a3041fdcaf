#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sks {

// chi: chemosensitivity, alpha: chemical decay. mass defaults to 2/chi.
class ModelParams {
 public:
  explicit ModelParams(double chi = 1.0, double alpha = 1.0, double mass = 0.0);

  double chi() const { return chi_; }
  double alpha() const { return alpha_; }
  double sqrt_alpha() const { return sqrt_alpha_; }
  double mass() const { return mass_; }
  double lambda() const { return lambda_; }
  // theoretical decay-rate bound for F
  double gamma0() const;

 private:
  double chi_, alpha_, sqrt_alpha_, mass_, lambda_;
};

// Inverse CDF sampled at mass midpoints (i+1/2)*delta_eta.
class MassGrid {
 public:
  MassGrid(double delta_eta, std::vector<double> positions);

  double delta_eta() const { return delta_eta_; }
  std::size_t size() const { return x_.size(); }
  double total_mass() const { return delta_eta_ * static_cast<double>(x_.size()); }
  const std::vector<double>& positions() const { return x_; }
  double operator[](std::size_t i) const { return x_[i]; }

  MassGrid translated(double a) const;
  MassGrid mirrored() const;

 private:
  double delta_eta_;
  std::vector<double> x_;
};

struct DensityProfile {
  std::vector<double> x;
  std::vector<double> rho;
};

// Density on a finite support [lo, hi]; the sampler is only queried there.
struct DensitySampler {
  std::function<double(double)> rho;
  double lo = -40.0;
  double hi = 40.0;
  // known kink locations help the quadrature; optional
  std::vector<double> breaks;
};

DensitySampler equilibrium_density(const ModelParams& p, double shift = 0.0);
DensitySampler two_peaks_density(const ModelParams& p);
// piecewise-linear interpolant of a tabulated (y, rho) set; its mass must already be p.mass()
DensitySampler tabulated_density(std::vector<double> y, std::vector<double> rho,
                                 const ModelParams& p);

double sampler_mass(const DensitySampler& s);

MassGrid init_grid_from_density(const DensitySampler& rho0, std::size_t n,
                                const ModelParams& p);
MassGrid equilibrium_grid(const ModelParams& p, std::size_t n);
DensityProfile reconstruct_density(const MassGrid& g);

bool strictly_increasing(std::span<const double> x);

}  // namespace sks
