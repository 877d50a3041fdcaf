#pragma once

#include <functional>
#include <vector>

#include "sks/model.hpp"

namespace sks {

struct StepConfig {
  double dt = 1e-2;
  // max-norm residual tolerance, scaled by 1 + max|X| + max(dt/gap) (the size of the largest term)
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  double damping = 0.5;
  // false switches the sign drift off (pure diffusion); the model itself requires chi > 0
  bool drift = true;
};

struct StepStats {
  int iterations = 0;
  double residual = 0.0;
};

// One implicit-Euler step of the diffusion with the sign drift frozen at the old positions.
MassGrid step(const MassGrid& g, const ModelParams& p, const StepConfig& cfg, StepStats* stats = nullptr);

struct Sample {
  double t;
  MassGrid grid;
};

// Called after every accepted step; throwing aborts the run.
using StepObserver = std::function<void(double t, const MassGrid&)>;

// Samples every `sample_every` steps plus the final state. A failed step is retried as
// two half steps, recursively, at most 5 halvings deep.
std::vector<Sample> run(const MassGrid& g0, const ModelParams& p, const StepConfig& cfg, double t_final,
                        int sample_every, const StepObserver& observer = {});

}  // namespace sks
