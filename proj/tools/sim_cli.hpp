#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sks/diagnostics.hpp"
#include "sks/scl.hpp"

namespace sks::cli {

enum class Mode { simulate, poincare, scl, rates };

std::optional<Mode> mode_from_string(const std::string& s);
const char* mode_name(Mode m);

struct RunConfig {
  Mode mode = Mode::simulate;
  // model
  double chi = 1.0;
  double alpha = 1.0;
  std::size_t n = 400;
  double dt = 1e-2;
  double t_final = 20.0;
  int sample_every = 10;
  std::string initial_condition = "equilibrium";
  double shift = 1.0;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  // frame and energies, lengths in units of 1/chi
  double frame_hy = 1e-2;
  double frame_radius = 40.0;
  double energy_radius = 4.0;
  CenterMethod center_method = CenterMethod::interpolated;
  double fit_t_lo = 0.0;  // 0,0 selects [T/2, T]
  double fit_t_hi = 0.0;
  // inequality suite
  std::size_t function_count = 200;
  std::uint64_t seed = 42;
  std::vector<double> lambdas{1.0, 1.5, 3.0, 10.0};
  double poincare_radius = 40.0;
  double poincare_h = 1e-2;
  // conservation-law limit
  ResponseSpec response{ResponseSpec::Kind::smooth_tanh, 10.0, 2.0};
  double scl_L = 20.0;
  double scl_dx = 0.02;
  double scl_dt = 0.01;
  double scl_t_final = 50.0;
  std::string scl_initial = "perturbed";
  double scl_shift = 1.0;
  int scl_sample_every = 10;
  int profile_every = 1000;

  std::filesystem::path output_dir = "out";
};

// key = value lines, '#' starts a comment. `mode` may come from the text or from the caller;
// if both are given they must agree.
RunConfig parse_config(const std::string& text, std::optional<Mode> mode = std::nullopt);

// 0 success, 1 invariant violation, 2 I/O failure, 3 numerical failure
int run_mode(const RunConfig& cfg, std::ostream& log);

}  // namespace sks::cli
