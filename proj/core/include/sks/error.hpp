#pragma once

#include <stdexcept>
#include <string>

namespace sks {

enum class Errc {
  invalid_params,
  invalid_density,
  mass_mismatch,
  unsupported_normalization,
  ordering_violation,
  unsupported,
  ambiguous_frame,
  degenerate_peak,
  step_failure,
  step_rejected,
  insufficient_data,
  parameter_order,
  profile_divergence,
  parse_error,
  io_error,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sks
