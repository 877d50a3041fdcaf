#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sim_cli.hpp"
#include "sks/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sign-advection Keller-Segel workbench"};
  std::string mode, config, out;
  app.add_option("mode", mode, "simulate | poincare | scl | rates")->required();
  app.add_option("--config", config, "key = value configuration file")->required();
  app.add_option("--out", out, "output directory (overrides output_dir)");
  CLI11_PARSE(app, argc, argv);

  const auto m = sks::cli::mode_from_string(mode);
  if (!m) {
    std::cerr << "unknown mode '" << mode << "'\n";
    return 4;
  }
  std::ifstream is(config);
  if (!is) {
    std::cerr << "cannot read " << config << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << is.rdbuf();

  sks::cli::RunConfig cfg;
  try {
    cfg = sks::cli::parse_config(ss.str(), m);
  } catch (const sks::Error& e) {
    std::cerr << config << ": " << e.what() << "\n";
    return 4;
  }
  if (!out.empty()) cfg.output_dir = out;
  return sks::cli::run_mode(cfg, std::cerr);
}
