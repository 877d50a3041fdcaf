#include "sim_cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "sks/error.hpp"
#include "sks/field.hpp"
#include "sks/inequalities.hpp"
#include "sks/io.hpp"
#include "sks/stepper.hpp"

namespace sks::cli {

std::optional<Mode> mode_from_string(const std::string& s) {
  if (s == "simulate") return Mode::simulate;
  if (s == "poincare") return Mode::poincare;
  if (s == "scl") return Mode::scl;
  if (s == "rates") return Mode::rates;
  return std::nullopt;
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::simulate: return "simulate";
    case Mode::poincare: return "poincare";
    case Mode::scl: return "scl";
    case Mode::rates: return "rates";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, std::size_t line) {
  double d = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), d);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(d)) fail(line, "malformed number '" + v + "'");
  return d;
}

double positive(const std::string& v, std::size_t line) {
  const double d = to_double(v, line);
  if (!(d > 0.0)) fail(line, "value must be positive, got '" + v + "'");
  return d;
}

long positive_int(const std::string& v, std::size_t line) {
  long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) fail(line, "malformed integer '" + v + "'");
  if (x <= 0) fail(line, "value must be positive, got '" + v + "'");
  return x;
}

}  // namespace

RunConfig parse_config(const std::string& text, std::optional<Mode> mode) {
  RunConfig c;
  std::optional<Mode> file_mode;
  std::size_t mode_line = 0;
  using Setter = std::function<void(const std::string&, std::size_t)>;
  const std::map<std::string, Setter> keys{
      {"mode", [&](const std::string& v, std::size_t l) {
         file_mode = mode_from_string(v);
         if (!file_mode) fail(l, "unknown mode '" + v + "'");
         mode_line = l;
       }},
      {"chi", [&](const std::string& v, std::size_t l) { c.chi = positive(v, l); }},
      {"alpha", [&](const std::string& v, std::size_t l) {
         c.alpha = to_double(v, l);
         if (c.alpha < 0.0) fail(l, "alpha must be non-negative");
       }},
      {"n", [&](const std::string& v, std::size_t l) {
         c.n = static_cast<std::size_t>(positive_int(v, l));
         if (c.n < 3) fail(l, "n must be at least 3");
       }},
      {"dt", [&](const std::string& v, std::size_t l) { c.dt = positive(v, l); }},
      {"t_final", [&](const std::string& v, std::size_t l) { c.t_final = positive(v, l); }},
      {"sample_every", [&](const std::string& v, std::size_t l) { c.sample_every = static_cast<int>(positive_int(v, l)); }},
      {"initial_condition", [&](const std::string& v, std::size_t l) {
         if (v.empty()) fail(l, "empty initial_condition");
         c.initial_condition = v;
       }},
      {"shift", [&](const std::string& v, std::size_t l) { c.shift = to_double(v, l); }},
      {"newton_tol", [&](const std::string& v, std::size_t l) { c.newton_tol = positive(v, l); }},
      {"newton_max_iter", [&](const std::string& v, std::size_t l) { c.newton_max_iter = static_cast<int>(positive_int(v, l)); }},
      {"frame_hy", [&](const std::string& v, std::size_t l) { c.frame_hy = positive(v, l); }},
      {"frame_radius", [&](const std::string& v, std::size_t l) { c.frame_radius = positive(v, l); }},
      {"energy_radius", [&](const std::string& v, std::size_t l) { c.energy_radius = positive(v, l); }},
      {"center_method", [&](const std::string& v, std::size_t l) {
         if (v == "interpolated") c.center_method = CenterMethod::interpolated;
         else if (v == "bisection") c.center_method = CenterMethod::bisection;
         else fail(l, "center_method must be interpolated or bisection");
       }},
      {"fit_t_lo", [&](const std::string& v, std::size_t l) { c.fit_t_lo = positive(v, l); }},
      {"fit_t_hi", [&](const std::string& v, std::size_t l) { c.fit_t_hi = positive(v, l); }},
      {"function_count", [&](const std::string& v, std::size_t l) { c.function_count = static_cast<std::size_t>(positive_int(v, l)); }},
      {"seed", [&](const std::string& v, std::size_t l) { c.seed = static_cast<std::uint64_t>(positive_int(v, l)); }},
      {"lambdas", [&](const std::string& v, std::size_t l) {
         c.lambdas.clear();
         std::stringstream ss(v);
         for (std::string item; std::getline(ss, item, ',');) c.lambdas.push_back(positive(trim(item), l));
         if (c.lambdas.empty()) fail(l, "empty lambda list");
       }},
      {"poincare_radius", [&](const std::string& v, std::size_t l) { c.poincare_radius = positive(v, l); }},
      {"poincare_h", [&](const std::string& v, std::size_t l) { c.poincare_h = positive(v, l); }},
      {"response", [&](const std::string& v, std::size_t l) {
         if (v == "stiff_sign") c.response.kind = ResponseSpec::Kind::stiff_sign;
         else if (v == "smooth_tanh") c.response.kind = ResponseSpec::Kind::smooth_tanh;
         else fail(l, "response must be stiff_sign or smooth_tanh");
       }},
      {"response_k", [&](const std::string& v, std::size_t l) { c.response.k = positive(v, l); }},
      {"v_max", [&](const std::string& v, std::size_t l) { c.response.v_max = positive(v, l); }},
      {"scl_L", [&](const std::string& v, std::size_t l) { c.scl_L = positive(v, l); }},
      {"scl_dx", [&](const std::string& v, std::size_t l) { c.scl_dx = positive(v, l); }},
      {"scl_dt", [&](const std::string& v, std::size_t l) { c.scl_dt = positive(v, l); }},
      {"scl_t_final", [&](const std::string& v, std::size_t l) { c.scl_t_final = positive(v, l); }},
      {"scl_initial", [&](const std::string& v, std::size_t l) {
         if (v != "shifted" && v != "step" && v != "perturbed") fail(l, "scl_initial must be shifted, step or perturbed");
         c.scl_initial = v;
       }},
      {"scl_shift", [&](const std::string& v, std::size_t l) { c.scl_shift = to_double(v, l); }},
      {"scl_sample_every", [&](const std::string& v, std::size_t l) { c.scl_sample_every = static_cast<int>(positive_int(v, l)); }},
      {"profile_every", [&](const std::string& v, std::size_t l) { c.profile_every = static_cast<int>(positive_int(v, l)); }},
      {"output_dir", [&](const std::string& v, std::size_t l) {
         if (v.empty()) fail(l, "empty output_dir");
         c.output_dir = v;
       }},
  };

  std::stringstream in(text);
  std::size_t ln = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++ln;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ln, "expected key = value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) fail(ln, "unknown key '" + key + "'");
    it->second(val, ln);
  }
  if (mode && file_mode && *mode != *file_mode) fail(mode_line, "mode conflicts with the command line");
  if (!mode && !file_mode) fail(ln, "missing mode");
  c.mode = mode ? *mode : *file_mode;
  if (c.fit_t_hi > 0.0 && c.fit_t_hi <= c.fit_t_lo) fail(ln, "fit_t_hi must exceed fit_t_lo");
  return c;
}

namespace {

struct Summary {
  std::vector<std::pair<std::string, std::string>> kv;
  std::vector<FileRecord> files;
  void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
  void add(const std::string& k, double v) { kv.emplace_back(k, fmt_double(v)); }
  std::string text() const {
    std::string s;
    for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
    s += "files=" + std::to_string(files.size()) + "\n";
    for (const auto& f : files) {
      s += "file." + f.name + ".rows=" + std::to_string(f.rows) + "\n";
      s += "file." + f.name + ".crc32=" + f.crc32 + "\n";
    }
    return s;
  }
};

MassGrid initial_grid(const RunConfig& c, const ModelParams& p) {
  const std::string& ic = c.initial_condition;
  if (ic == "equilibrium") return equilibrium_grid(p, c.n);
  if (ic == "two_peaks") return init_grid_from_density(two_peaks_density(p), c.n, p);
  if (ic == "shifted") return init_grid_from_density(equilibrium_density(p, c.shift), c.n, p);
  std::vector<double> y, rho;
  read_two_column_csv(ic, "y", "rho", y, rho);
  return init_grid_from_density(tabulated_density(std::move(y), std::move(rho), p), c.n, p);
}

std::string trajectory_csv(const std::vector<Sample>& traj) {
  std::string out = "t,i,x,rho\n";
  for (const auto& s : traj) {
    const auto d = reconstruct_density(s.grid);
    for (std::size_t i = 0; i < d.x.size(); ++i)
      out += fmt_double(s.t) + ',' + std::to_string(i) + ',' + fmt_double(d.x[i]) + ',' + fmt_double(d.rho[i]) + '\n';
  }
  return out;
}

int simulate(const RunConfig& c, bool rates_only, Summary& sum, std::ostream& log) {
  const ModelParams p(c.chi, c.alpha);
  if (p.alpha() == 0.0) throw Error(Errc::unsupported, "alpha = 0: run the scl mode instead");
  const MassGrid g0 = initial_grid(c, p);
  StepConfig sc;
  sc.dt = c.dt;
  sc.newton_tol = c.newton_tol;
  sc.newton_max_iter = c.newton_max_iter;

  // critical-point count after every step; once unique it should stay unique
  std::vector<std::pair<double, std::size_t>> counts{{0.0, critical_points(g0, p, c.center_method).size()}};
  const auto traj = run(g0, p, sc, c.t_final, c.sample_every, [&](double t, const MassGrid& g) {
    counts.emplace_back(t, critical_points(g, p, c.center_method).size());
  });
  bool reached = false, stayed = true;
  for (const auto& [t, k] : counts) {
    if (k == 1) reached = true;
    else if (reached) stayed = false;
  }

  FrameOptions fo{c.frame_hy, c.frame_radius, c.energy_radius, c.center_method};
  std::vector<Sample> single;
  for (const auto& s : traj)
    if (critical_points(s.grid, p, c.center_method).size() == 1) single.push_back(s);
  const auto recs = make_records(single, p, fo);

  const bool mass_ok = traj.back().grid.total_mass() == g0.total_mass();
  double max_cv = 0.0, max_cw = 0.0;
  std::size_t chain_violations = 0;
  for (const auto& r : recs) {
    max_cv = std::max(max_cv, std::abs(r.cons_chi));
    max_cw = std::max(max_cw, std::abs(r.cons_lambda));
    const double k = 4.0 / (p.chi() * p.chi());
    if (r.F > k * r.G * 1.05 || r.E > k * r.F * 1.05) ++chain_violations;
  }

  sum.add("n", std::to_string(c.n));
  sum.add("chi", p.chi());
  sum.add("alpha", p.alpha());
  sum.add("dt", c.dt);
  sum.add("t_final", c.t_final);
  sum.add("initial_condition", c.initial_condition);
  sum.add("mass_conserved", mass_ok ? "true" : "false");
  sum.add("critical_count_initial", std::to_string(counts.front().second));
  sum.add("critical_count_final", std::to_string(counts.back().second));
  sum.add("critical_count_max", std::to_string(std::max_element(counts.begin(), counts.end(), [](auto& a, auto& b) {
                                                 return a.second < b.second;
                                               })->second));
  sum.add("single_peak_stays_single", stayed ? "true" : "false");
  sum.add("records", std::to_string(recs.size()));
  sum.add("max_abs_cons_chi", max_cv);
  sum.add("max_abs_cons_lambda", max_cw);
  sum.add("poincare_chain_violations", std::to_string(chain_violations));
  if (recs.size() >= 2) {
    try {
      const auto fit = fit_decay_rate(recs, p, c.fit_t_lo, c.fit_t_hi);
      sum.add("gamma_fit", fit.gamma_fit);
      sum.add("gamma0", fit.gamma0);
      sum.add("fit_t_lo", fit.t_lo);
      sum.add("fit_t_hi", fit.t_hi);
      sum.add("fit_r_squared", fit.r_squared);
      sum.add("fit_truncated", fit.truncated ? "true" : "false");
    } catch (const Error& e) {
      log << "warning: rate fit skipped: " << e.what() << "\n";
      sum.add("gamma0", p.gamma0());
    }
  }
  if (!recs.empty()) {
    sum.add("final_F", recs.back().F);
    sum.add("final_x_center", recs.back().x_center);
  }

  const auto& out = c.output_dir;
  sum.files.push_back(write_csv_file(out, "energies.csv", energies_csv(recs)));
  if (!rates_only) {
    sum.files.push_back(write_csv_file(out, "trajectory.csv", trajectory_csv(traj)));
    std::string cc = "t,count\n";
    for (const auto& [t, k] : counts) cc += fmt_double(t) + ',' + std::to_string(k) + '\n';
    sum.files.push_back(write_csv_file(out, "critical_counts.csv", cc));
  }
  log << mode_name(c.mode) << ": " << recs.size() << " records, " << counts.size() - 1 << " steps\n";
  return mass_ok ? 0 : 1;
}

int poincare(const RunConfig& c, Summary& sum, std::ostream& log) {
  const auto rows = poincare_suite(c.lambdas, c.chi, c.function_count, c.seed, c.poincare_radius, c.poincare_h);
  double worst = 0.0;
  std::size_t bad = 0;
  for (const auto& r : rows) {
    worst = std::max(worst, r.ratio);
    if (!(r.ratio <= 1.0 + 1e-3)) ++bad;
  }
  sum.add("functions", std::to_string(c.function_count));
  sum.add("seed", std::to_string(c.seed));
  sum.add("max_ratio", worst);
  sum.add("ratio_violations", std::to_string(bad));
  sum.files.push_back(write_csv_file(c.output_dir, "poincare_report.csv", poincare_csv(rows)));
  log << "poincare: " << rows.size() << " ratios, max " << worst << "\n";
  return bad == 0 ? 0 : 1;
}

SCLState scl_initial_state(const RunConfig& c, const SCLState& zinf) {
  const double chi = c.response.chi(), zb = 1.0 / chi;
  if (c.scl_initial == "shifted") return shifted_profile(zinf, c.response, chi, c.scl_shift);
  SCLState z = zinf;
  if (c.scl_initial == "step") {
    for (std::size_t k = 0; k < z.size(); ++k) z.z[k] = z.x(k) < c.scl_shift ? zb : -zb;
    z.z.back() = -zb;
    return z;
  }
  // shifted profile plus a localized bump, clipped into the far-field band
  z = shifted_profile(zinf, c.response, chi, c.scl_shift);
  for (std::size_t k = 1; k + 1 < z.size(); ++k) {
    const double x = z.x(k) - c.scl_shift;
    z.z[k] = std::clamp(z.z[k] + 0.5 * zb * std::exp(-x * x), -zb, zb);
  }
  return z;
}

int scl(const RunConfig& c, Summary& sum, std::ostream& log) {
  const ResponseSpec& rs = c.response;
  const double chi = rs.chi();
  const SCLState zinf = stationary_profile(rs, chi, c.scl_L, c.scl_dx);
  const FluxTable f(rs, 1.5 / chi);

  // rate of change of the profile under one discrete step, on |x| <= L/2 so the truncated
  // far field does not dominate
  const SCLState once = step_scl(zinf, f, c.scl_dt);
  double stat = 0.0;
  for (std::size_t k = 0; k < zinf.size(); ++k)
    if (std::abs(zinf.x(k)) <= 0.5 * c.scl_L) stat = std::max(stat, std::abs(once.z[k] - zinf.z[k]) / c.scl_dt);
  sum.add("response", rs.kind == ResponseSpec::Kind::stiff_sign ? "stiff_sign" : "smooth_tanh");
  sum.add("chi", chi);
  sum.add("stationary_step_residual", stat);
  if (rs.kind == ResponseSpec::Kind::stiff_sign) {
    double err = 0.0;
    for (std::size_t k = 0; k < zinf.size(); ++k) {
      const double x = zinf.x(k);
      const double exact = -((x > 0) - (x < 0)) * (1.0 - std::exp(-chi * std::abs(x))) / chi;
      err = std::max(err, std::abs(zinf.z[k] - exact));
    }
    sum.add("closed_form_error", err);
  }

  const SCLState z0 = scl_initial_state(c, zinf);
  const auto r = l1_convergence_run(z0, rs, c.scl_t_final, c.scl_dt, c.scl_sample_every, c.profile_every);
  std::vector<SCLRecord> rows{{-1.0, stat, 0.0}};
  rows.insert(rows.end(), r.series.begin(), r.series.end());
  const double d0 = r.series.front().l1_distance, d1 = r.series.back().l1_distance;
  sum.add("shift_h", r.h);
  sum.add("l1_initial", d0);
  sum.add("l1_final", d1);
  sum.add("l1_max_step_increase", r.max_increase);
  sum.add("stationary_row", "t=-1");
  sum.files.push_back(write_csv_file(c.output_dir, "scl_run.csv", scl_run_csv(rows)));
  for (const auto& [t, s] : r.profiles) {
    std::string tag = fmt_double(t);
    sum.files.push_back(write_csv_file(c.output_dir, "z_profile_" + tag + ".csv", profile_csv(s)));
  }
  log << "scl: h = " << r.h << ", L1 " << d0 << " -> " << d1 << "\n";
  return r.max_increase <= 1e-6 ? 0 : 1;
}

}  // namespace

int run_mode(const RunConfig& c, std::ostream& log) {
  Summary sum;
  sum.add("mode", mode_name(c.mode));
  int status = 0;
  try {
    switch (c.mode) {
      case Mode::simulate: status = simulate(c, false, sum, log); break;
      case Mode::rates: status = simulate(c, true, sum, log); break;
      case Mode::poincare: status = poincare(c, sum, log); break;
      case Mode::scl: status = scl(c, sum, log); break;
    }
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::io_error: return 2;
      case Errc::step_failure:
      case Errc::step_rejected:
      case Errc::ordering_violation:
      case Errc::profile_divergence:
      case Errc::degenerate_peak:
      case Errc::ambiguous_frame: status = 3; break;
      default: status = 1; break;
    }
    sum.add("error", e.what());
  }
  sum.add("exit_status", std::to_string(status));
  try {
    write_csv_file(c.output_dir, "summary.txt", sum.text());
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}

}  // namespace sks::cli
