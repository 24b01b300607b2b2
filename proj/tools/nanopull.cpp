// nanopull command-line front end.
//
//   nanopull conductivity --sweep f0,f1,n       surface response table
//   nanopull solve  [--config c.json]           per-node current / field CSV
//   nanopull force  [--method all]              axial force, chosen methods
//   nanopull sweep  --config fig3.json --out x  parameter sweep to CSV/JSON
//   nanopull presets list|show NAME             shipped configurations

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "nanopull/conductivity.hpp"
#include "nanopull/config.hpp"
#include "nanopull/errors.hpp"
#include "nanopull/force.hpp"
#include "nanopull/green.hpp"
#include "nanopull/kernel.hpp"
#include "nanopull/solver.hpp"
#include "nanopull/sweep.hpp"

namespace {

using namespace nanopull;
using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

struct ConfigSource {
  std::string path;    // --config
  std::string preset_name;  // --preset
  Config get() const {
    if (!path.empty() && !preset_name.empty())
      throw ConfigError("--config and --preset are mutually exclusive");
    if (!path.empty()) return load_config(path);
    if (!preset_name.empty()) return preset(preset_name);
    return Config{};
  }
  void attach(CLI::App* app) {
    app->add_option("--config", path, "JSON config file");
    app->add_option("--preset", preset_name, "named preset (see `presets list`)");
  }
};

void print_warnings(const Config& c) {
  for (const std::string& w : validity_warnings(c))
    std::cerr << "warning: " << w << "\n";
}

SolveOptions solve_options(const Config& c) {
  SolveOptions opt;
  opt.n_segments = c.n_segments;
  opt.form = c.kernel_form == "spectral" ? KernelForm::Spectral
                                         : KernelForm::Singular;
  opt.local_override = c.local_override;
  return opt;
}

json solution_metadata(const Config& c, const Solution& sol) {
  json meta;
  meta["config"] = json::parse(dump_config(c));
  meta["sign_convention"] = SolveOptions{}.lambda_sign > 0 ? "plus" : "minus";
  meta["residual"] = sol.residual_rel;
  meta["sigma_S"] = {sol.sigma.real(), sol.sigma.imag()};
  meta["alpha_per_m"] = {sol.alpha.real(), sol.alpha.imag()};
  meta["n_segments"] = static_cast<int>(sol.z.size());
  return meta;
}

// --- conductivity -----------------------------------------------------------

int run_conductivity(const ConfigSource& src, const std::string& sweep_arg,
                     const std::string& out_path) {
  const Config c = src.get();
  print_warnings(c);
  const CntSystem sys = system_from(c);

  double f0 = c.frequency_thz, f1 = c.frequency_thz;
  int n = 1;
  if (!sweep_arg.empty()) {
    char comma1 = 0, comma2 = 0;
    std::istringstream in(sweep_arg);
    if (!(in >> f0 >> comma1 >> f1 >> comma2 >> n) || comma1 != ',' ||
        comma2 != ',' || n < 1 || f1 < f0)
      throw ConfigError("--sweep expects f_start,f_end,n with f_start <= f_end");
  }

  std::ostringstream csv;
  csv << "f_THz,Re_sigma_inter_S,Im_sigma_inter_S,"
         "Re_sigma_intra_S,Im_sigma_intra_S,"
         "Re_xi_S_m2,Im_xi_S_m2,abs_alpha_L\n";
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? f0 : f0 + (f1 - f0) * i / (n - 1);
    const double omega = 2.0 * constants::pi * f * 1e12;
    const Conductivity cond = evaluate_conductivity(omega, sys);
    csv << fmt(f) << ',' << fmt(cond.sigma_inter.real()) << ','
        << fmt(cond.sigma_inter.imag()) << ',' << fmt(cond.sigma_intra.real())
        << ',' << fmt(cond.sigma_intra.imag()) << ',' << fmt(cond.xi.real())
        << ',' << fmt(cond.xi.imag()) << ','
        << fmt(std::abs(cond.alpha) * sys.half_length) << '\n';
  }
  if (out_path.empty())
    std::cout << csv.str();
  else
    write_file(out_path, csv.str());
  return 0;
}

// --- solve ------------------------------------------------------------------

void dump_green_csv(const Solution& sol, const std::string& path) {
  const double L = sol.half_length;
  const TubeGreen tg{sol.k, sol.radius};
  std::ostringstream csv;
  csv << "dz_nm,Re_g_m,Im_g_m,Re_G,Im_G\n";
  const int n = 401;
  for (int i = 0; i < n; ++i) {
    const double dz = -2.0 * L + 4.0 * L * i / (n - 1);
    const cplx g = line_green(sol.alpha, L, 0.0, std::clamp(dz, -L, L));
    const cplx G = tg.value(dz);
    csv << fmt(dz * 1e9) << ',' << fmt(g.real()) << ',' << fmt(g.imag()) << ','
        << fmt(G.real()) << ',' << fmt(G.imag()) << '\n';
  }
  write_file(path, csv.str());
}

void dump_kernel_csv(const Config& c, const Solution& sol,
                     const std::string& path) {
  KernelParams kp;
  kp.alpha = sol.alpha;
  kp.half_length = sol.half_length;
  kp.k = sol.k;
  kp.radius = sol.radius;
  const SolveOptions opt = solve_options(c);
  const KernelMatrix km =
      opt.local_override
          ? assemble_kernel_local(opt.n_segments, kp, *opt.local_override * kp.alpha)
          : assemble_kernel(opt.n_segments, kp, opt.form);
  std::ostringstream csv;
  csv << "i,j,z_i_nm,s_j_nm,Re_K,Im_K\n";
  for (int i = 0; i < km.n; ++i)
    for (int j = 0; j < km.n; ++j)
      csv << i << ',' << j << ',' << fmt(km.mid(i) * 1e9) << ','
          << fmt(km.mid(j) * 1e9) << ',' << fmt(km.a(i, j).real()) << ','
          << fmt(km.a(i, j).imag()) << '\n';
  write_file(path, csv.str());
}

int run_solve(const ConfigSource& src, const std::string& out_path,
              const std::string& green_path, const std::string& kernel_path) {
  const Config c = src.get();
  print_warnings(c);
  const CntSystem sys = system_from(c);
  const Excitation exc = excitation_from(c);
  const Conductivity cond = evaluate_conductivity(exc.omega, sys);
  const Solution sol = solve_current(sys, exc, cond, solve_options(c));

  std::ostringstream out;
  out << "# " << solution_metadata(c, sol).dump() << "\n";
  out << "z_nm,Re_jz_A_per_m,Im_jz_A_per_m,Re_Ez_V_per_m,Im_Ez_V_per_m\n";
  for (int i = 0; i < sol.z.size(); ++i)
    out << fmt(sol.z(i) * 1e9) << ',' << fmt(sol.current(i).real()) << ','
        << fmt(sol.current(i).imag()) << ',' << fmt(sol.efield(i).real()) << ','
        << fmt(sol.efield(i).imag()) << '\n';
  if (out_path.empty())
    std::cout << out.str();
  else
    write_file(out_path, out.str());

  if (!green_path.empty()) dump_green_csv(sol, green_path);
  if (!kernel_path.empty()) dump_kernel_csv(c, sol, kernel_path);
  return 0;
}

// --- force ------------------------------------------------------------------

int run_force(const ConfigSource& src, const std::string& method) {
  const Config c = src.get();
  print_warnings(c);
  const CntSystem sys = system_from(c);
  const Excitation exc = excitation_from(c);
  const Conductivity cond = evaluate_conductivity(exc.omega, sys);

  const bool all = method == "all";
  json out;
  out["f_THz"] = c.frequency_thz;
  out["sign_convention"] = SolveOptions{}.lambda_sign > 0 ? "plus" : "minus";
  if (all || method == "numeric") {
    const Solution sol = solve_current(sys, exc, cond, solve_options(c));
    out["Fz_N_numeric"] = force_numeric(sol);
    out["Fz_fN_numeric"] = force_numeric(sol) * 1e15;
    out["residual"] = sol.residual_rel;
  }
  if (all || method == "analytic") {
    const double f = force_analytic(sys, exc, cond.sigma, cond.alpha);
    out["Fz_N_analytic"] = f;
    out["Fz_fN_analytic"] = f * 1e15;
  }
  if (all || method == "local") {
    const double f = force_local(sys, exc, cond.sigma);
    out["Fz_N_local"] = f;
    out["Fz_fN_local"] = f * 1e15;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

// --- sweep ------------------------------------------------------------------

int run_sweep_cmd(const ConfigSource& src, const std::string& out_path,
                  const std::string& json_path) {
  const Config c = src.get();
  if (!c.sweep)
    throw ConfigError("sweep subcommand needs a config with a \"sweep\" block");
  print_warnings(c);
  const SweepResult r = run_sweep(c);
  write_file(out_path, sweep_csv(r));
  if (!json_path.empty()) write_file(json_path, sweep_json(r));

  int failed = 0;
  for (const SweepRow& row : r.rows)
    if (!row.ok) {
      ++failed;
      std::cerr << "point " << fmt(row.axis_value) << " failed: " << row.error
                << "\n";
    }
  std::cerr << r.rows.size() - failed << "/" << r.rows.size()
            << " points ok -> " << out_path << "\n";
  return failed == 0 ? 0 : 1;
}

// --- presets ----------------------------------------------------------------

int run_presets(const std::string& action, const std::string& name,
                const std::string& out_path) {
  if (action == "list") {
    for (const std::string& n : preset_names()) std::cout << n << "\n";
    return 0;
  }
  if (action == "show") {
    if (name.empty()) throw ConfigError("presets show needs a preset name");
    const std::string text = dump_config(preset(name)) + "\n";
    if (out_path.empty())
      std::cout << text;
    else
      write_file(out_path, text);
    return 0;
  }
  throw ConfigError("unknown presets action: " + action + " (list | show)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optical force on a finite nonlocal nanotube"};
  app.require_subcommand(1);

  ConfigSource csrc_cond, csrc_solve, csrc_force, csrc_sweep;
  std::string cond_sweep, cond_out;
  auto* cmd_cond =
      app.add_subcommand("conductivity", "surface response vs frequency");
  csrc_cond.attach(cmd_cond);
  cmd_cond->add_option("--sweep", cond_sweep, "f_start,f_end,n in THz");
  cmd_cond->add_option("--out", cond_out, "output CSV (default stdout)");

  std::string solve_out, dump_green, dump_kernel;
  auto* cmd_solve =
      app.add_subcommand("solve", "surface current and field on the tube");
  csrc_solve.attach(cmd_solve);
  cmd_solve->add_option("--out", solve_out, "output CSV (default stdout)");
  cmd_solve->add_option("--dump-green", dump_green,
                        "also write sampled g and G tables to this CSV");
  cmd_solve->add_option("--dump-kernel", dump_kernel,
                        "also write the assembled kernel matrix to this CSV");

  std::string force_method = "all";
  auto* cmd_force = app.add_subcommand("force", "axial optical force");
  csrc_force.attach(cmd_force);
  cmd_force
      ->add_option("--method", force_method, "numeric|analytic|local|all")
      ->check(CLI::IsMember({"numeric", "analytic", "local", "all"}));

  std::string sweep_out, sweep_json_out;
  auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  csrc_sweep.attach(cmd_sweep);
  cmd_sweep->add_option("--out", sweep_out, "output CSV")->required();
  cmd_sweep->add_option("--json", sweep_json_out, "also write a JSON result");

  std::string presets_action, presets_name, presets_out;
  auto* cmd_presets = app.add_subcommand("presets", "shipped configurations");
  cmd_presets->add_option("action", presets_action, "list | show")->required();
  cmd_presets->add_option("name", presets_name, "preset name (for show)");
  cmd_presets->add_option("--out", presets_out, "write JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_cond->parsed())
      return run_conductivity(csrc_cond, cond_sweep, cond_out);
    if (cmd_solve->parsed())
      return run_solve(csrc_solve, solve_out, dump_green, dump_kernel);
    if (cmd_force->parsed()) return run_force(csrc_force, force_method);
    if (cmd_sweep->parsed())
      return run_sweep_cmd(csrc_sweep, sweep_out, sweep_json_out);
    if (cmd_presets->parsed())
      return run_presets(presets_action, presets_name, presets_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
