#include "nanopull/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "nanopull/errors.hpp"
#include "nanopull/solver.hpp"

namespace nanopull {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool has_method(const Config& c, const std::string& m) {
  return std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end();
}

Config apply_axis(const Config& base, SweepAxis axis, double value) {
  Config c = base;
  switch (axis) {
    case SweepAxis::Frequency: c.frequency_thz = value; break;
    case SweepAxis::ChemicalPotential: c.mu_ev = value; break;
    case SweepAxis::HalfLength: c.half_length_nm = value; break;
    case SweepAxis::IncidenceAngle: c.theta0_deg = value; break;
  }
  return c;
}

SolveOptions solve_options(const Config& c) {
  SolveOptions so;
  so.n_segments = c.n_segments;
  so.form = c.kernel_form == "spectral" ? KernelForm::Spectral
                                        : KernelForm::Singular;
  so.local_override = c.local_override;
  return so;
}

// One sweep point. shared_km, if non-null, is a kernel assembled once for the
// whole sweep (valid when the axis does not change alpha, L, k or R).
SweepRow eval_point(const Config& base, SweepAxis axis, double value,
                    const KernelMatrix* shared_km) {
  SweepRow row;
  row.axis_value = value;
  std::string errs;
  auto note = [&errs](const std::string& what, const std::exception& e) {
    if (!errs.empty()) errs += "; ";
    errs += what + ": " + e.what();
  };
  try {
    const Config c = apply_axis(base, axis, value);
    const CntSystem sys = system_from(c);
    const Excitation exc = excitation_from(c);
    const Conductivity cond = evaluate_conductivity(exc.omega, sys);
    row.sigma = cond.sigma;
    row.xi = cond.xi;
    row.alpha = cond.alpha;
    row.near_edge = cond.near_edge;
    const cplx alpha_used =
        c.local_override ? *c.local_override * cond.alpha : cond.alpha;

    if (has_method(c, "analytic")) {
      try {
        row.force.analytic = force_analytic(sys, exc, cond.sigma, alpha_used);
        row.force.has_analytic = true;
      } catch (const std::exception& e) { note("analytic", e); }
    }
    if (has_method(c, "local")) {
      try {
        row.force.local = force_local(sys, exc, cond.sigma);
        row.force.has_local = true;
      } catch (const std::exception& e) { note("local", e); }
    }
    if (has_method(c, "numeric")) {
      try {
        const SolveOptions so = solve_options(c);
        Solution sol =
            shared_km ? solve_with_kernel(sys, exc, cond.sigma, alpha_used,
                                          *shared_km, so)
                      : solve_current(sys, exc, cond, so);
        row.force.numeric = force_numeric(sol);
        row.force.has_numeric = true;
        row.residual_rel = sol.residual_rel;
      } catch (const std::exception& e) { note("numeric", e); }
    }
  } catch (const std::exception& e) {
    note("point", e);
  }
  row.error = errs;
  row.ok = errs.empty();
  return row;
}

}  // namespace

SweepAxis axis_from_key(const std::string& key) {
  if (key == "frequency_thz") return SweepAxis::Frequency;
  if (key == "mu_ev") return SweepAxis::ChemicalPotential;
  if (key == "half_length_nm") return SweepAxis::HalfLength;
  if (key == "theta0_deg") return SweepAxis::IncidenceAngle;
  throw ConfigError("unknown sweep axis \"" + key + "\"");
}

std::string axis_csv_label(SweepAxis a) {
  switch (a) {
    case SweepAxis::Frequency: return "f_THz";
    case SweepAxis::ChemicalPotential: return "mu_eV";
    case SweepAxis::HalfLength: return "L_nm";
    case SweepAxis::IncidenceAngle: return "theta0_deg";
  }
  return "axis";
}

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("NANOPULL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw ConfigError("NANOPULL_THREADS must be a positive integer");
    n = std::min<long>(n, v);
  }
  return n;
}

SweepResult run_sweep(const Config& c) {
  if (!c.sweep) throw ConfigError("config has no \"sweep\" block");
  const SweepAxis axis = axis_from_key(c.sweep->axis);
  const int np = c.sweep->points;
  std::vector<double> values(np);
  for (int i = 0; i < np; ++i)
    values[i] = np == 1 ? c.sweep->start
                        : c.sweep->start + (c.sweep->end - c.sweep->start) *
                                               i / (np - 1.0);

  // The kernel depends on alpha, L, k and R but not on the incidence angle,
  // so an angle sweep reuses one assembly.
  std::unique_ptr<KernelMatrix> shared;
  if (axis == SweepAxis::IncidenceAngle && has_method(c, "numeric")) {
    const CntSystem sys = system_from(c);
    const Excitation exc = excitation_from(c);
    const Conductivity cond = evaluate_conductivity(exc.omega, sys);
    KernelParams kp;
    kp.half_length = sys.half_length;
    kp.k = wavenumber(exc.omega);
    kp.radius = sys.radius;
    if (c.local_override) {
      kp.alpha = *c.local_override * cond.alpha;
      shared = std::make_unique<KernelMatrix>(
          assemble_kernel_local(c.n_segments, kp, kp.alpha));
    } else {
      kp.alpha = cond.alpha;
      shared = std::make_unique<KernelMatrix>(assemble_kernel(
          c.n_segments, kp,
          c.kernel_form == "spectral" ? KernelForm::Spectral
                                      : KernelForm::Singular));
    }
  }

  SweepResult res;
  res.config = c;
  res.axis = axis;
  res.sign_convention = SolveOptions{}.lambda_sign > 0 ? "plus" : "minus";
  res.version = kVersion;
  res.rows.resize(np);

  const int workers = std::min(worker_count(), np);
  if (workers <= 1) {
    for (int i = 0; i < np; ++i)
      res.rows[i] = eval_point(c, axis, values[i], shared.get());
  } else {
    std::atomic<int> next{0};
    auto work = [&] {
      for (int i = next.fetch_add(1); i < np; i = next.fetch_add(1))
        res.rows[i] = eval_point(c, axis, values[i], shared.get());
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return res;
}

std::string sweep_csv(const SweepResult& r) {
  if (r.rows.empty()) throw ConfigError("sweep result has no rows");
  std::ostringstream out;
  out << axis_csv_label(r.axis)
      << ",Fz_fN_numeric,Fz_fN_analytic,Fz_fN_local"
      << ",Re_sigma_S,Im_sigma_S,Re_xi_S_m2,Im_xi_S_m2"
      << ",Re_alpha_per_m,Im_alpha_per_m,near_edge,residual,error\n";
  for (const auto& row : r.rows) {
    out << fmt(row.axis_value) << ',';
    out << (row.force.has_numeric ? fmt(row.force.numeric * 1e15) : "") << ',';
    out << (row.force.has_analytic ? fmt(row.force.analytic * 1e15) : "")
        << ',';
    out << (row.force.has_local ? fmt(row.force.local * 1e15) : "") << ',';
    out << fmt(row.sigma.real()) << ',' << fmt(row.sigma.imag()) << ',';
    out << fmt(row.xi.real()) << ',' << fmt(row.xi.imag()) << ',';
    out << fmt(row.alpha.real()) << ',' << fmt(row.alpha.imag()) << ',';
    out << (row.near_edge ? 1 : 0) << ',';
    out << (row.force.has_numeric ? fmt(row.residual_rel) : "") << ',';
    std::string err = row.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << err << '\n';
  }
  return out.str();
}

std::string sweep_json(const SweepResult& r) {
  if (r.rows.empty()) throw ConfigError("sweep result has no rows");
  nlohmann::json j;
  j["metadata"]["config"] = nlohmann::json::parse(dump_config(r.config));
  j["metadata"]["sign_convention"] = r.sign_convention;
  j["metadata"]["version"] = r.version;
  j["metadata"]["axis"] = axis_csv_label(r.axis);
  j["metadata"]["warnings"] = validity_warnings(r.config);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json o;
    o["axis_value"] = row.axis_value;
    if (row.force.has_numeric) o["Fz_N_numeric"] = row.force.numeric;
    if (row.force.has_analytic) o["Fz_N_analytic"] = row.force.analytic;
    if (row.force.has_local) o["Fz_N_local"] = row.force.local;
    o["sigma_S"] = {row.sigma.real(), row.sigma.imag()};
    o["xi_S_m2"] = {row.xi.real(), row.xi.imag()};
    o["alpha_per_m"] = {row.alpha.real(), row.alpha.imag()};
    o["near_edge"] = row.near_edge;
    if (row.force.has_numeric) o["residual"] = row.residual_rel;
    if (!row.error.empty()) o["error"] = row.error;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace nanopull
