// Acceptance gate: nine binary criteria, one line of output each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nanopull/conductivity.hpp"
#include "nanopull/config.hpp"
#include "nanopull/force.hpp"
#include "nanopull/green.hpp"
#include "nanopull/kernel.hpp"
#include "nanopull/quadrature.hpp"
#include "nanopull/solver.hpp"
#include "nanopull/special.hpp"

using namespace nanopull;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  (%s)\n", idx, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void guarded(int idx, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(idx, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Config base_config(double f_thz) {
  Config c;  // CNT(12,0), mu 0.413 eV, L 100 nm, theta 30 deg, E0 1e7 V/m
  c.frequency_thz = f_thz;
  // The pulling dip and the threshold checks live in the degenerate regime,
  // so the gate pins the closed-form conductivity throughout.
  c.temperature_k = 0.0;
  return c;
}

struct Point {
  CntSystem sys;
  Excitation exc;
  Conductivity cond;
};

Point make_point(const Config& c) {
  Point p;
  p.sys = system_from(c);
  p.exc = excitation_from(c);
  p.cond = evaluate_conductivity(p.exc.omega, p.sys);
  return p;
}

double worst_residual = 0.0;  // collected across every solve below

Solution tracked_solve(const Point& p, const SolveOptions& opt) {
  Solution s = solve_current(p.sys, p.exc, p.cond, opt);
  worst_residual = std::max(worst_residual, s.residual_rel);
  return s;
}

double mu_ref = 0.413;  // eV
double f_star = 0.0;    // filled by criterion 1, reused later

}  // namespace

// --- criteria ---------------------------------------------------------------

void criterion1() {
  // analytic force minimum on the 150-250 THz sweep; numeric sign check there
  double best_f = 0.0, best_v = 1e300;
  for (int i = 0; i < 101; ++i) {
    const double f = 150.0 + i;
    const Point p = make_point(base_config(f));
    const double fz = force_analytic(p.sys, p.exc, p.cond.sigma, p.cond.alpha);
    if (fz < best_v) {
      best_v = fz;
      best_f = f;
    }
  }
  f_star = best_f;
  const double f_edge = 2.0 * mu_ref * constants::eV / constants::h_planck / 1e12;
  const Point p = make_point(base_config(best_f));
  const double fz_num = force_numeric(tracked_solve(p, SolveOptions{}));
  const bool ok = best_v < 0.0 && std::abs(best_f - f_edge) <= 5.0 &&
                  fz_num < 0.0;
  report(1, ok,
         fmt("analytic min %.3g fN at %.1f THz (edge %.1f THz), numeric there "
             "%.3g fN",
             best_v * 1e15, best_f, f_edge, fz_num * 1e15));
}

void criterion2() {
  // alpha override Lambda = 1e3: no pulling anywhere, local form matched
  bool all_positive = true;
  double worst_rel = 0.0;
  SolveOptions opt;
  opt.local_override = 1e3;
  for (int i = 0; i < 101; ++i) {
    const double f = 150.0 + i;
    // Room-temperature conductivity: below the interband edge the degenerate
    // closed forms give Re sigma = 0, which makes the local-mode force vanish
    // identically there and leaves its sign meaningless.  At 300 K the thermal
    // tail keeps the tube absorptive across the whole sweep.
    Config c = base_config(f);
    c.temperature_k = 300.0;
    const Point p = make_point(c);
    const double fz = force_numeric(tracked_solve(p, opt));
    if (fz <= 0.0) all_positive = false;
    if (f >= 205.0 && f <= 250.0) {
      const double fl = force_local(p.sys, p.exc, p.cond.sigma);
      worst_rel = std::max(worst_rel, std::abs(fz - fl) / std::abs(fl));
    }
  }
  report(2, all_positive && worst_rel <= 0.10,
         fmt("all points pushing: %s; worst local mismatch on [205,250]: "
             "%.2f%%",
             all_positive ? "yes" : "NO", worst_rel * 100.0));
}

void criterion3() {
  // local-mode length sweep at 215 THz: strict linearity in L
  const std::vector<double> ls{50.0, 100.0, 200.0, 400.0};
  std::vector<double> fs;
  SolveOptions opt;
  opt.local_override = 1e3;
  for (double lnm : ls) {
    Config c = base_config(215.0);
    c.half_length_nm = lnm;
    const Point p = make_point(c);
    fs.push_back(force_numeric(tracked_solve(p, opt)));
  }
  // least squares F = a L + b
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(ls.size());
  for (int i = 0; i < n; ++i) {
    sx += ls[i];
    sy += fs[i];
    sxx += ls[i] * ls[i];
    sxy += ls[i] * fs[i];
  }
  const double a = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double b = (sy - a * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (int i = 0; i < n; ++i) {
    ss_res += std::pow(fs[i] - (a * ls[i] + b), 2);
    ss_tot += std::pow(fs[i] - sy / n, 2);
  }
  const double r2 = 1.0 - ss_res / ss_tot;
  const bool ok = r2 > 0.999 && std::abs(b) < 0.02 * std::abs(fs.back());
  report(3, ok,
         fmt("R^2 = %.6f, |intercept| = %.2f%% of F(L=400nm)", r2,
             std::abs(b) / std::abs(fs.back()) * 100.0));
}

void criterion4() {
  double best_mu = 0.0, best_v = 1e300;
  for (int i = 0; i < 101; ++i) {
    const double mu = 0.3 + 0.2 * i / 100.0;
    Config c = base_config(200.0);
    c.mu_ev = mu;
    c.n_segments = 161;
    const Point p = make_point(c);
    const double fz = force_analytic(p.sys, p.exc, p.cond.sigma, p.cond.alpha);
    if (fz < best_v) {
      best_v = fz;
      best_mu = mu;
    }
  }
  const double mu_half = constants::hbar * thz_to_omega(200.0) / 2.0 /
                         constants::eV;
  const bool ok = best_v < 0.0 && std::abs(best_mu - mu_half) <= 0.01;
  report(4, ok,
         fmt("dip %.3g fN at mu = %.4f eV (hw/2 = %.4f eV)", best_v * 1e15,
             best_mu, mu_half));
}

void criterion5() {
  const Config c = base_config(210.0);
  const Point p = make_point(c);
  KernelParams kp;
  kp.alpha = p.cond.alpha;
  kp.half_length = p.sys.half_length;
  kp.k = wavenumber(p.exc.omega);
  kp.radius = p.sys.radius;
  const KernelMatrix ka = assemble_kernel(411, kp, KernelForm::Singular);
  const KernelMatrix kb = assemble_kernel(411, kp, KernelForm::Spectral);
  double amax = 0.0;
  for (int i = 0; i < ka.n; ++i)
    for (int j = 0; j < ka.n; ++j) amax = std::max(amax, std::abs(ka.a(i, j)));
  double worst = 0.0;
  for (int i = 0; i < ka.n; ++i)
    for (int j = 0; j < ka.n; ++j) {
      if (std::abs(ka.a(i, j)) < 1e-3 * amax) continue;
      worst = std::max(worst,
                       std::abs(ka.a(i, j) - kb.a(i, j)) / std::abs(ka.a(i, j)));
    }
  SolveOptions opt;
  const Solution sa =
      solve_with_kernel(p.sys, p.exc, p.cond.sigma, p.cond.alpha, ka, opt);
  const Solution sb =
      solve_with_kernel(p.sys, p.exc, p.cond.sigma, p.cond.alpha, kb, opt);
  worst_residual = std::max({worst_residual, sa.residual_rel, sb.residual_rel});
  const int mid = 205;
  const double jrel =
      std::abs(sa.current(mid) - sb.current(mid)) / std::abs(sa.current(mid));
  report(5, worst <= 0.01 && jrel <= 0.02,
         fmt("worst entry mismatch %.3g, mid-tube current mismatch %.3g",
             worst, jrel));
}

void criterion6() {
  const Point p = make_point(base_config(210.0));
  const double L = p.sys.half_length;
  const cplx al = p.cond.alpha;
  bool ok = true;
  std::string why = "all checks passed";
  auto need = [&](bool cond, const char* what) {
    if (!cond && ok) {
      ok = false;
      why = std::string("failed: ") + what;
    }
  };

  for (double zp : {-0.4 * L, 0.25 * L}) {
    need(std::abs(line_green(al, L, L, zp)) <
             1e-12 * std::abs(line_green(al, L, 0.0, zp)),
         "g(+L) = 0");
    need(std::abs(line_green(al, L, -L, zp)) <
             1e-12 * std::abs(line_green(al, L, 0.0, zp)),
         "g(-L) = 0");
    const cplx cf = line_green(al, L, 0.3 * L, zp);
    need(std::abs(cf - line_green_modal(al, L, 0.3 * L, zp, 4000)) <
             1e-6 * std::abs(cf),
         "closed form vs eigenfunction series");
  }
  // transform regular (vanishing numerator) at h = +-alpha
  const cplx nearly_real{5e7, 10.0};
  for (double sgn : {1.0, -1.0}) {
    const cplx v = line_green_fourier(nearly_real, L, sgn * 5e7, 0.2 * L);
    need(std::isfinite(std::abs(v)), "transform finite at h = +-alpha");
  }
  const double k = wavenumber(p.exc.omega), R = p.sys.radius;
  const TubeGreen tg{k, R};
  for (double dz : {0.05 * L, 0.3 * L, 0.8 * L})
    need(std::abs(tg.value(dz) - tg.value_spectral(dz)) <
             1e-4 * std::abs(tg.value(dz)),
         "direct vs spectral G");
  const double far = 50.0 * R;
  const cplx expect =
      2.0 * constants::pi * R * std::exp(I * cplx(k * far)) / far;
  need(std::abs(tg.value(far) - expect) < 0.01 * std::abs(expect),
       "far-field asymptote");
  report(6, ok, why);
}

void criterion7() {
  const CntSystem s = system_from(base_config(200.0));
  const double w0 = 2.0 * s.mu / constants::hbar;
  bool ok = true;
  std::string why = "onset, finite-T, KK, Richardson all within tolerance";
  auto need = [&](bool cond, const char* what) {
    if (!cond && ok) {
      ok = false;
      why = std::string("failed: ") + what;
    }
  };

  need(sigma_inter(0.999 * w0, s).real() == 0.0 &&
           sigma_inter(1.2 * w0, s).real() > 0.0,
       "Heaviside onset at hw = 2mu");

  CntSystem warm = s;
  warm.temperature = 30.0;
  ConductivityOptions quad;
  quad.sigma_method = SigmaMethod::Quadrature;
  const cplx hot = sigma_inter(1.5 * w0, warm, quad);
  const cplx cold = sigma_inter(1.5 * w0, s);
  need(std::abs(hot - cold) / std::abs(cold) < 0.02,
       "T = 30 K quadrature vs closed form");

  {  // Kramers-Kronig with log-tail completion
    const int M = 4001;
    std::vector<double> ws(M), im(M);
    for (int i = 0; i < M; ++i) {
      ws[i] = (0.1 + 2.9 * i / (M - 1.0)) * w0;
      im[i] = sigma_inter(ws[i], s).imag();
    }
    const double w = 1.5 * w0;
    double acc = 0.0;
    for (int i = 0; i + 1 < M; ++i) {
      const double wa = 0.5 * (ws[i] + ws[i + 1]), dw = ws[i + 1] - ws[i];
      if (std::abs(wa - w) < 1.5 * dw) continue;
      acc += 0.5 * (im[i] + im[i + 1]) * wa / (wa * wa - w * w) * dw;
    }
    const double t0 = std::log(3.0 * w0), t1 = std::log(500.0 * w0);
    for (int i = 0; i < 4000; ++i) {
      const double wa = std::exp(t0 + (t1 - t0) * (i + 0.5) / 4000.0);
      acc += sigma_inter(wa, s).imag() * wa / (wa * wa - w * w) * wa *
             (t1 - t0) / 4000.0;
    }
    const double recon = 2.0 / constants::pi * acc;
    const double direct = sigma_inter(w, s).real();
    need(std::abs(recon - direct) / std::abs(direct) < 0.05,
         "Kramers-Kronig reconstruction");
  }

  {  // Richardson convergence order of the derivative path
    ConductivityOptions oref;
    oref.deriv_step_rel = 1e-4;
    const cplx ref = xi_from_derivative(1.3 * w0, s, oref);
    double prev = 0.0, worst_order = 100.0;
    for (double h : {0.16, 0.08, 0.04, 0.02}) {
      ConductivityOptions o;
      o.deriv_step_rel = h;
      const double err = std::abs(xi_from_derivative(1.3 * w0, s, o) - ref);
      if (prev > 0.0)
        worst_order = std::min(worst_order, std::log2(prev / err));
      prev = err;
    }
    need(worst_order >= 2.0, "Richardson order of xi derivative path");
  }
  report(7, ok, why);
}

void criterion8() {
  // evaluated at the pulling peak found by criterion 1
  const double f = f_star > 0.0 ? f_star : 201.0;
  const Point p = make_point(base_config(f));
  SolveOptions opt;
  opt.n_segments = 205;
  const Solution coarse = tracked_solve(p, opt);
  opt.n_segments = 411;
  const Solution fine = tracked_solve(p, opt);
  const cplx jc = coarse.current(102), jf = fine.current(205);  // z = 0 both
  const double jrel = std::abs(jf - jc) / std::abs(jf);
  const double frel = std::abs(force_numeric(fine) - force_numeric(coarse)) /
                      std::abs(force_numeric(fine));

  Point p2 = p;
  p2.exc.e0 *= 2.0;
  const Solution doubled = tracked_solve(p2, opt);
  double lin_err = 0.0;
  for (int i = 0; i < fine.current.size(); ++i)
    lin_err = std::max(lin_err,
                       std::abs(doubled.current(i) - 2.0 * fine.current(i)) /
                           std::abs(doubled.current(i)));
  const double quad_err =
      std::abs(force_numeric(doubled) - 4.0 * force_numeric(fine)) /
      std::abs(force_numeric(doubled));

  const bool ok = worst_residual < 1e-8 && jrel < 0.02 && frel < 0.05 &&
                  lin_err < 1e-12 && quad_err < 1e-12;
  report(8, ok,
         fmt("worst residual %.2g; N 205->411 at %.0f THz: dj(0) %.3g, dF "
             "%.3g; linearity %.2g / %.2g",
             worst_residual, f, jrel, frel, lin_err, quad_err));
}

void criterion9() {
  const double f = f_star > 0.0 ? f_star : 201.0;
  const Point p = make_point(base_config(f));
  const double fz =
      std::abs(force_analytic(p.sys, p.exc, p.cond.sigma, p.cond.alpha));
  const bool ok = fz >= 0.1e-15 && fz <= 10e-12;
  report(9, ok, fmt("|F_z| at the peak = %.3g fN (band [0.1 fN, 10 pN])",
                    fz * 1e15));
}

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  const double dt = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  std::printf("%d/9 criteria passed in %.1f s\n", 9 - failures, dt);
  return failures;
}
