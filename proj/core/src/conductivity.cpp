#include "nanopull/conductivity.hpp"

#include <algorithm>
#include <cmath>

#include "nanopull/errors.hpp"
#include "nanopull/quadrature.hpp"

namespace nanopull {

namespace {
using namespace constants;

double fermi(double eps, double mu, double T) {
  if (T == 0.0) return eps < mu ? 1.0 : (eps == mu ? 0.5 : 0.0);
  return 1.0 / (std::exp((eps - mu) / (k_B * T)) + 1.0);
}

// tanh(mu / 2kT), degenerate limit 1.
double occupancy_factor(const CntSystem& sys) {
  if (sys.temperature == 0.0) {
    if (sys.mu <= 0.0)
      throw DomainError(
          "free-carrier conductivity undefined at T=0, mu=0 "
          "(degenerate distribution)");
    return 1.0;
  }
  return std::tanh(sys.mu / (2.0 * k_B * sys.temperature));
}

cplx omega_causal(double omega, const ConductivityOptions& opt) {
  return omega * cplx(1.0, opt.delta_rel);
}

bool degenerate(const CntSystem& sys) {
  return sys.temperature == 0.0 ||
         k_B * sys.temperature < sys.mu / 50.0;
}

SigmaMethod resolve(SigmaMethod m, const CntSystem& sys) {
  if (m != SigmaMethod::Auto) return m;
  return degenerate(sys) ? SigmaMethod::Closed : SigmaMethod::Quadrature;
}

XiMethod resolve(XiMethod m, const CntSystem& sys) {
  if (m != XiMethod::Auto) return m;
  return degenerate(sys) ? XiMethod::Closed : XiMethod::Derivative;
}
}  // namespace

double sigma0_scale(const CntSystem& sys) {
  (void)sys;
  return e * e / (4.0 * hbar);
}

cplx sigma_intra(double omega, const CntSystem& sys,
                 const ConductivityOptions& opt) {
  const double t = occupancy_factor(sys);
  const double scale = e * e * sys.v_fermi / (pi * pi * hbar * omega * sys.radius);
  if (resolve(opt.sigma_method, sys) == SigmaMethod::Closed ||
      sys.temperature == 0.0)
    return -I * scale * t;
  // Quadrature of the thermally smeared carrier occupation: the Drude weight
  // is int sign(eps) dF/deps = -tanh(mu/2kT). Kept as an independent check.
  const double kT = k_B * sys.temperature;
  const double emax = opt.eps_max_factor * std::max({sys.mu, hbar * omega, 20.0 * kT});
  std::vector<Panel> ps;
  auto append = [&ps](std::vector<Panel> more) {
    for (auto& p : more) ps.push_back(p);
  };
  const double mu = sys.mu;
  if (mu > 0.0) {
    append(graded_panels(-emax, -mu, -mu, kT / 8.0));
    append(graded_panels(-mu, 0.0, -mu, kT / 8.0));
    append(graded_panels(0.0, mu, mu, kT / 8.0));
    append(graded_panels(mu, emax, mu, kT / 8.0));
  } else {
    append(graded_panels(-emax, 0.0, 0.0, kT / 8.0));
    append(graded_panels(0.0, emax, 0.0, kT / 8.0));
  }
  const double weight = integrate(ps, 12, [&](double eps) {
    const double s = eps >= 0.0 ? 1.0 : -1.0;
    const double u = (eps - mu) / (2.0 * kT);
    const double sech = 1.0 / std::cosh(u);
    return s * (-0.25 / kT) * sech * sech;
  });
  return I * scale * weight;
}

cplx sigma_inter(double omega, const CntSystem& sys,
                 const ConductivityOptions& opt) {
  const cplx a = hbar * omega_causal(omega, opt);  // regularized photon energy
  if (resolve(opt.sigma_method, sys) == SigmaMethod::Closed) {
    if (sys.temperature != 0.0 && !degenerate(sys))
      throw DomainError(
          "closed-form interband conductivity valid only in the degenerate "
          "regime (T = 0 or kT << mu)");
    if (sys.mu <= 0.0)
      throw DomainError("closed-form interband conductivity requires mu > 0");
    const double hw = hbar * omega;
    const double pre = e * e * sys.v_fermi / (2.0 * pi * hbar * omega * sys.radius);
    const double re = hw > 2.0 * sys.mu ? pre : 0.0;
    const double m2 = 4.0 * sys.mu * sys.mu;
    const double im =
        -(pre / pi) * std::log(m2 / std::abs(m2 - a * a));
    return cplx(re, im);
  }
  // Integral form: (i e^2 hbar w v_F / (pi^2 R)) *
  //   int_0^inf [F(-eps) - F(eps)] / (eps (a^2 - 4 eps^2)) deps.
  const double kT = k_B * sys.temperature;
  const double pole = hbar * omega / 2.0;
  const double emax =
      opt.eps_max_factor * std::max({sys.mu, hbar * omega, 20.0 * kT});
  const double pole_w = 0.25 * opt.delta_rel * pole;  // Lorentzian half width
  std::vector<double> cuts{0.0, pole, emax};
  if (sys.mu > 0.0 && sys.mu < emax) cuts.push_back(sys.mu);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Panel> ps;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (hi - lo <= 0.0) continue;
    // resolve the near-pole structure and (for T>0) the Fermi edge
    const double fine =
        (lo == pole || hi == pole) ? pole_w
                                   : (kT > 0.0 ? kT / 8.0 : (hi - lo) / 64.0);
    if (hi == pole || hi == sys.mu) {
      for (auto& p : graded_panels(lo, hi, hi, fine)) ps.push_back(p);
    } else {
      for (auto& p : graded_panels(lo, hi, lo, fine)) ps.push_back(p);
    }
  }
  const double mu = sys.mu, T = sys.temperature;
  const cplx a2 = a * a;
  cplx integral = integrate(ps, 12, [&](double eps) -> cplx {
    const double br = fermi(-eps, mu, T) - fermi(eps, mu, T);
    if (eps == 0.0) return cplx(0.0);
    return br / (eps * (a2 - 4.0 * eps * eps));
  });
  // Tail beyond emax with the occupation bracket ~ 1:
  // int_E^inf deps / (eps (a^2 - 4 eps^2)) = (1/2a^2) ln((4E^2 - a^2)/4E^2).
  integral += 0.5 / a2 * std::log((4.0 * emax * emax - a2) / (4.0 * emax * emax));
  const cplx pre = I * e * e * hbar * omega * sys.v_fermi / (pi * pi * sys.radius);
  return pre * integral;
}

cplx xi_intra(double omega, const CntSystem& sys,
              const ConductivityOptions& opt) {
  (void)opt;
  const double t = occupancy_factor(sys);
  const double v = sys.v_fermi;
  return -I * e * e * v * v * v * t /
         (pi * pi * hbar * sys.radius * omega * omega * omega);
}

cplx xi_inter(double omega, const CntSystem& sys,
              const ConductivityOptions& opt) {
  if (sys.mu <= 0.0)
    throw DomainError("interband dispersion coefficient requires mu > 0");
  const cplx a = hbar * omega_causal(omega, opt);
  const double hw = hbar * omega;
  const cplx den = a * a - 4.0 * sys.mu * sys.mu;
  const cplx brace = 1.0 - hw * hw * hw * hw / (den * den);
  const double s0 = sigma0_scale(sys);
  return I * 16.0 * s0 * sys.mu * sys.v_fermi * sys.v_fermi /
         (pi * hbar * omega * omega * omega) * brace;
}

cplx xi_from_derivative(double omega, const CntSystem& sys,
                        const ConductivityOptions& opt) {
  auto sig = [&](double w) {
    return sigma_intra(w, sys, opt) + sigma_inter(w, sys, opt);
  };
  auto second = [&](double h) {
    return (sig(omega + h) - 2.0 * sig(omega) + sig(omega - h)) / (h * h);
  };
  const double h = opt.deriv_step_rel * omega;
  const cplx d = (4.0 * second(h / 2.0) - second(h)) / 3.0;
  return 0.5 * sys.v_fermi * sys.v_fermi * d;
}

cplx alpha_parameter(cplx sigma, cplx xi) {
  if (xi == cplx(0.0)) throw DomainError("alpha undefined: xi = 0");
  return std::sqrt(sigma / xi);
}

Conductivity evaluate_conductivity(double omega, const CntSystem& sys,
                                   const ConductivityOptions& opt) {
  Conductivity c;
  c.sigma_intra = sigma_intra(omega, sys, opt);
  c.sigma_inter = sigma_inter(omega, sys, opt);
  c.sigma = c.sigma_intra + c.sigma_inter;
  if (resolve(opt.xi_method, sys) == XiMethod::Closed) {
    c.xi_intra = xi_intra(omega, sys, opt);
    c.xi_inter = xi_inter(omega, sys, opt);
    c.xi = c.xi_intra + c.xi_inter;
  } else {
    c.xi = xi_from_derivative(omega, sys, opt);
    c.xi_intra = xi_intra(omega, sys, opt);
    c.xi_inter = c.xi - c.xi_intra;
  }
  c.alpha = alpha_parameter(c.sigma, c.xi);
  c.near_edge = near_interband_edge(sys, omega, opt.edge_band_rel);
  return c;
}

}  // namespace nanopull
