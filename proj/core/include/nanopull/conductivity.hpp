#pragma once

#include "nanopull/constants.hpp"
#include "nanopull/model.hpp"

namespace nanopull {

// Auto picks the closed forms in the degenerate regime (T = 0 or kT < mu/50)
// and falls back to quadrature / numerical derivative otherwise.
enum class SigmaMethod { Auto, Closed, Quadrature };
enum class XiMethod { Auto, Closed, Derivative };

struct ConductivityOptions {
  // Causal regularization: omega -> omega (1 + i delta_rel).
  double delta_rel = 1e-6;
  // Flag evaluations with |hbar w - 2 mu| < edge_band_rel * 2 mu.
  double edge_band_rel = 1e-3;
  SigmaMethod sigma_method = SigmaMethod::Auto;
  XiMethod xi_method = XiMethod::Auto;
  // Quadrature cutoff in units of max(mu, hbar w, 20 kT); the analytic tail
  // beyond it is added in closed form.
  double eps_max_factor = 40.0;
  // Relative step for the finite-difference second derivative in
  // XiMethod::Derivative.
  double deriv_step_rel = 1e-3;
};

// Axial surface response of the tube at angular frequency omega:
//   sigma  [S]      local surface conductivity (intra + interband)
//   xi     [S m^2]  spatial-dispersion coefficient, (v_F^2 / 2) d^2sigma/dw^2
//   alpha  [1/m]    sqrt(sigma / xi), the wave parameter of the
//                   transmission-line response along the tube
struct Conductivity {
  cplx sigma_intra{};
  cplx sigma_inter{};
  cplx sigma{};
  cplx xi_intra{};
  cplx xi_inter{};
  cplx xi{};
  cplx alpha{};
  bool near_edge = false;
};

// Zero-frequency conductivity scale, e^2 / (4 hbar).
double sigma0_scale(const CntSystem& sys);

// Drude-like free-carrier term; purely imaginary at any temperature.
cplx sigma_intra(double omega, const CntSystem& sys,
                 const ConductivityOptions& opt = {});

// Interband term. The closed form requires T = 0: its real part switches on
// exactly at hbar w = 2 mu and its imaginary part is log-regularized at the
// edge by delta_rel. The quadrature path works at any temperature.
cplx sigma_inter(double omega, const CntSystem& sys,
                 const ConductivityOptions& opt = {});

cplx xi_intra(double omega, const CntSystem& sys,
              const ConductivityOptions& opt = {});
cplx xi_inter(double omega, const CntSystem& sys,
              const ConductivityOptions& opt = {});

// (v_F^2/2) sigma''(omega) by Richardson-extrapolated central differences of
// the full sigma; cross-checks the closed xi forms.
cplx xi_from_derivative(double omega, const CntSystem& sys,
                        const ConductivityOptions& opt = {});

// Principal square root of sigma/xi.
cplx alpha_parameter(cplx sigma, cplx xi);

Conductivity evaluate_conductivity(double omega, const CntSystem& sys,
                                   const ConductivityOptions& opt = {});

}  // namespace nanopull
