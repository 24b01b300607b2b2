#pragma once

#include "nanopull/constants.hpp"

namespace nanopull {

// --- Line (transmission-line) response along the tube axis -----------------
//
// g(z, z') solves d^2g/dz^2 + alpha^2 g = -delta(z - z') on [-L, L] with
// g(+-L, z') = 0. Written in exponential form so it stays finite for any
// complex alpha (all exponents have non-positive real part).
cplx line_green(cplx alpha, double L, double z, double zp);

// Eigenfunction series of the same response; slow (1/n^2 tail), used only to
// cross-check the closed form.
cplx line_green_modal(cplx alpha, double L, double z, double zp, int n_max);

// z-dependent coefficients of the transform of g over z':
//   int_-L^L g(z, z') exp(-i h z') dz' = -S(h, z) / (alpha^2 - h^2),
//   S(h, z) = exp(-i h z) + c2(z) exp(i h L) + c3(z) exp(-i h L).
struct LineCoeffs {
  cplx c2;
  cplx c3;
};
LineCoeffs line_coeffs(cplx alpha, double L, double z);

// The transform above, with the removable points h = +-alpha bridged by a
// Taylor expansion of S.
cplx line_green_fourier(cplx alpha, double L, double h, double z);

// --- Azimuthally integrated free-space kernel -------------------------------
//
// G(dz; r) = R int_0^{2pi} exp(i k Rbar)/Rbar dphi,
// Rbar^2 = r^2 + R^2 - 2 r R sin(phi) + dz^2, observation on a circle of
// radius r (default: on the tube surface, r = R). The static 1/Rbar part is
// integrated in closed form via the complete elliptic integral; only the
// smooth remainder is quadratured. d1/d2 are derivatives in dz with analytic
// integrands (no finite differencing).
struct TubeGreen {
  double k = 0.0;       // free-space wavenumber [1/m]
  double radius = 0.0;  // tube radius [m]
  int phi_order = 8;    // Gauss order per azimuthal panel
  // G(dz) diverges like -2 ln|dz| on the surface; |dz| is clamped to
  // dz_floor_rel * radius.
  double dz_floor_rel = 1e-9;

  cplx value(double dz, double r_obs = -1.0) const;
  cplx d1(double dz, double r_obs = -1.0) const;
  cplx d2(double dz, double r_obs = -1.0) const;

  // Same G via its plane-wave decomposition along z plus a cosine-integral
  // tail estimate beyond h_max = h_max_factor / radius.
  cplx value_spectral(double dz, double h_max_factor = 40.0) const;
};

// Weight W(h) of the plane-wave decomposition: G(dz) = int W(h) e^{i h dz} dh
// over real h. Even in h; decays like 1/|h|.
cplx spectral_weight(double h, double k, double radius);

}  // namespace nanopull
