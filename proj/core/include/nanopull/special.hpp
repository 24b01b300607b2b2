#pragma once

#include <cmath>
#include <complex>

#include "nanopull/constants.hpp"

namespace nanopull {

// Sine and cosine integrals Si(x) = int_0^x sin t / t dt,
// Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt, x > 0.
// Power series for small x, auxiliary-function rational fits for large x
// (abs error below ~1e-10 over the ranges used here).
double sine_integral(double x);
double cosine_integral(double x);

inline double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// exp(i*w) for complex w with Im(w) >= 0: magnitude <= 1, never overflows.
inline cplx eiz(cplx w) { return std::exp(I * w); }

// Flip to the half plane Im >= 0 (all transmission-line formulas below are
// even in this parameter, so the branch can be fixed once).
inline cplx upper_half(cplx a) { return (a.imag() < 0.0) ? -a : a; }

}  // namespace nanopull
