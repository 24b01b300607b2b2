#pragma once

#include "nanopull/conductivity.hpp"
#include "nanopull/model.hpp"
#include "nanopull/solver.hpp"

namespace nanopull {

// Time-averaged axial force on the tube. Negative values pull the tube
// toward the light source.
//
//   numeric:  F_z = -(2 pi R / omega) int Im( d(E_z*)/dz  j_z ) dz
//             from a solved surface current (any kernel form / override).
//   analytic: closed form derived from the same current in the
//             transmission-line approximation; valid off cavity resonances.
//   local:    large-|alpha| limit, F_z = (4 pi L R E0^2 / c)
//             sin^2(theta0) cos(theta0) Re(sigma); always positive (pushing)
//             for absorbing tubes.

double force_numeric(const Solution& sol);

double force_analytic(const CntSystem& sys, const Excitation& exc, cplx sigma,
                      cplx alpha);

double force_local(const CntSystem& sys, const Excitation& exc, cplx sigma);

struct ForceResult {
  double numeric = 0;
  double analytic = 0;
  double local = 0;
  bool has_numeric = false, has_analytic = false, has_local = false;
};

}  // namespace nanopull
