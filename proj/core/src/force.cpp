#include "nanopull/force.hpp"

#include <cmath>

#include "nanopull/errors.hpp"
#include "nanopull/special.hpp"

namespace nanopull {

double force_numeric(const Solution& sol) {
  const Eigen::Index n = sol.current.size();
  if (n < 3) throw ConfigError("force_numeric: too few samples");
  const double delta = sol.delta;
  Eigen::VectorXcd dE(n);
  for (Eigen::Index i = 1; i + 1 < n; ++i)
    dE(i) = (sol.efield(i + 1) - sol.efield(i - 1)) / (2.0 * delta);
  dE(0) = (-3.0 * sol.efield(0) + 4.0 * sol.efield(1) - sol.efield(2)) /
          (2.0 * delta);
  dE(n - 1) = (3.0 * sol.efield(n - 1) - 4.0 * sol.efield(n - 2) +
               sol.efield(n - 3)) /
              (2.0 * delta);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    acc += std::imag(std::conj(dE(i)) * sol.current(i)) * delta;
  return -2.0 * constants::pi * sol.radius / sol.omega * acc;
}

double force_analytic(const CntSystem& sys, const Excitation& exc, cplx sigma,
                      cplx alpha) {
  const double L = sys.half_length;
  const double k = wavenumber(exc.omega);
  const double h0 = k * std::cos(exc.theta0);
  const cplx u = upper_half(alpha);
  const cplx a2 = u * u;
  const cplx den = a2 - h0 * h0;
  if (std::abs(den) < 1e-10 * std::abs(a2))
    throw DomainError("closed-form force singular: alpha ~ k cos(theta0)");
  const cplx E2 = std::exp(2.0 * I * u * L);
  const cplx E4 = E2 * E2;
  if (std::abs(E4 - 1.0) < 1e-12)
    throw DomainError("closed-form force at a cavity resonance");
  // alpha (cos 2 alpha L - cos 2 h0 L) / sin(2 alpha L), overflow-safe
  const cplx osc = I * u * (E4 + 1.0 - 2.0 * std::cos(2.0 * h0 * L) * E2) /
                   (E4 - 1.0);
  const cplx bracket = L + osc / den;
  const double st = std::sin(exc.theta0), ct = std::cos(exc.theta0);
  const double A = 4.0 * constants::pi * exc.e0 * exc.e0 * sys.radius *
                   st * st * ct / constants::c0;
  return A * std::real(a2 * sigma / den * bracket);
}

double force_local(const CntSystem& sys, const Excitation& exc, cplx sigma) {
  const double st = std::sin(exc.theta0), ct = std::cos(exc.theta0);
  return 4.0 * constants::pi * sys.half_length * sys.radius * exc.e0 * exc.e0 *
         st * st * ct / constants::c0 * std::real(sigma);
}

}  // namespace nanopull
