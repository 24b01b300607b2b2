#pragma once

#include <complex>

namespace nanopull {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

// CODATA-2018 values, SI units throughout.
namespace constants {
inline constexpr double e = 1.602176634e-19;        // elementary charge [C]
inline constexpr double hbar = 1.054571817e-34;     // reduced Planck [J s]
inline constexpr double h_planck = 6.62607015e-34;  // Planck [J s]
inline constexpr double k_B = 1.380649e-23;         // Boltzmann [J/K]
inline constexpr double c0 = 2.99792458e8;          // speed of light [m/s]
inline constexpr double eps0 = 8.8541878128e-12;    // vacuum permittivity [F/m]
inline constexpr double pi = 3.14159265358979323846;

inline constexpr double eV = e;  // 1 eV in joules

// Graphene/CNT lattice: C-C bond length and the default Fermi velocity of the
// linearized band structure near the Dirac points.
inline constexpr double b_cc = 0.142e-9;       // [m]
inline constexpr double v_fermi = 9.71e5;      // [m/s], overridable per system
}  // namespace constants

inline double ev_to_joule(double x) { return x * constants::eV; }
inline double joule_to_ev(double x) { return x / constants::eV; }
inline double thz_to_omega(double f_thz) {
  return 2.0 * constants::pi * f_thz * 1e12;
}
inline double omega_to_thz(double omega) {
  return omega / (2.0 * constants::pi) * 1e-12;
}

}  // namespace nanopull
