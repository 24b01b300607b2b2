#pragma once

#include "nanopull/constants.hpp"

namespace nanopull {

// Which quantum-well form enters the surface conductivity's zero-frequency
// scale sigma0. Universal = e^2/(4 hbar); Drude variant kept as a knob for
// comparisons with local-conductivity literature.
enum class Sigma0Model { Universal };

// Geometry and electronic parameters of a finite zigzag (m,0) tube.
struct CntSystem {
  int m_index = 12;           // zigzag index (m,0)
  double radius = 0.0;        // [m], derived from m_index unless set directly
  double half_length = 0.0;   // L [m]; tube occupies z in [-L, L]
  double mu = 0.0;            // chemical potential [J]
  double temperature = 0.0;   // [K]; 0 means degenerate limit
  double v_fermi = constants::v_fermi;  // [m/s]
  Sigma0Model sigma0_model = Sigma0Model::Universal;
};

// Incident plane wave, TM polarized in the plane of incidence, with the tube
// axis along z. theta0 is measured from the axis.
struct Excitation {
  double e0 = 1.0e5;        // field amplitude [V/m]
  double theta0 = 0.0;      // incidence angle [rad]
  double omega = 0.0;       // angular frequency [rad/s]
};

// R = sqrt(3) b m / (2 pi) for a zigzag (m,0) tube.
double radius_from_index(int m_index);

double photon_energy(double omega);                  // hbar*omega [J]
double wavenumber(double omega);                     // k = omega/c [1/m]

// Validates ranges and fills the derived radius.
CntSystem build_system(int m_index, double half_length, double mu,
                       double temperature,
                       double v_fermi = constants::v_fermi);

Excitation build_excitation(double e0, double theta0_rad, double omega);

// Distance from the interband absorption edge: hbar*omega - 2*mu, in units of
// 2*mu. Evaluations inside |.| < band are flagged as edge-adjacent.
bool near_interband_edge(const CntSystem& sys, double omega,
                         double band_rel = 1e-3);

}  // namespace nanopull
