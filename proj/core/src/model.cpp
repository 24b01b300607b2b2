#include "nanopull/model.hpp"

#include <cmath>
#include <string>

#include "nanopull/errors.hpp"

namespace nanopull {

double radius_from_index(int m_index) {
  if (m_index < 3 || m_index % 3 != 0)
    throw ConfigError(
        "m_index must be a positive multiple of 3 (metallic zigzag tube), "
        "got " +
        std::to_string(m_index));
  return std::sqrt(3.0) * constants::b_cc * m_index / (2.0 * constants::pi);
}

double photon_energy(double omega) { return constants::hbar * omega; }

double wavenumber(double omega) { return omega / constants::c0; }

CntSystem build_system(int m_index, double half_length, double mu,
                       double temperature, double v_fermi) {
  if (half_length <= 0.0)
    throw ConfigError("half_length must be positive, got " +
                      std::to_string(half_length));
  if (temperature < 0.0) throw ConfigError("temperature must be >= 0");
  if (mu < 0.0) throw ConfigError("chemical potential must be >= 0");
  if (v_fermi <= 0.0) throw ConfigError("v_fermi must be positive");
  CntSystem sys;
  sys.m_index = m_index;
  sys.radius = radius_from_index(m_index);
  sys.half_length = half_length;
  sys.mu = mu;
  sys.temperature = temperature;
  sys.v_fermi = v_fermi;
  return sys;
}

Excitation build_excitation(double e0, double theta0_rad, double omega) {
  if (e0 < 0.0) throw ConfigError("e0 must be >= 0");
  if (omega <= 0.0) throw ConfigError("frequency must be positive");
  if (theta0_rad < 0.0 || theta0_rad > constants::pi)
    throw ConfigError("theta0 must lie in [0, pi]");
  return Excitation{e0, theta0_rad, omega};
}

bool near_interband_edge(const CntSystem& sys, double omega, double band_rel) {
  const double edge = 2.0 * sys.mu;
  if (edge <= 0.0) return false;
  return std::abs(photon_energy(omega) - edge) < band_rel * edge;
}

}  // namespace nanopull
