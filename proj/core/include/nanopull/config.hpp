#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nanopull/model.hpp"

namespace nanopull {

// Flat run description; loadable from JSON, emitted back verbatim into result
// metadata so every output file is rerunnable.
struct Config {
  int m_index = 12;
  double half_length_nm = 100.0;
  double mu_ev = 0.413;
  double temperature_k = 300.0;
  double e0_v_per_m = 1.0e7;
  double theta0_deg = 30.0;
  double frequency_thz = 200.0;
  double v_fermi_m_per_s = constants::v_fermi;
  std::string sigma0_model = "universal";

  int n_segments = 411;
  std::string kernel_form = "singular";  // singular | spectral
  std::optional<double> local_override;  // large-alpha factor Lambda
  std::vector<std::string> methods{"analytic", "local"};  // force methods

  struct Sweep {
    std::string axis;  // frequency_thz | mu_ev | half_length_nm | theta0_deg
    double start = 0.0;
    double end = 0.0;
    int points = 101;
  };
  std::optional<Sweep> sweep;
};

Config load_config(const std::string& path);
Config parse_config(const std::string& json_text);
std::string dump_config(const Config& c);  // JSON text (round-trips)

CntSystem system_from(const Config& c);
Excitation excitation_from(const Config& c);

// Soft model-validity checks (radius, length, mu, frequency windows); never
// alter results.
std::vector<std::string> validity_warnings(const Config& c);

std::vector<std::string> preset_names();
Config preset(const std::string& name);

}  // namespace nanopull
