#include "nanopull/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nanopull/errors.hpp"

namespace nanopull {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {
    "m_index",       "half_length_nm", "mu_ev",        "temperature_k",
    "e0_v_per_m",    "theta0_deg",     "frequency_thz", "v_fermi_m_per_s",
    "sigma0_model",  "n_segments",     "kernel_form",  "local_override",
    "methods",       "sweep"};

const std::set<std::string> kSweepKeys = {"axis", "start", "end", "points"};

const std::set<std::string> kAxes = {"frequency_thz", "mu_ev",
                                     "half_length_nm", "theta0_deg"};

const std::set<std::string> kMethods = {"numeric", "analytic", "local"};

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
  }
}

}  // namespace

Config parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  check_keys(j, kTopKeys, "config");

  Config c;
  try {
    c.m_index = j.value("m_index", c.m_index);
    c.half_length_nm = j.value("half_length_nm", c.half_length_nm);
    c.mu_ev = j.value("mu_ev", c.mu_ev);
    c.temperature_k = j.value("temperature_k", c.temperature_k);
    c.e0_v_per_m = j.value("e0_v_per_m", c.e0_v_per_m);
    c.theta0_deg = j.value("theta0_deg", c.theta0_deg);
    c.frequency_thz = j.value("frequency_thz", c.frequency_thz);
    c.v_fermi_m_per_s = j.value("v_fermi_m_per_s", c.v_fermi_m_per_s);
    c.sigma0_model = j.value("sigma0_model", c.sigma0_model);
    c.n_segments = j.value("n_segments", c.n_segments);
    c.kernel_form = j.value("kernel_form", c.kernel_form);
    if (j.contains("local_override"))
      c.local_override = j.at("local_override").get<double>();
    if (j.contains("methods"))
      c.methods = j.at("methods").get<std::vector<std::string>>();
    if (j.contains("sweep")) {
      const json& s = j.at("sweep");
      if (!s.is_object()) throw ConfigError("\"sweep\" must be an object");
      check_keys(s, kSweepKeys, "sweep");
      Config::Sweep sw;
      sw.axis = s.value("axis", std::string());
      sw.start = s.value("start", 0.0);
      sw.end = s.value("end", 0.0);
      sw.points = s.value("points", 101);
      c.sweep = sw;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }

  if (c.sigma0_model != "universal")
    throw ConfigError("sigma0_model must be \"universal\", got \"" +
                      c.sigma0_model + "\"");
  if (c.kernel_form != "singular" && c.kernel_form != "spectral")
    throw ConfigError("kernel_form must be \"singular\" or \"spectral\"");
  if (c.n_segments < 8) throw ConfigError("n_segments must be >= 8");
  if (c.local_override && *c.local_override <= 1.0)
    throw ConfigError("local_override factor must be > 1");
  for (const auto& m : c.methods)
    if (!kMethods.count(m))
      throw ConfigError("unknown force method \"" + m + "\"");
  if (c.methods.empty()) throw ConfigError("methods must not be empty");
  if (c.sweep) {
    if (!kAxes.count(c.sweep->axis))
      throw ConfigError("sweep axis must be one of frequency_thz, mu_ev, "
                        "half_length_nm, theta0_deg");
    if (c.sweep->points < 2) throw ConfigError("sweep points must be >= 2");
    if (!(c.sweep->start < c.sweep->end))
      throw ConfigError("sweep start must be less than end");
  }

  // Hard range checks come from the model builders.
  (void)system_from(c);
  (void)excitation_from(c);
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const Config& c) {
  json j;
  j["m_index"] = c.m_index;
  j["half_length_nm"] = c.half_length_nm;
  j["mu_ev"] = c.mu_ev;
  j["temperature_k"] = c.temperature_k;
  j["e0_v_per_m"] = c.e0_v_per_m;
  j["theta0_deg"] = c.theta0_deg;
  j["frequency_thz"] = c.frequency_thz;
  j["v_fermi_m_per_s"] = c.v_fermi_m_per_s;
  j["sigma0_model"] = c.sigma0_model;
  j["n_segments"] = c.n_segments;
  j["kernel_form"] = c.kernel_form;
  if (c.local_override) j["local_override"] = *c.local_override;
  j["methods"] = c.methods;
  if (c.sweep) {
    j["sweep"] = {{"axis", c.sweep->axis},
                  {"start", c.sweep->start},
                  {"end", c.sweep->end},
                  {"points", c.sweep->points}};
  }
  return j.dump(2);
}

CntSystem system_from(const Config& c) {
  CntSystem sys = build_system(c.m_index, c.half_length_nm * 1e-9,
                               c.mu_ev * constants::eV, c.temperature_k,
                               c.v_fermi_m_per_s);
  return sys;
}

Excitation excitation_from(const Config& c) {
  return build_excitation(c.e0_v_per_m,
                          c.theta0_deg * constants::pi / 180.0,
                          thz_to_omega(c.frequency_thz));
}

std::vector<std::string> validity_warnings(const Config& c) {
  std::vector<std::string> w;
  const double radius = radius_from_index(c.m_index);
  if (radius >= 30e-9)
    w.push_back("tube radius exceeds 30 nm; thin-tube surface model strained");
  const double len = 2.0 * c.half_length_nm * 1e-9;
  if (len <= 10e-9 || len >= 1e-3)
    w.push_back("tube length outside (10 nm, 1 mm) window");
  if (c.mu_ev >= 0.5)
    w.push_back("chemical potential above 0.5 eV; two-band model strained");
  if (c.frequency_thz >= 300.0)
    w.push_back("frequency above 300 THz; higher subbands neglected");
  if (c.theta0_deg > 90.0)
    w.push_back("theta0 above 90 deg; wave propagates toward -z");
  return w;
}

std::vector<std::string> preset_names() {
  return {"fig3", "fig3-local", "fig4", "fig5a", "fig5b", "fig6"};
}

Config preset(const std::string& name) {
  Config c;  // defaults already match the (12,0), L = 100 nm reference tube
  if (name == "fig3") {
    // The pulling dip is a degenerate-threshold feature; the thermally
    // smeared conductivity at 300 K washes it out entirely.
    c.temperature_k = 0.0;
    c.methods = {"numeric", "analytic", "local"};
    c.sweep = Config::Sweep{"frequency_thz", 150.0, 250.0, 101};
  } else if (name == "fig3-local") {
    c.local_override = 1e3;
    c.methods = {"numeric", "local"};
    c.sweep = Config::Sweep{"frequency_thz", 150.0, 250.0, 101};
  } else if (name == "fig4") {
    c.temperature_k = 0.0;
    c.frequency_thz = 200.0;
    c.n_segments = 161;
    c.methods = {"analytic"};
    c.sweep = Config::Sweep{"mu_ev", 0.3, 0.5, 101};
  } else if (name == "fig5a") {
    c.temperature_k = 0.0;
    c.frequency_thz = 199.6;  // just below the interband edge: pulling regime
    c.methods = {"analytic"};
    c.sweep = Config::Sweep{"half_length_nm", 50.0, 400.0, 8};
  } else if (name == "fig5b") {
    c.frequency_thz = 215.0;
    c.local_override = 1e3;
    c.methods = {"numeric", "local"};
    c.sweep = Config::Sweep{"half_length_nm", 50.0, 400.0, 8};
  } else if (name == "fig6") {
    c.temperature_k = 0.0;
    c.frequency_thz = 200.0;
    c.methods = {"analytic"};
    c.sweep = Config::Sweep{"theta0_deg", 2.0, 88.0, 87};
  } else {
    throw ConfigError("unknown preset \"" + name + "\"");
  }
  return c;
}

}  // namespace nanopull
