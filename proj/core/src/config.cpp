#include <dispmap/config.hpp>
#include <dispmap/error.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace dispmap {

std::vector<double> SweepRange::values() const {
  if (points <= 0) throw ConfigError("sweep range is empty (points = " + std::to_string(points) + ")");
  if (points == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = start + (stop - start) * i / (points - 1);
  }
  return out;
}

namespace {

using nlohmann::json;

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return j.get<int>();
}

SweepRange sweep(const json& j, const std::string& key) {
  if (!j.is_object()) throw ConfigError("config key '" + key + "' must be an object");
  SweepRange r;
  bool has_points = false;
  for (const auto& [k, v] : j.items()) {
    const std::string full = key + "." + k;
    if (k == "start_mhz") r.start = number(v, full);
    else if (k == "stop_mhz") r.stop = number(v, full);
    else if (k == "points") { r.points = integer(v, full); has_points = true; }
    else throw ConfigError("unknown config key '" + full + "'");
  }
  if (!has_points || r.points <= 0) throw ConfigError("config key '" + key + "' has an empty sweep range");
  return r;
}

PulseSpec pulse(const json& j, const PulseSpec& current) {
  if (!j.is_object()) throw ConfigError("config key 'pulse' must be an object");
  std::string kind = current.kind() == PulseKind::Constant ? "constant" : "square-gaussian";
  double omega = current.omega_c();
  double tau_p = current.tau_p() > 0 ? current.tau_p() : 1000.0;
  double tau_r = current.tau_r() > 0 ? current.tau_r() : 100.0;
  double sigma_r = current.sigma_r() > 0 ? current.sigma_r() : 50.0;
  for (const auto& [k, v] : j.items()) {
    const std::string full = "pulse." + k;
    if (k == "kind") {
      if (!v.is_string()) throw ConfigError("config key 'pulse.kind' must be a string");
      kind = v.get<std::string>();
    } else if (k == "omega_c_mhz") omega = number(v, full);
    else if (k == "tau_p_ns") tau_p = number(v, full);
    else if (k == "tau_r_ns") tau_r = number(v, full);
    else if (k == "sigma_r_ns") sigma_r = number(v, full);
    else throw ConfigError("unknown config key '" + full + "'");
  }
  try {
    if (kind == "constant") return PulseSpec::constant(omega);
    if (kind == "square-gaussian") return PulseSpec::square_gaussian(omega, tau_p, tau_r, sigma_r);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config key 'pulse': ") + e.what());
  }
  throw ConfigError("config key 'pulse.kind' must be 'constant' or 'square-gaussian', got '" +
                    kind + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  RunConfig c;
  for (const auto& [k, v] : root.items()) {
    if (k == "delta_ad_mhz") c.params.delta_ad = number(v, k);
    else if (k == "delta_cd_mhz") c.params.delta_cd = number(v, k);
    else if (k == "alpha_a_mhz") c.params.alpha_a = number(v, k);
    else if (k == "chi_ac_mhz") c.params.chi_ac = number(v, k);
    else if (k == "kappa_c_mhz") c.params.kappa_c = number(v, k);
    else if (k == "n_a") c.params.n_a = integer(v, k);
    else if (k == "n_c") c.params.n_c = integer(v, k);
    else if (k == "pulse") c.pulse = pulse(v, c.pulse);
    else if (k == "detuning_sweep") c.detuning_sweep = sweep(v, k);
    else if (k == "drive_sweep") c.drive_sweep = sweep(v, k);
    else if (k == "dt_ns") c.dt_ns = number(v, k);
    else if (k == "t_end_ns") c.t_end_ns = number(v, k);
    else if (k == "record_every_ns") c.record_every_ns = number(v, k);
    else if (k == "photon") c.photon = number(v, k);
    else if (k == "max_level") c.max_level = integer(v, k);
    else throw ConfigError("unknown config key '" + k + "'");
  }
  try {
    validate(c.params);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(c.dt_ns > 0.0)) throw ConfigError("config key 'dt_ns' must be positive");
  if (!(c.t_end_ns > 0.0)) throw ConfigError("config key 't_end_ns' must be positive");
  if (c.record_every_ns < 0.0) throw ConfigError("config key 'record_every_ns' must be non-negative");
  if (c.photon < 0.0) throw ConfigError("config key 'photon' must be non-negative");
  if (c.max_level < 0) throw ConfigError("config key 'max_level' must be non-negative");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace dispmap
