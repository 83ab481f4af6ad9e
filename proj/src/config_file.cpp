#include "sluiceops/config_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sluiceops {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> parse(std::istream& in,
                                         const std::string& origin) {
  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(origin + ": line " + std::to_string(line_no) +
                               ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error(origin + ": line " + std::to_string(line_no) +
                               ": empty key");
    }
    entries[key] = value;
  }
  return entries;
}

}  // namespace

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  ConfigFile out;
  out.entries_ = parse(in, path);
  return out;
}

ConfigFile ConfigFile::from_string(const std::string& text) {
  std::istringstream in(text);
  ConfigFile out;
  out.entries_ = parse(in, "<string>");
  return out;
}

bool ConfigFile::has(const std::string& key) const {
  return entries_.count(key) > 0;
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "' is not a number: " +
                             it->second);
  }
}

double ConfigFile::require_double(const std::string& key) const {
  if (!has(key)) throw std::runtime_error("missing required config key '" + key + "'");
  return get_double(key, 0.0);
}

int ConfigFile::get_int(const std::string& key, int fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "' is not an integer: " +
                             it->second);
  }
}

std::string ConfigFile::get_string(const std::string& key,
                                   const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

SluiceSystem system_from_config(const ConfigFile& cfg) {
  SluiceSystem sys;
  sys.a_lake = cfg.require_double("a_lake");
  sys.q_river = cfg.get_double("q_river", 0.0);
  sys.n = cfg.get_int("bays", 1);
  sys.w = cfg.require_double("bay_width");
  sys.sill_level = cfg.get_double("sill_level", 0.0);
  sys.tide.mean_level = cfg.require_double("tide.mean");
  sys.tide.amplitude = cfg.get_double("tide.amplitude", 0.0);
  sys.tide.period = cfg.require_double("tide.period_h") * 3600.0;
  sys.h_lake0 = cfg.get_double("h_lake0", sys.tide.mean_level);
  sys.a_max = cfg.get_double("a_max", 3.0);
  sys.losses.c_c_in = cfg.get_double("losses.c_c_in", 0.9);
  sys.losses.xi_out = cfg.get_double("losses.xi_out", 1.0);
  for (int m = 1; m <= sys.n; ++m) {
    const std::string prefix = "losses.m" + std::to_string(m) + ".";
    if (cfg.has(prefix + "c_c_in") || cfg.has(prefix + "xi_out")) {
      sys.losses_per_m[m] = losses_for_m(cfg, m);
    }
  }
  return sys;
}

LossCoefficients losses_for_m(const ConfigFile& cfg, int m) {
  LossCoefficients losses;
  losses.c_c_in = cfg.get_double("losses.c_c_in", 0.9);
  losses.xi_out = cfg.get_double("losses.xi_out", 1.0);
  const std::string prefix = "losses.m" + std::to_string(m) + ".";
  losses.c_c_in = cfg.get_double(prefix + "c_c_in", losses.c_c_in);
  losses.xi_out = cfg.get_double(prefix + "xi_out", losses.xi_out);
  return losses;
}

ScenarioConfig scenario_from_config(const ConfigFile& cfg,
                                    const SluiceSystem& system) {
  ScenarioConfig sc;
  const std::string mode = cfg.get_string("scenario.mode", "constant");
  if (mode == "constant" || mode == "constant_opening") {
    sc.mode = ScenarioMode::constant_opening;
  } else if (mode == "pid") {
    sc.mode = ScenarioMode::pid;
  } else {
    throw std::runtime_error("unknown scenario.mode '" + mode + "'");
  }
  sc.m = cfg.get_int("scenario.m", 1);
  sc.h_target = cfg.require_double("scenario.h_target");
  sc.gains.kp = cfg.get_double("pid.kp", 0.5);
  sc.gains.ki = cfg.get_double("pid.ki", 0.1);
  sc.gains.kd = cfg.get_double("pid.kd", 0.0);
  sc.ramp_duration = cfg.get_double("pid.ramp_s", 1800.0);
  sc.dt = cfg.get_double("dt_s", 60.0);
  sc.duration = cfg.get_double("cycles", 4.0) * system.tide.period;
  sc.predicted_cd = cfg.get_double("scenario.predicted_cd", 0.0);
  return sc;
}

}  // namespace sluiceops
