#pragma once

#include <map>
#include <string>

#include "sluiceops/tide.hpp"

namespace sluiceops {

// Flat `key = value` configuration file; '#' starts a comment.
class ConfigFile {
 public:
  static ConfigFile load(const std::string& path);
  static ConfigFile from_string(const std::string& text);

  bool has(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

// Builds the simulation inputs from the documented config keys (a_lake,
// q_river, bays, bay_width, sill_level, tide.*, scenario.*, pid.*, dt_s,
// cycles, losses.*, a_max). Per-m loss overrides use losses.mK.c_c_in /
// losses.mK.xi_out.
SluiceSystem system_from_config(const ConfigFile& cfg);
ScenarioConfig scenario_from_config(const ConfigFile& cfg,
                                    const SluiceSystem& system);
LossCoefficients losses_for_m(const ConfigFile& cfg, int m);

}  // namespace sluiceops
