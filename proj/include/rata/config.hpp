#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "rata/allocator.hpp"
#include "rata/constellation.hpp"
#include "rata/workload.hpp"

namespace rata {

struct SimConfig {
  GroupConfig group;
  HardwareProfile hardware;
  AllocParams alloc;
  double ground_bandwidth_mbps = 100.0;
  WorkloadParams workload;
};

inline void validate(const SimConfig& cfg) {
  validate(cfg.group);
  validate(cfg.workload);
  if (cfg.hardware.compute_speed_gflops <= 0.0)
    throw ConfigError("compute_speed_gflops must be > 0");
  if (cfg.hardware.total_cores < 1) throw ConfigError("total_cores must be >= 1");
  if (cfg.hardware.memory_gb <= 0.0) throw ConfigError("memory_gb must be > 0");
  if (cfg.hardware.storage_gb <= 0.0) throw ConfigError("storage_gb must be > 0");
  if (cfg.hardware.battery_capacity_wh <= 0.0)
    throw ConfigError("battery_capacity_wh must be > 0");
  if (cfg.hardware.recharge_watts < 0.0) throw ConfigError("recharge_watts must be >= 0");
  if (cfg.hardware.energy_per_flop_j <= 0.0) throw ConfigError("energy_per_flop_j must be > 0");
  if (cfg.alloc.full_task_cores < 1) throw ConfigError("full_task_cores must be >= 1");
  if (cfg.alloc.memory_per_size_gb < 0.0) throw ConfigError("memory_per_size_gb must be >= 0");
  if (cfg.alloc.storage_per_size_gb < 0.0) throw ConfigError("storage_per_size_gb must be >= 0");
  if (cfg.alloc.isl_bandwidth_mbps <= 0.0) throw ConfigError("isl_bandwidth_mbps must be > 0");
  if (cfg.alloc.result_ratio < 0.0 || cfg.alloc.result_ratio > 1.0)
    throw ConfigError("result_ratio must lie in [0, 1]");
  if (cfg.ground_bandwidth_mbps <= 0.0) throw ConfigError("ground_bandwidth_mbps must be > 0");
}

// G1-G4 presets: constellation size, SLTN count and offered rate grow
// together; later groups extend into the higher tier.
inline SimConfig group_preset(GroupId g) {
  SimConfig cfg;
  cfg.group.group_id = g;
  switch (g) {
    case GroupId::G1:
      cfg.group.satellite_count = 20;
      cfg.group.sltn_count = 1;
      cfg.group.arrival_rate_tasks_per_s = 0.250;
      cfg.group.altitude_min_km = 500.0;
      cfg.group.altitude_max_km = 1200.0;
      break;
    case GroupId::G2:
      cfg.group.satellite_count = 55;
      cfg.group.sltn_count = 6;
      cfg.group.arrival_rate_tasks_per_s = 1.624;
      cfg.group.altitude_min_km = 500.0;
      cfg.group.altitude_max_km = 1200.0;
      break;
    case GroupId::G3:
      cfg.group.satellite_count = 90;
      cfg.group.sltn_count = 15;
      cfg.group.arrival_rate_tasks_per_s = 3.779;
      cfg.group.altitude_min_km = 500.0;
      cfg.group.altitude_max_km = 2000.0;
      break;
    case GroupId::G4:
      cfg.group.satellite_count = 120;
      cfg.group.sltn_count = 29;
      cfg.group.arrival_rate_tasks_per_s = 16.335;
      cfg.group.altitude_min_km = 500.0;
      cfg.group.altitude_max_km = 2000.0;
      break;
  }
  cfg.group.sim_duration_s = 6000.0;
  return cfg;
}

// Flat key/value file with [section] headers, '#' or ';' comments and
// one "key = value" pair per line.
inline std::map<std::string, std::string> parse_config_file(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line, section;
  int lineno = 0;
  auto trim = [](std::string s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    std::string full = section.empty() ? key : section + "." + key;
    if (kv.count(full))
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key " + full);
    kv[full] = value;
  }
  return kv;
}

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  return parse_config_file(is);
}

namespace detail {

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not a number: " + v);
  }
}

inline int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not an integer: " + v);
  }
}

}  // namespace detail

// Applies a parsed file onto cfg. Unknown keys are schema errors. When
// group.id is present the matching preset is loaded first so a file can
// name a group and then override selected fields.
inline void apply_config(SimConfig& cfg, const std::map<std::string, std::string>& kv) {
  auto it = kv.find("group.id");
  if (it != kv.end()) {
    auto g = parse_group_id(it->second);
    if (!g) throw ConfigError("config key group.id: unknown group: " + it->second);
    SimConfig preset = group_preset(*g);
    cfg.group = preset.group;
  }
  for (const auto& [key, value] : kv) {
    auto d = [&] { return detail::to_double(key, value); };
    auto i = [&] { return detail::to_int(key, value); };
    if (key == "group.id") continue;
    if (key == "group.satellite_count") cfg.group.satellite_count = i();
    else if (key == "group.sltn_count") cfg.group.sltn_count = i();
    else if (key == "group.altitude_min_km") cfg.group.altitude_min_km = d();
    else if (key == "group.altitude_max_km") cfg.group.altitude_max_km = d();
    else if (key == "group.arrival_rate_tasks_per_s") cfg.group.arrival_rate_tasks_per_s = d();
    else if (key == "group.sim_duration_s") cfg.group.sim_duration_s = d();
    else if (key == "group.mix_sat_to_sat") cfg.group.category_mix[0] = d();
    else if (key == "group.mix_sat_to_gnd") cfg.group.category_mix[1] = d();
    else if (key == "group.mix_gnd_to_sat") cfg.group.category_mix[2] = d();
    else if (key == "group.beta_angle_rad") cfg.group.beta_angle_rad = d();
    else if (key == "group.inclination_deg") cfg.group.inclination_deg = d();
    else if (key == "hardware.compute_speed_gflops") cfg.hardware.compute_speed_gflops = d();
    else if (key == "hardware.total_cores") cfg.hardware.total_cores = i();
    else if (key == "hardware.memory_gb") cfg.hardware.memory_gb = d();
    else if (key == "hardware.storage_gb") cfg.hardware.storage_gb = d();
    else if (key == "hardware.battery_capacity_wh") cfg.hardware.battery_capacity_wh = d();
    else if (key == "hardware.recharge_watts") cfg.hardware.recharge_watts = d();
    else if (key == "hardware.energy_per_flop_j") cfg.hardware.energy_per_flop_j = d();
    else if (key == "hardware.per_sat_link_mbps") cfg.hardware.per_sat_link_mbps = d();
    else if (key == "allocator.full_task_cores") cfg.alloc.full_task_cores = i();
    else if (key == "allocator.memory_per_size_gb") cfg.alloc.memory_per_size_gb = d();
    else if (key == "allocator.storage_per_size_gb") cfg.alloc.storage_per_size_gb = d();
    else if (key == "allocator.isl_bandwidth_mbps") cfg.alloc.isl_bandwidth_mbps = d();
    else if (key == "allocator.result_ratio") cfg.alloc.result_ratio = d();
    else if (key == "network.ground_bandwidth_mbps") cfg.ground_bandwidth_mbps = d();
    else if (key == "workload.intensity_min_flop_per_mb")
      cfg.workload.intensity_min_flop_per_mb = d();
    else if (key == "workload.intensity_max_flop_per_mb")
      cfg.workload.intensity_max_flop_per_mb = d();
    else if (key == "workload.sat_to_sat_size_min_gb") cfg.workload.categories[0].size_min_gb = d();
    else if (key == "workload.sat_to_sat_size_max_gb") cfg.workload.categories[0].size_max_gb = d();
    else if (key == "workload.sat_to_sat_dtn_min") cfg.workload.categories[0].dtn_min = d();
    else if (key == "workload.sat_to_sat_dtn_max") cfg.workload.categories[0].dtn_max = d();
    else if (key == "workload.sat_to_gnd_size_min_gb") cfg.workload.categories[1].size_min_gb = d();
    else if (key == "workload.sat_to_gnd_size_max_gb") cfg.workload.categories[1].size_max_gb = d();
    else if (key == "workload.gnd_to_sat_size_min_gb") cfg.workload.categories[2].size_min_gb = d();
    else if (key == "workload.gnd_to_sat_size_max_gb") cfg.workload.categories[2].size_max_gb = d();
    else if (key == "workload.gnd_to_sat_dtn_min") cfg.workload.categories[2].dtn_min = d();
    else if (key == "workload.gnd_to_sat_dtn_max") cfg.workload.categories[2].dtn_max = d();
    else throw ConfigError("config: unknown key: " + key);
  }
  cfg.workload.categories[0].mix_weight = cfg.group.category_mix[0];
  cfg.workload.categories[1].mix_weight = cfg.group.category_mix[1];
  cfg.workload.categories[2].mix_weight = cfg.group.category_mix[2];
}

}  // namespace rata
