#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rata/domain.hpp"
#include "rata/rng.hpp"

namespace rata {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kMuEarth = 3.986004418e14;  // m^3/s^2
inline constexpr double kMinAltitudeKm = 500.0;
inline constexpr double kMaxAltitudeKm = 2000.0;

enum class GroupId { G1 = 0, G2 = 1, G3 = 2, G4 = 3 };

inline const char* to_string(GroupId g) {
  switch (g) {
    case GroupId::G1: return "G1";
    case GroupId::G2: return "G2";
    case GroupId::G3: return "G3";
    case GroupId::G4: return "G4";
  }
  return "?";
}

inline std::optional<GroupId> parse_group_id(const std::string& s) {
  if (s == "G1" || s == "g1") return GroupId::G1;
  if (s == "G2" || s == "g2") return GroupId::G2;
  if (s == "G3" || s == "g3") return GroupId::G3;
  if (s == "G4" || s == "g4") return GroupId::G4;
  return std::nullopt;
}

struct GroupConfig {
  GroupId group_id = GroupId::G1;
  int satellite_count = 20;
  int sltn_count = 1;
  double altitude_min_km = 500.0;
  double altitude_max_km = 1200.0;
  double arrival_rate_tasks_per_s = 0.250;
  double sim_duration_s = 6000.0;
  // Share of SatToSat / SatToGnd / GndToSat arrivals.
  std::array<double, 3> category_mix = {0.40, 0.30, 0.30};
  double beta_angle_rad = 0.0;
  // Carried in the config surface but not consumed by any model term.
  double inclination_deg = 53.0;
};

// Per-satellite hardware defaults applied when building a constellation.
struct HardwareProfile {
  double compute_speed_gflops = 20.0;
  int total_cores = 4;
  double memory_gb = 128.0;
  double storage_gb = 512.0;
  double battery_capacity_wh = 280.0;
  double recharge_watts = 100.0;
  double energy_per_flop_j = 5e-9;
  // Documented but inert: per-satellite ground link rate. The shared
  // ground channel bandwidth is what actually gates transfers.
  double per_sat_link_mbps = 100.0;
};

inline void validate(const GroupConfig& g) {
  if (g.satellite_count < 1) throw ConfigError("satellite_count must be >= 1");
  if (g.sltn_count < 1) throw ConfigError("sltn_count must be >= 1");
  if (g.sltn_count > g.satellite_count)
    throw ConfigError("sltn_count must not exceed satellite_count");
  if (g.altitude_min_km > g.altitude_max_km)
    throw ConfigError("altitude_min_km must not exceed altitude_max_km");
  if (g.altitude_min_km < kMinAltitudeKm || g.altitude_max_km > kMaxAltitudeKm)
    throw ConfigError("altitudes must lie within [500, 2000] km");
  if (g.arrival_rate_tasks_per_s <= 0.0)
    throw ConfigError("arrival_rate_tasks_per_s must be > 0");
  if (g.sim_duration_s < 0.0) throw ConfigError("sim_duration_s must be >= 0");
  double mix_sum = g.category_mix[0] + g.category_mix[1] + g.category_mix[2];
  for (double w : g.category_mix)
    if (w < 0.0) throw ConfigError("category mix weights must be >= 0");
  if (std::abs(mix_sum - 1.0) > kFractionTol)
    throw ConfigError("category mix weights must sum to 1");
  if (std::abs(g.beta_angle_rad) >= std::numbers::pi / 2)
    throw ConfigError("beta_angle_rad must lie in (-pi/2, pi/2)");
}

// Circular-orbit period from the vis-viva relation.
inline double orbital_period(double altitude_km) {
  if (altitude_km < kMinAltitudeKm || altitude_km > kMaxAltitudeKm)
    throw ConfigError("altitude outside supported range [500, 2000] km");
  double radius_m = (kEarthRadiusKm + altitude_km) * 1e3;
  return 2.0 * std::numbers::pi * std::sqrt(radius_m * radius_m * radius_m / kMuEarth);
}

// Fraction of each orbit spent in Earth's shadow, cylindrical-shadow
// model. At high beta angles the orbit can be eclipse-free.
inline double eclipse_fraction(double altitude_km, double beta_angle_rad) {
  double r = kEarthRadiusKm + altitude_km;
  if (beta_angle_rad == 0.0)
    return std::asin(kEarthRadiusKm / r) / std::numbers::pi;
  double horizon = std::sqrt(altitude_km * altitude_km + 2.0 * kEarthRadiusKm * altitude_km);
  double arg = horizon / (r * std::cos(beta_angle_rad));
  if (arg >= 1.0) return 0.0;
  return std::acos(arg) / std::numbers::pi;
}

// The shadow arc is centred on orbital angle pi.
inline bool in_sunlight(const SatelliteState& sat, double t_s) {
  double two_pi = 2.0 * std::numbers::pi;
  double theta = std::fmod(two_pi * t_s / sat.orbital_period_s + sat.phase_offset, two_pi);
  if (theta < 0.0) theta += two_pi;
  return std::abs(theta - std::numbers::pi) >= std::numbers::pi * sat.eclipse_fraction;
}

inline double recharge_rate(const SatelliteState& sat, double t_s) {
  return in_sunlight(sat, t_s) ? sat.recharge_watts : 0.0;
}

// Equal-weight mean of the four availability ratios; used to pick roots.
inline double resource_score(const SatelliteState& sat) {
  double cores = static_cast<double>(sat.available_cores()) / sat.total_cores;
  double mem = sat.available_memory_gb() / sat.total_memory_gb;
  double sto = sat.available_storage_gb() / sat.total_storage_gb;
  double bat = sat.battery_level_wh / sat.battery_capacity_wh;
  return 0.25 * (cores + mem + sto + bat);
}

// Partition satellites into sltn_count contiguous chunks of the
// phase-sorted order (sizes differing by at most one) and give each
// chunk the member with the best resource score as root.
inline std::vector<Sltn> form_sltns(const std::vector<SatelliteState>& sats, int sltn_count) {
  if (sltn_count < 1) throw ConfigError("sltn_count must be >= 1");
  if (static_cast<std::size_t>(sltn_count) > sats.size())
    throw ConfigError("sltn_count must not exceed satellite count");

  std::vector<std::size_t> order(sats.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sats[a].phase_offset != sats[b].phase_offset)
      return sats[a].phase_offset < sats[b].phase_offset;
    return sats[a].id < sats[b].id;
  });

  std::vector<Sltn> out;
  out.reserve(static_cast<std::size_t>(sltn_count));
  std::size_t n = sats.size();
  std::size_t k = static_cast<std::size_t>(sltn_count);
  std::size_t base = n / k, extra = n % k;
  std::size_t pos = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t len = base + (c < extra ? 1 : 0);
    std::size_t root_idx = order[pos];
    for (std::size_t i = pos; i < pos + len; ++i) {
      std::size_t cand = order[i];
      double sc = resource_score(sats[cand]);
      double sr = resource_score(sats[root_idx]);
      if (sc > sr || (sc == sr && sats[cand].id < sats[root_idx].id)) root_idx = cand;
    }
    Sltn sltn;
    sltn.root_id = sats[root_idx].id;
    for (std::size_t i = pos; i < pos + len; ++i)
      if (order[i] != root_idx) sltn.child_ids.push_back(sats[order[i]].id);
    std::sort(sltn.child_ids.begin(), sltn.child_ids.end());
    out.push_back(std::move(sltn));
    pos += len;
  }
  return out;
}

// Satellites get ids 0..n-1, a uniform altitude in the group's band and
// a uniform phase offset so eclipse windows de-synchronise. Batteries
// start full.
inline std::vector<SatelliteState> build_constellation(const GroupConfig& group,
                                                       const HardwareProfile& hw, Rng& rng) {
  validate(group);
  std::vector<SatelliteState> sats;
  sats.reserve(static_cast<std::size_t>(group.satellite_count));
  for (int i = 0; i < group.satellite_count; ++i) {
    SatelliteState s;
    s.id = i;
    s.altitude_km = rng.uniform(group.altitude_min_km, group.altitude_max_km);
    s.phase_offset = rng.uniform(0.0, 2.0 * std::numbers::pi);
    s.orbital_period_s = orbital_period(s.altitude_km);
    s.eclipse_fraction = eclipse_fraction(s.altitude_km, group.beta_angle_rad);
    s.compute_speed_gflops = hw.compute_speed_gflops;
    s.total_cores = hw.total_cores;
    s.total_memory_gb = hw.memory_gb;
    s.total_storage_gb = hw.storage_gb;
    s.battery_capacity_wh = hw.battery_capacity_wh;
    s.battery_level_wh = hw.battery_capacity_wh;
    s.recharge_watts = hw.recharge_watts;
    s.energy_per_flop_j = hw.energy_per_flop_j;
    sats.push_back(s);
  }
  return sats;
}

}  // namespace rata
