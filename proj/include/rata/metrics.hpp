#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rata/constellation.hpp"
#include "rata/domain.hpp"

namespace rata {

struct RunMeta {
  GroupId group = GroupId::G1;
  std::uint64_t seed = 0;
  double arrival_rate_tasks_per_s = 0.0;
  double sim_duration_s = 0.0;
  int satellite_count = 0;
  int sltn_count = 0;
};

struct CategoryStats {
  std::int64_t generated = 0;
  std::int64_t completed = 0;
  std::int64_t blocked = 0;
  bool no_traffic = true;
  double blocking_pct = 0.0;
  std::map<std::string, std::int64_t> reason_histogram;
  double response_avg_h = 0.0;
  double response_max_h = 0.0;
  // Mean satellite-execution phase (allocation to completion) of the
  // completed tasks that ran on satellites; strips ground-channel waits.
  double exec_avg_h = 0.0;
};

struct SatelliteEnergy {
  SatId id = 0;
  double consumed_wh = 0.0;
  double recharged_wh = 0.0;
  double net_wh = 0.0;  // recharged - consumed; negative means a loss
  double capacity_used_pct = 0.0;
  double battery_end_wh = 0.0;
  double clamp_lost_recharge_wh = 0.0;
  double clamp_unmet_consume_wh = 0.0;
};

struct EnergyAggregate {
  double avg_consumed_wh = 0.0;
  double avg_recharged_wh = 0.0;
  double avg_net_wh = 0.0;
  double min_net_wh = 0.0;
  double max_abs_net_wh = 0.0;
  double avg_capacity_used_pct = 0.0;
  double recharge_efficiency_pct = 0.0;  // 100 * total recharged / total consumed
  double energy_blocking_pct = 0.0;      // share of blocked tasks rejected on energy
  double sunlit_work_fraction = 0.0;     // share of consumed energy spent in sunlight
};

struct MetricsReport {
  RunMeta meta;
  std::array<CategoryStats, 3> per_category;
  std::int64_t generated_total = 0;
  std::int64_t completed_total = 0;
  std::int64_t blocked_total = 0;
  bool no_traffic = true;
  double overall_blocking_pct = 0.0;
  std::vector<SatelliteEnergy> per_satellite;
  EnergyAggregate energy;
};

inline MetricsReport summarize(const std::vector<Task>& tasks,
                               const std::vector<SatelliteState>& sats, const RunMeta& meta) {
  MetricsReport r;
  r.meta = meta;

  std::array<double, 3> resp_sum = {0, 0, 0};
  std::array<double, 3> exec_sum = {0, 0, 0};
  std::array<std::int64_t, 3> exec_n = {0, 0, 0};
  std::int64_t energy_blocked = 0;
  for (const auto& t : tasks) {
    auto ci = static_cast<std::size_t>(t.category);
    CategoryStats& c = r.per_category[ci];
    ++c.generated;
    if (t.status == TaskStatus::Blocked) {
      ++c.blocked;
      if (t.blocking_reason) {
        ++c.reason_histogram[render_block_reason(*t.blocking_reason)];
        if (t.blocking_reason->resource == ResourceTag::Energy) ++energy_blocked;
      }
    } else if (t.status == TaskStatus::Completed) {
      ++c.completed;
      double resp_h = (*t.completion_time_s - t.arrival_time_s) / 3600.0;
      resp_sum[ci] += resp_h;
      c.response_max_h = std::max(c.response_max_h, resp_h);
      if (t.exec_start_s) {
        exec_sum[ci] += (*t.completion_time_s - *t.exec_start_s) / 3600.0;
        ++exec_n[ci];
      }
    }
  }
  for (std::size_t ci = 0; ci < 3; ++ci) {
    CategoryStats& c = r.per_category[ci];
    c.no_traffic = c.generated == 0;
    c.blocking_pct = c.no_traffic ? 0.0 : 100.0 * static_cast<double>(c.blocked) /
                                              static_cast<double>(c.generated);
    c.response_avg_h = c.completed > 0 ? resp_sum[ci] / static_cast<double>(c.completed) : 0.0;
    c.exec_avg_h = exec_n[ci] > 0 ? exec_sum[ci] / static_cast<double>(exec_n[ci]) : 0.0;
    r.generated_total += c.generated;
    r.completed_total += c.completed;
    r.blocked_total += c.blocked;
  }
  r.no_traffic = r.generated_total == 0;
  r.overall_blocking_pct = r.no_traffic ? 0.0
                                        : 100.0 * static_cast<double>(r.blocked_total) /
                                              static_cast<double>(r.generated_total);

  double tot_cons = 0.0, tot_rech = 0.0, tot_sunlit = 0.0;
  double sum_net = 0.0, sum_cap = 0.0;
  r.energy.min_net_wh = 0.0;
  for (const auto& s : sats) {
    SatelliteEnergy e;
    e.id = s.id;
    e.consumed_wh = s.cum_consumed_wh;
    e.recharged_wh = s.cum_recharged_wh;
    e.net_wh = s.cum_recharged_wh - s.cum_consumed_wh;
    e.capacity_used_pct = 100.0 * s.cum_consumed_wh / s.battery_capacity_wh;
    e.battery_end_wh = s.battery_level_wh;
    e.clamp_lost_recharge_wh = s.clamp_lost_recharge_wh;
    e.clamp_unmet_consume_wh = s.clamp_unmet_consume_wh;
    r.per_satellite.push_back(e);
    tot_cons += s.cum_consumed_wh;
    tot_rech += s.cum_recharged_wh;
    tot_sunlit += s.cum_consumed_sunlit_wh;
    sum_net += e.net_wh;
    sum_cap += e.capacity_used_pct;
    r.energy.min_net_wh = std::min(r.energy.min_net_wh, e.net_wh);
    r.energy.max_abs_net_wh = std::max(r.energy.max_abs_net_wh, std::abs(e.net_wh));
  }
  if (!sats.empty()) {
    double n = static_cast<double>(sats.size());
    r.energy.avg_consumed_wh = tot_cons / n;
    r.energy.avg_recharged_wh = tot_rech / n;
    r.energy.avg_net_wh = sum_net / n;
    r.energy.avg_capacity_used_pct = sum_cap / n;
  }
  r.energy.recharge_efficiency_pct = tot_cons > 0.0 ? 100.0 * tot_rech / tot_cons : 100.0;
  r.energy.sunlit_work_fraction = tot_cons > 0.0 ? tot_sunlit / tot_cons : 1.0;
  r.energy.energy_blocking_pct = r.blocked_total > 0 ? 100.0 * static_cast<double>(energy_blocked) /
                                                           static_cast<double>(r.blocked_total)
                                                     : 0.0;
  return r;
}

struct PowerLawFit {
  double coefficient = 0.0;  // a in y = a * x^b
  double exponent = 0.0;     // b
};

// Ordinary least squares on (ln x, ln y).
inline PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw std::invalid_argument("fit_power_law: need at least two points");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    if (x <= 0.0 || y <= 0.0)
      throw std::domain_error("fit_power_law: points must be strictly positive");
    mx += std::log(x);
    my += std::log(y);
  }
  double n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : points) {
    double dx = std::log(x) - mx;
    sxy += dx * (std::log(y) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::domain_error("fit_power_law: x values must not all coincide");
  PowerLawFit f;
  f.exponent = sxy / sxx;
  f.coefficient = std::exp(my - f.exponent * mx);
  return f;
}

inline PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  return fit_power_law(std::span<const std::pair<double, double>>(points));
}

// Per-group mean of the per-seed reports, used for sweep tables.
struct GroupAggregate {
  GroupId group = GroupId::G1;
  int satellite_count = 0;
  int seeds = 0;
  double generated_avg = 0.0;
  double blocked_avg = 0.0;
  double overall_blocking_pct = 0.0;
  std::array<double, 3> blocking_pct{};
  std::array<double, 3> response_avg_h{};
  std::array<double, 3> response_max_h{};  // max across seeds
  double energy_consumed_wh = 0.0;
  double energy_recharged_wh = 0.0;
  double net_energy_wh = 0.0;
  double capacity_used_pct = 0.0;
  double recharge_efficiency_pct = 0.0;
  double energy_blocking_pct = 0.0;
  double sunlit_work_fraction = 0.0;
  double completed_avg = 0.0;
  double tasks_per_wh_per_sat = 0.0;
};

inline GroupAggregate aggregate_reports(const std::vector<MetricsReport>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate_reports: no runs");
  GroupAggregate g;
  g.group = runs.front().meta.group;
  g.satellite_count = runs.front().meta.satellite_count;
  g.seeds = static_cast<int>(runs.size());
  double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    g.generated_avg += static_cast<double>(r.generated_total) / n;
    g.blocked_avg += static_cast<double>(r.blocked_total) / n;
    g.completed_avg += static_cast<double>(r.completed_total) / n;
    g.overall_blocking_pct += r.overall_blocking_pct / n;
    for (std::size_t ci = 0; ci < 3; ++ci) {
      g.blocking_pct[ci] += r.per_category[ci].blocking_pct / n;
      g.response_avg_h[ci] += r.per_category[ci].response_avg_h / n;
      g.response_max_h[ci] = std::max(g.response_max_h[ci], r.per_category[ci].response_max_h);
    }
    g.energy_consumed_wh += r.energy.avg_consumed_wh / n;
    g.energy_recharged_wh += r.energy.avg_recharged_wh / n;
    g.net_energy_wh += r.energy.avg_net_wh / n;
    g.capacity_used_pct += r.energy.avg_capacity_used_pct / n;
    g.recharge_efficiency_pct += r.energy.recharge_efficiency_pct / n;
    g.energy_blocking_pct += r.energy.energy_blocking_pct / n;
    g.sunlit_work_fraction += r.energy.sunlit_work_fraction / n;
  }
  if (g.energy_consumed_wh > 0.0 && g.satellite_count > 0)
    g.tasks_per_wh_per_sat =
        g.completed_avg / g.energy_consumed_wh / static_cast<double>(g.satellite_count);
  return g;
}

}  // namespace rata
