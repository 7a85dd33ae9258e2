#pragma once

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rata/metrics.hpp"
#include "rata/network.hpp"
#include "rata/workload.hpp"

namespace rata {

using json = nlohmann::json;

inline json to_json(const CategoryStats& c) {
  json j;
  j["generated"] = c.generated;
  j["completed"] = c.completed;
  j["blocked"] = c.blocked;
  j["no_traffic"] = c.no_traffic;
  j["blocking_pct"] = c.blocking_pct;
  j["response_avg_h"] = c.response_avg_h;
  j["response_max_h"] = c.response_max_h;
  j["exec_avg_h"] = c.exec_avg_h;
  j["reasons"] = json::object();
  for (const auto& [reason, count] : c.reason_histogram) j["reasons"][reason] = count;
  return j;
}

inline json to_json(const MetricsReport& r) {
  json j;
  j["meta"] = {{"group", to_string(r.meta.group)},
               {"seed", r.meta.seed},
               {"arrival_rate_tasks_per_s", r.meta.arrival_rate_tasks_per_s},
               {"sim_duration_s", r.meta.sim_duration_s},
               {"satellite_count", r.meta.satellite_count},
               {"sltn_count", r.meta.sltn_count}};
  j["totals"] = {{"generated", r.generated_total},
                 {"completed", r.completed_total},
                 {"blocked", r.blocked_total},
                 {"no_traffic", r.no_traffic},
                 {"overall_blocking_pct", r.overall_blocking_pct}};
  for (std::size_t ci = 0; ci < 3; ++ci)
    j["categories"][to_string(static_cast<Category>(ci))] = to_json(r.per_category[ci]);
  j["energy"] = {{"avg_consumed_wh", r.energy.avg_consumed_wh},
                 {"avg_recharged_wh", r.energy.avg_recharged_wh},
                 {"avg_net_wh", r.energy.avg_net_wh},
                 {"min_net_wh", r.energy.min_net_wh},
                 {"max_abs_net_wh", r.energy.max_abs_net_wh},
                 {"avg_capacity_used_pct", r.energy.avg_capacity_used_pct},
                 {"recharge_efficiency_pct", r.energy.recharge_efficiency_pct},
                 {"energy_blocking_pct", r.energy.energy_blocking_pct},
                 {"sunlit_work_fraction", r.energy.sunlit_work_fraction}};
  j["satellites"] = json::array();
  for (const auto& s : r.per_satellite) {
    j["satellites"].push_back({{"id", s.id},
                               {"consumed_wh", s.consumed_wh},
                               {"recharged_wh", s.recharged_wh},
                               {"net_wh", s.net_wh},
                               {"capacity_used_pct", s.capacity_used_pct},
                               {"battery_end_wh", s.battery_end_wh},
                               {"clamp_lost_recharge_wh", s.clamp_lost_recharge_wh},
                               {"clamp_unmet_consume_wh", s.clamp_unmet_consume_wh}});
  }
  return j;
}

inline std::string render_json_report(const MetricsReport& r) { return to_json(r).dump(2) + "\n"; }

inline constexpr const char* kReportCsvHeader =
    "group,seed,satellites,sltn_count,arrival_rate_tasks_per_s,sim_duration_s,"
    "generated,completed,blocked,overall_blocking_pct,"
    "sat_to_sat_blocking_pct,sat_to_gnd_blocking_pct,gnd_to_sat_blocking_pct,"
    "sat_to_sat_response_avg_h,sat_to_sat_response_max_h,"
    "sat_to_gnd_response_avg_h,sat_to_gnd_response_max_h,"
    "gnd_to_sat_response_avg_h,gnd_to_sat_response_max_h,"
    "energy_consumed_wh,capacity_used_pct,energy_recharged_wh,"
    "recharge_efficiency_pct,net_energy_wh,energy_blocking_pct,sunlit_work_fraction";

inline std::string render_csv_row(const MetricsReport& r) {
  std::string out;
  auto add = [&](const std::string& s) {
    if (!out.empty()) out += ',';
    out += s;
  };
  add(to_string(r.meta.group));
  add(std::to_string(r.meta.seed));
  add(std::to_string(r.meta.satellite_count));
  add(std::to_string(r.meta.sltn_count));
  add(format_double(r.meta.arrival_rate_tasks_per_s));
  add(format_double(r.meta.sim_duration_s));
  add(std::to_string(r.generated_total));
  add(std::to_string(r.completed_total));
  add(std::to_string(r.blocked_total));
  add(format_double(r.overall_blocking_pct));
  for (std::size_t ci = 0; ci < 3; ++ci) add(format_double(r.per_category[ci].blocking_pct));
  for (std::size_t ci = 0; ci < 3; ++ci) {
    add(format_double(r.per_category[ci].response_avg_h));
    add(format_double(r.per_category[ci].response_max_h));
  }
  add(format_double(r.energy.avg_consumed_wh));
  add(format_double(r.energy.avg_capacity_used_pct));
  add(format_double(r.energy.avg_recharged_wh));
  add(format_double(r.energy.recharge_efficiency_pct));
  add(format_double(r.energy.avg_net_wh));
  add(format_double(r.energy.energy_blocking_pct));
  add(format_double(r.energy.sunlit_work_fraction));
  return out;
}

struct SweepFits {
  bool valid = false;
  PowerLawFit sat_to_sat_blocking;
  PowerLawFit overall_blocking;
  PowerLawFit sat_to_gnd_response;
  PowerLawFit tasks_per_wh;
};

inline SweepFits fit_sweep(const std::vector<GroupAggregate>& groups) {
  SweepFits fits;
  std::vector<std::pair<double, double>> b_ss, b_all, resp, eff;
  for (const auto& g : groups) {
    double s = static_cast<double>(g.satellite_count);
    b_ss.emplace_back(s, g.blocking_pct[0]);
    b_all.emplace_back(s, g.overall_blocking_pct);
    resp.emplace_back(s, g.response_avg_h[1]);
    eff.emplace_back(s, g.tasks_per_wh_per_sat);
  }
  auto positive = [](const std::vector<std::pair<double, double>>& pts) {
    for (const auto& [x, y] : pts)
      if (x <= 0.0 || y <= 0.0) return false;
    return pts.size() >= 2;
  };
  if (!positive(b_ss) || !positive(b_all) || !positive(resp) || !positive(eff)) return fits;
  fits.valid = true;
  fits.sat_to_sat_blocking = fit_power_law(b_ss);
  fits.overall_blocking = fit_power_law(b_all);
  fits.sat_to_gnd_response = fit_power_law(resp);
  fits.tasks_per_wh = fit_power_law(eff);
  return fits;
}

inline constexpr const char* kSweepCsvHeader =
    "group,satellites,seeds,generated_avg,completed_avg,blocked_avg,overall_blocking_pct,"
    "sat_to_sat_blocking_pct,sat_to_gnd_blocking_pct,gnd_to_sat_blocking_pct,"
    "sat_to_sat_response_avg_h,sat_to_gnd_response_avg_h,gnd_to_sat_response_avg_h,"
    "sat_to_sat_response_max_h,sat_to_gnd_response_max_h,gnd_to_sat_response_max_h,"
    "energy_consumed_wh,capacity_used_pct,energy_recharged_wh,recharge_efficiency_pct,"
    "net_energy_wh,energy_blocking_pct,sunlit_work_fraction,tasks_per_wh_per_sat";

inline std::string render_sweep_csv(const std::vector<GroupAggregate>& groups) {
  std::string out = kSweepCsvHeader;
  out += "\n";
  for (const auto& g : groups) {
    std::string row;
    auto add = [&](const std::string& s) {
      if (!row.empty()) row += ',';
      row += s;
    };
    add(to_string(g.group));
    add(std::to_string(g.satellite_count));
    add(std::to_string(g.seeds));
    add(format_double(g.generated_avg));
    add(format_double(g.completed_avg));
    add(format_double(g.blocked_avg));
    add(format_double(g.overall_blocking_pct));
    for (std::size_t ci = 0; ci < 3; ++ci) add(format_double(g.blocking_pct[ci]));
    for (std::size_t ci = 0; ci < 3; ++ci) add(format_double(g.response_avg_h[ci]));
    for (std::size_t ci = 0; ci < 3; ++ci) add(format_double(g.response_max_h[ci]));
    add(format_double(g.energy_consumed_wh));
    add(format_double(g.capacity_used_pct));
    add(format_double(g.energy_recharged_wh));
    add(format_double(g.recharge_efficiency_pct));
    add(format_double(g.net_energy_wh));
    add(format_double(g.energy_blocking_pct));
    add(format_double(g.sunlit_work_fraction));
    add(format_double(g.tasks_per_wh_per_sat));
    out += row + "\n";
  }
  SweepFits fits = fit_sweep(groups);
  out += "\n";
  out += "fit,metric,coefficient,exponent\n";
  if (fits.valid) {
    auto fit_row = [&](const char* name, const PowerLawFit& f) {
      out += std::string("fit,") + name + ',' + format_double(f.coefficient) + ',' +
             format_double(f.exponent) + "\n";
    };
    fit_row("sat_to_sat_blocking_pct", fits.sat_to_sat_blocking);
    fit_row("overall_blocking_pct", fits.overall_blocking);
    fit_row("sat_to_gnd_response_avg_h", fits.sat_to_gnd_response);
    fit_row("tasks_per_wh_per_sat", fits.tasks_per_wh);
  } else {
    out += "fit,unavailable,,\n";
  }
  return out;
}

inline json to_json(const std::vector<GroupAggregate>& groups) {
  json j;
  j["groups"] = json::array();
  for (const auto& g : groups) {
    json row;
    row["group"] = to_string(g.group);
    row["satellites"] = g.satellite_count;
    row["seeds"] = g.seeds;
    row["generated_avg"] = g.generated_avg;
    row["completed_avg"] = g.completed_avg;
    row["blocked_avg"] = g.blocked_avg;
    row["overall_blocking_pct"] = g.overall_blocking_pct;
    for (std::size_t ci = 0; ci < 3; ++ci) {
      const char* name = to_string(static_cast<Category>(ci));
      row["blocking_pct"][name] = g.blocking_pct[ci];
      row["response_avg_h"][name] = g.response_avg_h[ci];
      row["response_max_h"][name] = g.response_max_h[ci];
    }
    row["energy_consumed_wh"] = g.energy_consumed_wh;
    row["energy_recharged_wh"] = g.energy_recharged_wh;
    row["net_energy_wh"] = g.net_energy_wh;
    row["capacity_used_pct"] = g.capacity_used_pct;
    row["recharge_efficiency_pct"] = g.recharge_efficiency_pct;
    row["energy_blocking_pct"] = g.energy_blocking_pct;
    row["sunlit_work_fraction"] = g.sunlit_work_fraction;
    row["tasks_per_wh_per_sat"] = g.tasks_per_wh_per_sat;
    j["groups"].push_back(row);
  }
  SweepFits fits = fit_sweep(groups);
  if (fits.valid) {
    auto fit_json = [](const PowerLawFit& f) {
      return json{{"coefficient", f.coefficient}, {"exponent", f.exponent}};
    };
    j["fits"] = {{"sat_to_sat_blocking_pct", fit_json(fits.sat_to_sat_blocking)},
                 {"overall_blocking_pct", fit_json(fits.overall_blocking)},
                 {"sat_to_gnd_response_avg_h", fit_json(fits.sat_to_gnd_response)},
                 {"tasks_per_wh_per_sat", fit_json(fits.tasks_per_wh)}};
  } else {
    j["fits"] = nullptr;
  }
  return j;
}

inline constexpr const char* kQueueLogHeader = "task_id,leg,size_gb,request_s,start_s,done_s";

inline void write_queue_log_csv(std::ostream& os, const GroundChannel& ch) {
  os << kQueueLogHeader << "\n";
  for (const auto& e : ch.queue_log) {
    os << e.task_id << ',' << to_string(e.leg) << ',' << format_double(e.size_gb) << ','
       << format_double(e.request_s) << ',' << format_double(e.start_s) << ','
       << format_double(e.done_s) << "\n";
  }
}

inline void write_queue_log_csv(const std::string& path, const GroundChannel& ch) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open queue log for writing: " + path);
  write_queue_log_csv(os, ch);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open output file for writing: " + path);
  os << content;
}

}  // namespace rata
