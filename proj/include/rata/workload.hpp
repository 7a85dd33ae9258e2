#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rata/constellation.hpp"
#include "rata/domain.hpp"
#include "rata/rng.hpp"

namespace rata {

struct CategoryProfile {
  Category category = Category::SatToSat;
  double size_min_gb = 0.0;
  double size_max_gb = 0.0;
  // Nominal per-task energy band; informational, not sampled from.
  double energy_note_min_wh = 0.0;
  double energy_note_max_wh = 0.0;
  double dtn_min = 0.0;
  double dtn_max = 0.0;
  double mix_weight = 0.0;
};

struct WorkloadParams {
  std::array<CategoryProfile, 3> categories = {
      CategoryProfile{Category::SatToSat, 2.0, 15.0, 0.5, 2.0, 0.3, 1.0, 0.40},
      CategoryProfile{Category::SatToGnd, 3.0, 50.0, 0.5, 2.5, 0.0, 0.0, 0.30},
      CategoryProfile{Category::GndToSat, 1.0, 8.0, 0.3, 1.5, 0.3, 1.0, 0.30},
  };
  double intensity_min_flop_per_mb = 25e6;
  double intensity_max_flop_per_mb = 2.5e9;
};

inline void validate(const WorkloadParams& wl) {
  for (const auto& c : wl.categories) {
    if (c.size_min_gb <= 0.0 || c.size_min_gb > c.size_max_gb)
      throw ConfigError("workload size range must satisfy 0 < min <= max");
    if (c.dtn_min < 0.0 || c.dtn_min > c.dtn_max || c.dtn_max > 1.0)
      throw ConfigError("workload dtn range must satisfy 0 <= min <= max <= 1");
  }
  if (wl.intensity_min_flop_per_mb <= 0.0 ||
      wl.intensity_min_flop_per_mb > wl.intensity_max_flop_per_mb)
    throw ConfigError("workload intensity range must satisfy 0 < min <= max");
}

// Poisson arrival stream over [0, duration]. Per task the draw order is
// fixed (gap, category, size, intensity, dtn, origin), so the stream is
// reproducible from the seed alone.
inline std::vector<Task> generate_arrivals(const GroupConfig& group, const WorkloadParams& wl,
                                           std::uint64_t seed) {
  validate(group);
  validate(wl);
  Rng rng(seed);
  std::vector<Task> tasks;
  double t = 0.0;
  TaskId next_id = 0;
  for (;;) {
    t += rng.exponential(group.arrival_rate_tasks_per_s);
    if (t > group.sim_duration_s) break;
    double u = rng.uniform01();
    Category cat = Category::GndToSat;
    if (u < group.category_mix[0])
      cat = Category::SatToSat;
    else if (u < group.category_mix[0] + group.category_mix[1])
      cat = Category::SatToGnd;
    const CategoryProfile& prof = wl.categories[static_cast<std::size_t>(cat)];
    Task task;
    task.id = next_id++;
    task.category = cat;
    task.arrival_time_s = t;
    task.size_gb = rng.uniform(prof.size_min_gb, prof.size_max_gb);
    task.intensity_flop_per_mb =
        rng.uniform(wl.intensity_min_flop_per_mb, wl.intensity_max_flop_per_mb);
    task.dtn_fraction = rng.uniform(prof.dtn_min, prof.dtn_max);
    task.origin = cat == Category::GndToSat
                      ? kGround
                      : static_cast<SatId>(rng.below(static_cast<std::size_t>(group.satellite_count)));
    tasks.push_back(task);
  }
  return tasks;
}

// 17 significant digits: enough for doubles to survive a CSV round trip.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline constexpr const char* kArrivalsHeader =
    "task_id,arrival_time_s,category,size_gb,intensity_flop_per_mb,dtn_fraction,origin";

inline void write_arrivals_csv(std::ostream& os, const std::vector<Task>& tasks) {
  os << kArrivalsHeader << "\n";
  for (const auto& t : tasks) {
    os << t.id << ',' << format_double(t.arrival_time_s) << ',' << to_string(t.category) << ','
       << format_double(t.size_gb) << ',' << format_double(t.intensity_flop_per_mb) << ','
       << format_double(t.dtn_fraction) << ',' << t.origin << "\n";
  }
}

inline void write_arrivals_csv(const std::string& path, const std::vector<Task>& tasks) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open arrivals manifest for writing: " + path);
  write_arrivals_csv(os, tasks);
}

inline std::vector<Task> read_arrivals_csv(std::istream& is) {
  std::vector<Task> tasks;
  std::string line;
  if (!std::getline(is, line) || line != kArrivalsHeader)
    throw ConfigError("arrivals manifest: missing or unexpected header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    Task t;
    auto next = [&]() -> std::string {
      if (!std::getline(ss, field, ','))
        throw ConfigError("arrivals manifest: short row: " + line);
      return field;
    };
    t.id = std::stoll(next());
    t.arrival_time_s = std::stod(next());
    auto cat = parse_category(next());
    if (!cat) throw ConfigError("arrivals manifest: unknown category in row: " + line);
    t.category = *cat;
    t.size_gb = std::stod(next());
    t.intensity_flop_per_mb = std::stod(next());
    t.dtn_fraction = std::stod(next());
    t.origin = std::stoi(next());
    tasks.push_back(t);
  }
  for (std::size_t i = 0; i + 1 < tasks.size(); ++i)
    if (tasks[i + 1].arrival_time_s < tasks[i].arrival_time_s)
      throw ConfigError("arrivals manifest: rows must be sorted by arrival time");
  return tasks;
}

inline std::vector<Task> read_arrivals_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open arrivals manifest: " + path);
  return read_arrivals_csv(is);
}

}  // namespace rata
