// rata: discrete-event simulator for cooperative task allocation in
// LEO / low-MEO constellations.
//
// Examples:
//   rata --group G1 --seed 42 --format json --out report.json
//   rata --sweep --seeds 5 --format csv --out sweep.csv
//   rata --config custom.toml --group G4 --emit-arrivals arrivals.csv
//   rata --group G2 --replay-arrivals arrivals.csv

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rata/config.hpp"
#include "rata/engine.hpp"
#include "rata/report_io.hpp"

namespace {

struct CliOptions {
  std::string group;
  std::string config_path;
  std::uint64_t seed = 42;
  int seeds = 1;
  bool sweep = false;
  double duration = -1.0;
  double rate = -1.0;
  std::string format = "json";
  std::string out_path;
  std::string emit_arrivals;
  std::string emit_queue_log;
  std::string replay_arrivals;
};

rata::SimConfig resolve_config(const CliOptions& opt, rata::GroupId fallback_group) {
  rata::GroupId base = fallback_group;
  std::optional<rata::GroupId> flag_group;
  if (!opt.group.empty()) {
    flag_group = rata::parse_group_id(opt.group);
    if (!flag_group) throw rata::ConfigError("unknown group: " + opt.group);
    base = *flag_group;
  }

  std::map<std::string, std::string> kv;
  if (!opt.config_path.empty()) kv = rata::parse_config_file(opt.config_path);

  auto file_group_it = kv.find("group.id");
  if (file_group_it != kv.end()) {
    auto fg = rata::parse_group_id(file_group_it->second);
    if (!fg) throw rata::ConfigError("config key group.id: unknown group: " + file_group_it->second);
    if (opt.sweep) throw rata::ConfigError("config group.id conflicts with --sweep");
    if (flag_group && *fg != *flag_group)
      throw rata::ConfigError("config group.id conflicts with --group");
    base = *fg;
  }

  rata::SimConfig cfg = rata::group_preset(base);
  rata::apply_config(cfg, kv);
  if (opt.duration >= 0.0) cfg.group.sim_duration_s = opt.duration;
  if (opt.rate > 0.0) cfg.group.arrival_rate_tasks_per_s = opt.rate;
  rata::validate(cfg);
  return cfg;
}

void write_output(const CliOptions& opt, const std::string& content) {
  if (opt.out_path.empty())
    std::cout << content;
  else
    rata::write_text_file(opt.out_path, content);
}

int run_sweep(const CliOptions& opt) {
  std::vector<rata::GroupAggregate> aggregates;
  for (rata::GroupId g :
       {rata::GroupId::G1, rata::GroupId::G2, rata::GroupId::G3, rata::GroupId::G4}) {
    rata::SimConfig cfg = resolve_config(opt, g);
    cfg.group.group_id = g;
    std::vector<rata::MetricsReport> runs;
    for (int k = 0; k < opt.seeds; ++k)
      runs.push_back(rata::run(cfg, opt.seed + static_cast<std::uint64_t>(k)).report);
    aggregates.push_back(rata::aggregate_reports(runs));
  }
  if (opt.format == "csv")
    write_output(opt, rata::render_sweep_csv(aggregates));
  else
    write_output(opt, rata::to_json(aggregates).dump(2) + "\n");
  return 0;
}

int run_single_group(const CliOptions& opt) {
  rata::SimConfig cfg = resolve_config(opt, rata::GroupId::G1);

  std::vector<rata::SimResult> results;
  for (int k = 0; k < opt.seeds; ++k) {
    std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(k);
    if (!opt.replay_arrivals.empty())
      results.push_back(
          rata::run_with_arrivals(cfg, seed, rata::read_arrivals_csv(opt.replay_arrivals)));
    else
      results.push_back(rata::run(cfg, seed));
  }

  if (!opt.emit_arrivals.empty()) rata::write_arrivals_csv(opt.emit_arrivals, results[0].tasks);
  if (!opt.emit_queue_log.empty())
    rata::write_queue_log_csv(opt.emit_queue_log, results[0].channel);

  if (opt.seeds == 1) {
    if (opt.format == "csv")
      write_output(opt, std::string(rata::kReportCsvHeader) + "\n" +
                            rata::render_csv_row(results[0].report) + "\n");
    else
      write_output(opt, rata::render_json_report(results[0].report));
    return 0;
  }

  std::vector<rata::MetricsReport> runs;
  for (const auto& r : results) runs.push_back(r.report);
  if (opt.format == "csv") {
    std::string out = std::string(rata::kReportCsvHeader) + "\n";
    for (const auto& r : runs) out += rata::render_csv_row(r) + "\n";
    write_output(opt, out);
  } else {
    rata::json j;
    j["runs"] = rata::json::array();
    for (const auto& r : runs) j["runs"].push_back(rata::to_json(r));
    std::vector<rata::GroupAggregate> agg = {rata::aggregate_reports(runs)};
    j["aggregate"] = rata::to_json(agg)["groups"][0];
    write_output(opt, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliOptions opt;
  CLI::App app{"Cooperative task-allocation simulator for satellite constellations"};
  app.add_option("--group", opt.group, "Group preset: G1, G2, G3 or G4");
  app.add_option("--config", opt.config_path, "Config file with [section] key = value overrides");
  app.add_option("--seed", opt.seed, "Base RNG seed (default 42)");
  app.add_option("--seeds", opt.seeds, "Number of seed replications (seed, seed+1, ...)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--sweep", opt.sweep, "Run all four group presets");
  app.add_option("--duration", opt.duration, "Override arrival window length in seconds")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--rate", opt.rate, "Override arrival rate in tasks per second")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", opt.out_path, "Write the report here instead of stdout");
  app.add_option("--emit-arrivals", opt.emit_arrivals,
                 "Write the generated arrival stream to a CSV manifest");
  app.add_option("--emit-queue-log", opt.emit_queue_log,
                 "Write the ground-channel queue log to a CSV file");
  app.add_option("--replay-arrivals", opt.replay_arrivals,
                 "Replay an arrival manifest instead of generating one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (opt.sweep) {
      if (!opt.group.empty()) throw rata::ConfigError("--group conflicts with --sweep");
      if (!opt.replay_arrivals.empty())
        throw rata::ConfigError("--replay-arrivals requires a single run");
      if (!opt.emit_arrivals.empty() || !opt.emit_queue_log.empty())
        throw rata::ConfigError("stream emitters require a single group");
      return run_sweep(opt);
    }
    if (!opt.replay_arrivals.empty() && opt.seeds != 1)
      throw rata::ConfigError("--replay-arrivals requires --seeds 1");
    return run_single_group(opt);
  } catch (const rata::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime fault: " << e.what() << "\n";
    return 3;
  }
}
