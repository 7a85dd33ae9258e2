#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "rata/engine.hpp"
#include "rata/report_io.hpp"

using namespace rata;
using Catch::Approx;

namespace {

SimConfig tiny_cfg(int sats, int sltns, double duration_s = 100.0) {
  SimConfig cfg;
  cfg.group.satellite_count = sats;
  cfg.group.sltn_count = sltns;
  cfg.group.arrival_rate_tasks_per_s = 0.001;  // unused with crafted arrivals
  cfg.group.sim_duration_s = duration_s;
  return cfg;
}

Task craft(TaskId id, Category cat, double arrival, double size_gb, double intensity, double dtn,
           SatId origin) {
  Task t;
  t.id = id;
  t.category = cat;
  t.arrival_time_s = arrival;
  t.size_gb = size_gb;
  t.intensity_flop_per_mb = intensity;
  t.dtn_fraction = dtn;
  t.origin = origin;
  return t;
}

}  // namespace

TEST_CASE("a lone cooperative task splits with its single child", "[engine]") {
  SimConfig cfg = tiny_cfg(2, 1);
  std::vector<Task> arrivals = {craft(0, Category::SatToSat, 1.0, 2.0, 300e6, 1.0, 1)};

  SimResult res = run_with_arrivals(cfg, 7, arrivals);
  REQUIRE(res.tasks.size() == 1);
  const Task& t = res.tasks[0];
  REQUIRE(t.status == TaskStatus::Completed);
  REQUIRE(t.participants.size() == 2);
  CHECK(t.participants[0] == std::pair<SatId, double>{0, 0.5});
  CHECK(t.participants[1] == std::pair<SatId, double>{1, 0.5});
  CHECK(*t.exec_start_s == 1.0);

  // child leg dominates: 51.2 s transfer + 7.68 s processing + 5.12 s result
  CHECK(*t.completion_time_s == Approx(1.0 + 64.0).epsilon(1e-12));
  CHECK(res.report.per_category[0].response_avg_h == Approx(64.0 / 3600.0).epsilon(1e-12));

  double each_wh = 3.072e11 * 5e-9 / 3600.0;
  CHECK(res.satellites[0].cum_consumed_wh == Approx(each_wh).epsilon(1e-12));
  CHECK(res.satellites[1].cum_consumed_wh == Approx(each_wh).epsilon(1e-12));
  for (const auto& s : res.satellites) CHECK(s.ledger.empty());
}

TEST_CASE("a downlink task rides the shared channel", "[engine]") {
  SimConfig cfg = tiny_cfg(1, 1);
  std::vector<Task> arrivals = {craft(0, Category::SatToGnd, 0.0, 5.0, 1e9, 0.0, 0)};

  SimResult res = run_with_arrivals(cfg, 7, arrivals);
  const Task& t = res.tasks[0];
  REQUIRE(t.status == TaskStatus::Completed);
  CHECK(*t.completion_time_s == 51.2);
  CHECK_FALSE(t.exec_start_s.has_value());
  CHECK(res.satellites[0].cum_consumed_wh == 0.0);
  REQUIRE(res.channel.queue_log.size() == 1);
  CHECK(res.channel.queue_log[0].leg == TransferLeg::Downlink);
}

TEST_CASE("an uplink task processes after transfer and returns its result", "[engine]") {
  SimConfig cfg = tiny_cfg(2, 1);
  std::vector<Task> arrivals = {craft(0, Category::GndToSat, 0.0, 4.0, 300e6, 0.0, kGround)};

  SimResult res = run_with_arrivals(cfg, 7, arrivals);
  const Task& t = res.tasks[0];
  REQUIRE(t.status == TaskStatus::Completed);
  CHECK(*t.exec_start_s == Approx(40.96).epsilon(1e-12));
  REQUIRE(t.participants.size() == 1);
  CHECK(t.participants[0] == std::pair<SatId, double>{0, 1.0});

  // uplink 40.96 s, root-only processing 15.36 s, 0.4 GB result 4.096 s
  CHECK(*t.completion_time_s == Approx(60.416).epsilon(1e-12));
  REQUIRE(res.channel.queue_log.size() == 2);
  CHECK(res.channel.queue_log[0].leg == TransferLeg::Uplink);
  CHECK(res.channel.queue_log[1].leg == TransferLeg::ResultDownlink);
  CHECK(res.channel.queue_log[1].size_gb == Approx(0.4).epsilon(1e-12));
}

TEST_CASE("a zero result ratio skips the return leg", "[engine]") {
  SimConfig cfg = tiny_cfg(2, 1);
  cfg.alloc.result_ratio = 0.0;
  std::vector<Task> arrivals = {craft(0, Category::GndToSat, 0.0, 4.0, 300e6, 0.0, kGround)};

  SimResult res = run_with_arrivals(cfg, 7, arrivals);
  CHECK(*res.tasks[0].completion_time_s == Approx(40.96 + 15.36).epsilon(1e-12));
  CHECK(res.channel.queue_log.size() == 1);
}

TEST_CASE("a zero horizon produces an empty quiescent run", "[engine]") {
  SimConfig cfg = group_preset(GroupId::G1);
  cfg.group.sim_duration_s = 0.0;
  SimResult res = run(cfg, 42);
  CHECK(res.tasks.empty());
  CHECK(res.report.no_traffic);
  CHECK(res.channel.queue_log.empty());
  for (const auto& s : res.satellites) {
    CHECK(s.battery_level_wh == s.battery_capacity_wh);
    CHECK(s.cum_consumed_wh == 0.0);
  }
}

TEST_CASE("runs are reproducible end to end", "[engine]") {
  SimConfig cfg = group_preset(GroupId::G1);
  cfg.group.sim_duration_s = 300.0;
  SimResult a = run(cfg, 42);
  SimResult b = run(cfg, 42);
  CHECK(render_json_report(a.report) == render_json_report(b.report));
}

TEST_CASE("manifest replay reproduces the run", "[engine]") {
  SimConfig cfg = group_preset(GroupId::G1);
  cfg.group.sim_duration_s = 300.0;
  SimResult original = run(cfg, 42);

  std::stringstream ss;
  {
    std::vector<Task> arrivals =
        generate_arrivals(cfg.group, cfg.workload, derive_seed(42, kStreamWorkload));
    write_arrivals_csv(ss, arrivals);
  }
  SimResult replayed = run_with_arrivals(cfg, 42, read_arrivals_csv(ss));
  CHECK(render_json_report(original.report) == render_json_report(replayed.report));
}

TEST_CASE("saturation blocks cooperative tasks but never downlinks", "[engine]") {
  SimConfig cfg = group_preset(GroupId::G1);
  cfg.group.sim_duration_s = 600.0;
  cfg.group.arrival_rate_tasks_per_s = 2.0;

  SimResult res = run(cfg, 42);
  CHECK(res.report.blocked_total > 0);
  CHECK(res.report.per_category[1].blocked == 0);

  for (const auto& [reason, count] : res.report.per_category[0].reason_histogram) {
    CHECK(reason.rfind("Root-only: ", 0) == 0);
    CHECK(count > 0);
  }

  for (const auto& t : res.tasks) {
    bool terminal = t.status == TaskStatus::Completed || t.status == TaskStatus::Blocked;
    CHECK(terminal);
  }
  for (const auto& s : res.satellites) {
    CHECK(s.ledger.empty());
    CHECK(s.battery_level_wh >= 0.0);
    CHECK(s.battery_level_wh <= s.battery_capacity_wh);
  }

  double prev_request = 0.0, prev_start = 0.0;
  for (const auto& e : res.channel.queue_log) {
    CHECK(e.request_s >= prev_request);
    CHECK(e.start_s >= prev_start);
    CHECK(e.done_s == e.start_s + e.size_gb * 1024.0 / res.channel.bandwidth_mbps);
    prev_request = e.request_s;
    prev_start = e.start_s;
  }
}

TEST_CASE("arrival stream inconsistencies are rejected", "[engine]") {
  SimConfig cfg = tiny_cfg(2, 1);

  std::vector<Task> dup = {craft(0, Category::SatToGnd, 0.0, 5.0, 1e9, 0.0, 0),
                           craft(0, Category::SatToGnd, 1.0, 5.0, 1e9, 0.0, 0)};
  CHECK_THROWS_AS(run_with_arrivals(cfg, 7, dup), ConfigError);

  std::vector<Task> ground_origin = {craft(0, Category::SatToSat, 0.0, 5.0, 1e9, 0.5, kGround)};
  CHECK_THROWS_AS(run_with_arrivals(cfg, 7, ground_origin), ConfigError);

  std::vector<Task> out_of_range = {craft(0, Category::SatToSat, 0.0, 5.0, 1e9, 0.5, 5)};
  CHECK_THROWS_AS(run_with_arrivals(cfg, 7, out_of_range), ConfigError);

  std::vector<Task> sat_origin_uplink = {craft(0, Category::GndToSat, 0.0, 5.0, 1e9, 0.5, 0)};
  CHECK_THROWS_AS(run_with_arrivals(cfg, 7, sat_origin_uplink), ConfigError);
}

TEST_CASE("in-flight work drains past the horizon", "[engine]") {
  SimConfig cfg = tiny_cfg(1, 1, 10.0);
  // arrives inside the horizon, the transfer outlives it
  std::vector<Task> arrivals = {craft(0, Category::SatToGnd, 9.0, 50.0, 1e9, 0.0, 0)};
  SimResult res = run_with_arrivals(cfg, 7, arrivals);
  REQUIRE(res.tasks[0].status == TaskStatus::Completed);
  CHECK(*res.tasks[0].completion_time_s == Approx(9.0 + 512.0).epsilon(1e-12));
}
