#pragma once

#include <queue>
#include <unordered_map>
#include <vector>

#include "rata/allocator.hpp"
#include "rata/config.hpp"
#include "rata/constellation.hpp"
#include "rata/metrics.hpp"
#include "rata/network.hpp"
#include "rata/rng.hpp"
#include "rata/workload.hpp"

namespace rata {

struct SimResult {
  std::vector<Task> tasks;
  std::vector<SatelliteState> satellites;
  std::vector<Sltn> sltns;
  GroundChannel channel;
  MetricsReport report;
};

namespace detail {

class Simulation {
 public:
  Simulation(const SimConfig& cfg, std::uint64_t seed, std::vector<Task> tasks)
      : cfg_(cfg), seed_(seed), engine_rng_(derive_seed(seed, kStreamEngine)) {
    validate(cfg_);
    Rng constellation_rng(derive_seed(seed, kStreamConstellation));
    sats_ = build_constellation(cfg_.group, cfg_.hardware, constellation_rng);
    sltns_ = form_sltns(sats_, cfg_.group.sltn_count);
    sltn_of_.assign(sats_.size(), 0);
    for (std::size_t si = 0; si < sltns_.size(); ++si) {
      sltn_of_[static_cast<std::size_t>(sltns_[si].root_id)] = si;
      for (SatId c : sltns_[si].child_ids) sltn_of_[static_cast<std::size_t>(c)] = si;
    }
    tasks_ = std::move(tasks);
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
      const Task& t = tasks_[i];
      if (task_index_.count(t.id))
        throw ConfigError("arrival stream contains duplicate task id");
      task_index_[t.id] = i;
      bool ground = t.category == Category::GndToSat;
      if (ground != (t.origin == kGround) ||
          (!ground && (t.origin < 0 || t.origin >= cfg_.group.satellite_count)))
        throw ConfigError("arrival stream origin inconsistent with configuration");
    }
    channel_.bandwidth_mbps = cfg_.ground_bandwidth_mbps;
  }

  SimResult run() {
    for (const auto& t : tasks_) schedule(t.arrival_time_s, TaskArrival{t.id});
    schedule(cfg_.group.sim_duration_s, SimEnd{});
    while (!events_.empty()) {
      Event ev = events_.top();
      events_.pop();
      if (ev.time_s < clock_) throw ContractFault("engine: clock moved backwards");
      clock_ = ev.time_s;
      std::visit([&](const auto& kind) { handle(ev.time_s, kind); }, ev.kind);
    }
    for (const auto& s : sats_)
      if (!s.ledger.empty()) throw ContractFault("engine: ledger not drained at end of run");

    RunMeta meta;
    meta.group = cfg_.group.group_id;
    meta.seed = seed_;
    meta.arrival_rate_tasks_per_s = cfg_.group.arrival_rate_tasks_per_s;
    meta.sim_duration_s = cfg_.group.sim_duration_s;
    meta.satellite_count = cfg_.group.satellite_count;
    meta.sltn_count = cfg_.group.sltn_count;

    SimResult result;
    result.report = summarize(tasks_, sats_, meta);
    result.tasks = std::move(tasks_);
    result.satellites = std::move(sats_);
    result.sltns = std::move(sltns_);
    result.channel = std::move(channel_);
    return result;
  }

 private:
  void schedule(double t, EventKind kind) {
    events_.push(Event{t, next_seq_++, std::move(kind)});
  }

  Task& task(TaskId id) { return tasks_[task_index_.at(id)]; }

  void handle(double t, const TaskArrival& ev) {
    Task& tk = task(ev.task_id);
    switch (tk.category) {
      case Category::SatToSat: {
        const Sltn& sltn = sltns_[sltn_of_[static_cast<std::size_t>(tk.origin)]];
        start_satellite_phase(t, tk, sltn);
        break;
      }
      case Category::SatToGnd: {
        tk.status = TaskStatus::InTransfer;
        double done = channel_transfer(channel_, tk.id, TransferLeg::Downlink, tk.size_gb, t);
        schedule(done, GroundTransferDone{tk.id, TransferLeg::Downlink});
        break;
      }
      case Category::GndToSat: {
        tk.status = TaskStatus::InTransfer;
        double done = channel_transfer(channel_, tk.id, TransferLeg::Uplink, tk.size_gb, t);
        schedule(done, GroundTransferDone{tk.id, TransferLeg::Uplink});
        break;
      }
    }
  }

  void handle(double t, const GroundTransferDone& ev) {
    Task& tk = task(ev.task_id);
    switch (ev.leg) {
      case TransferLeg::Downlink:
      case TransferLeg::ResultDownlink:
        tk.status = TaskStatus::Completed;
        tk.completion_time_s = t;
        break;
      case TransferLeg::Uplink: {
        const Sltn& sltn = sltns_[engine_rng_.below(sltns_.size())];
        start_satellite_phase(t, tk, sltn);
        break;
      }
    }
  }

  void handle(double t, const SatCompletion& ev) {
    Task& tk = task(ev.task_id);
    settle_participants(t, tk);
    if (tk.category == Category::GndToSat) {
      double result_gb = cfg_.alloc.result_ratio * tk.size_gb;
      if (result_gb > 0.0) {
        tk.status = TaskStatus::InTransfer;
        double done = channel_transfer(channel_, tk.id, TransferLeg::ResultDownlink, result_gb, t);
        schedule(done, GroundTransferDone{tk.id, TransferLeg::ResultDownlink});
        return;
      }
    }
    tk.status = TaskStatus::Completed;
    tk.completion_time_s = t;
  }

  void handle(double, const SimEnd&) {}

  void start_satellite_phase(double t, Task& tk, const Sltn& sltn) {
    AllocationResult res = copaa(sltn, sats_, tk, t, cfg_.alloc);
    if (res.outcome == AllocOutcome::Blocked) {
      tk.status = TaskStatus::Blocked;
      tk.blocking_reason = res.block_reason;
      return;
    }
    tk.status = TaskStatus::Processing;
    tk.exec_start_s = t;
    tk.participants = res.participants;
    schedule(t + res.finish_time_s, SatCompletion{tk.id});
  }

  // Charge each participant's battery over its own processing window,
  // then return the held resources. The root computes from the
  // allocation instant; children only after their input arrives over
  // the ISL.
  void settle_participants(double t_completion, Task& tk) {
    double t_alloc = *tk.exec_start_s;
    bool root_only = tk.participants.size() == 1;
    double alpha_c = root_only ? 0.0 : tk.participants[1].second;
    double t_transfer =
        root_only ? 0.0 : alpha_c * tk.size_gb * 1024.0 / cfg_.alloc.isl_bandwidth_mbps;
    for (std::size_t i = 0; i < tk.participants.size(); ++i) {
      auto [sid, fraction] = tk.participants[i];
      SatelliteState& sat = sats_[static_cast<std::size_t>(sid)];
      double start = i == 0 ? t_alloc : t_alloc + t_transfer;
      double t_process = estimate_processing_time(tk, sat, fraction, cfg_.alloc);
      apply_energy(sat, tk, fraction, start, t_process);
      release(sat, tk.id);
    }
    (void)t_completion;
  }

  SimConfig cfg_;
  std::uint64_t seed_;
  Rng engine_rng_;
  std::vector<SatelliteState> sats_;
  std::vector<Sltn> sltns_;
  std::vector<std::size_t> sltn_of_;
  std::vector<Task> tasks_;
  std::unordered_map<TaskId, std::size_t> task_index_;
  GroundChannel channel_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  std::uint64_t next_seq_ = 0;
  double clock_ = 0.0;
};

}  // namespace detail

// Runs a pre-generated arrival stream (e.g. a replayed manifest).
// Constellation and routing draws still come from the seed, so a
// replayed stream reproduces the original run bit for bit.
inline SimResult run_with_arrivals(const SimConfig& cfg, std::uint64_t seed,
                                   std::vector<Task> tasks) {
  detail::Simulation sim(cfg, seed, std::move(tasks));
  return sim.run();
}

// Generates the arrival stream from the seed and runs it to quiescence.
// Arrivals stop at sim_duration_s; in-flight transfers and processing
// run to completion past it.
inline SimResult run(const SimConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  std::vector<Task> tasks =
      generate_arrivals(cfg.group, cfg.workload, derive_seed(seed, kStreamWorkload));
  return run_with_arrivals(cfg, seed, std::move(tasks));
}

}  // namespace rata
