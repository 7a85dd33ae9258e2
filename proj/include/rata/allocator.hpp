#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "rata/constellation.hpp"
#include "rata/domain.hpp"

namespace rata {

// Knobs of the allocation model. A full task nominally needs
// full_task_cores; memory and storage demand scale with task size.
struct AllocParams {
  int full_task_cores = 4;
  double memory_per_size_gb = 1.0;
  double storage_per_size_gb = 1.0;
  double isl_bandwidth_mbps = 20.0;
  double result_ratio = 0.1;  // result size as a share of input size
};

struct ResourceDemand {
  int cores = 0;
  double memory_gb = 0.0;
  double storage_gb = 0.0;
};

inline ResourceDemand required_resources(const Task& task, double fraction,
                                         const AllocParams& ap = AllocParams{}) {
  if (fraction <= 0.0 || fraction > 1.0 + kFractionTol)
    throw ContractFault("required_resources: fraction outside (0, 1]");
  ResourceDemand d;
  d.cores = std::max(1, static_cast<int>(std::floor(ap.full_task_cores * fraction)));
  d.memory_gb = task.size_gb * fraction * ap.memory_per_size_gb;
  d.storage_gb = task.size_gb * fraction * ap.storage_per_size_gb;
  return d;
}

// FLOP count of a task fraction; sizes are GB, intensity is FLOP/MB.
inline double flops_for_fraction(const Task& task, double fraction) {
  return task.intensity_flop_per_mb * task.size_gb * 1024.0 * fraction;
}

inline double estimate_processing_time(const Task& task, const SatelliteState& sat,
                                       double fraction, const AllocParams& ap = AllocParams{}) {
  double flops = flops_for_fraction(task, fraction);
  int k = std::max(1, static_cast<int>(std::floor(ap.full_task_cores * fraction)));
  return flops / (sat.compute_speed_gflops * k * 1e9);
}

inline double estimate_energy_wh(const Task& task, const SatelliteState& sat, double fraction) {
  return flops_for_fraction(task, fraction) * sat.energy_per_flop_j / 3600.0;
}

struct VracOutcome {
  bool admitted = false;
  // Valid when admitted:
  int cores = 0;
  double t_process_s = 0.0;
  double e_net_wh = 0.0;
  // Valid when rejected:
  ResourceTag reject_resource = ResourceTag::Cores;
};

// Admission control: the five checks run in order and the first
// failure wins. Recharge is evaluated at the admission instant, so a
// task admitted late in a sunlit window is charged optimistically.
inline VracOutcome vrac(const SatelliteState& sat, const Task& task, double fraction, double t_s,
                        const AllocParams& ap = AllocParams{}) {
  ResourceDemand need = required_resources(task, fraction, ap);
  VracOutcome out;
  if (need.cores > sat.available_cores()) {
    out.reject_resource = ResourceTag::Cores;
    return out;
  }
  if (need.memory_gb > sat.available_memory_gb()) {
    out.reject_resource = ResourceTag::Memory;
    return out;
  }
  if (need.storage_gb > sat.available_storage_gb()) {
    out.reject_resource = ResourceTag::Storage;
    return out;
  }
  double t_process = estimate_processing_time(task, sat, fraction, ap);
  double e_cons = estimate_energy_wh(task, sat, fraction);
  double e_rech = recharge_rate(sat, t_s) * t_process / 3600.0;
  double e_net = std::max(0.0, e_cons - e_rech);
  if (e_net > sat.battery_level_wh) {
    out.reject_resource = ResourceTag::Energy;
    return out;
  }
  out.admitted = true;
  out.cores = need.cores;
  out.t_process_s = t_process;
  out.e_net_wh = e_net;
  return out;
}

// Deducts pools by appending a ledger entry. Admission must have been
// checked beforehand; this re-verifies and faults instead of
// oversubscribing.
inline void allocate(SatelliteState& sat, const Task& task, double fraction,
                     double completion_time_s, const AllocParams& ap = AllocParams{}) {
  for (const auto& e : sat.ledger)
    if (e.task_id == task.id) throw ContractFault("allocate: double allocation");
  ResourceDemand need = required_resources(task, fraction, ap);
  if (need.cores > sat.available_cores() || need.memory_gb > sat.available_memory_gb() ||
      need.storage_gb > sat.available_storage_gb())
    throw ContractFault("allocate: allocation without admission");
  sat.ledger.push_back(LedgerEntry{task.id, need.cores, need.memory_gb, need.storage_gb, fraction,
                                   completion_time_s});
}

inline void release(SatelliteState& sat, TaskId task_id) {
  for (auto it = sat.ledger.begin(); it != sat.ledger.end(); ++it) {
    if (it->task_id == task_id) {
      sat.ledger.erase(it);
      return;
    }
  }
  throw ContractFault("release: release of untracked task");
}

// Battery bookkeeping over a processing window, sampled at ten interior
// points. Per sample the recharge credit lands first, then the
// consumption debit, each clamped to [0, capacity]; the cumulative
// counters record the unclamped amounts so clamp losses stay visible.
inline void apply_energy(SatelliteState& sat, const Task& task, double fraction, double t_start_s,
                         double t_process_s) {
  double e_cons = estimate_energy_wh(task, sat, fraction);
  double dt = t_process_s / 10.0;
  double debit = e_cons / 10.0;
  for (int i = 1; i <= 10; ++i) {
    double t_i = t_start_s + (i - 0.5) * dt;
    double credit = recharge_rate(sat, t_i) * dt / 3600.0;
    sat.cum_recharged_wh += credit;
    double headroom = sat.battery_capacity_wh - sat.battery_level_wh;
    if (credit > headroom) {
      sat.clamp_lost_recharge_wh += credit - headroom;
      sat.battery_level_wh = sat.battery_capacity_wh;
    } else {
      sat.battery_level_wh += credit;
    }
    if (in_sunlight(sat, t_i)) sat.cum_consumed_sunlit_wh += debit;
    if (debit > sat.battery_level_wh) {
      sat.clamp_unmet_consume_wh += debit - sat.battery_level_wh;
      sat.battery_level_wh = 0.0;
    } else {
      sat.battery_level_wh -= debit;
    }
  }
  sat.cum_consumed_wh += e_cons;
}

enum class AllocOutcome { Cooperative, RootOnly, Blocked };

struct AllocationResult {
  AllocOutcome outcome = AllocOutcome::Blocked;
  // Root first, accepted children after, each with its fraction.
  std::vector<std::pair<SatId, double>> participants;
  double finish_time_s = 0.0;  // relative to the allocation instant
  std::optional<BlockReason> block_reason;
};

struct ChildLeg {
  double t_transfer_s = 0.0;
  double t_process_s = 0.0;
  double t_result_transfer_s = 0.0;
};

// A cooperative task finishes when its slowest strand does: the root's
// own processing, or a child's transfer + processing + result return.
inline double finish_time(double root_t_process_s, std::span<const ChildLeg> child_legs) {
  double ft = root_t_process_s;
  for (const auto& leg : child_legs)
    ft = std::max(ft, leg.t_transfer_s + leg.t_process_s + leg.t_result_transfer_s);
  return ft;
}

inline AllocationResult root_only_fallback(SatelliteState& root, const Task& task, double t_s,
                                           const AllocParams& ap = AllocParams{}) {
  AllocationResult res;
  VracOutcome v = vrac(root, task, 1.0, t_s, ap);
  if (!v.admitted) {
    res.outcome = AllocOutcome::Blocked;
    res.block_reason = BlockReason{v.reject_resource, AllocMode::RootOnly};
    return res;
  }
  allocate(root, task, 1.0, t_s + v.t_process_s, ap);
  res.outcome = AllocOutcome::RootOnly;
  res.participants.emplace_back(root.id, 1.0);
  res.finish_time_s = v.t_process_s;
  return res;
}

// Cooperative allocation. Children are probed with the equal share of
// the distributable part, the root absorbs whatever the decliners leave
// behind, and the whole plan is committed only when the root also
// admits. Otherwise the task falls back to root-only service.
inline AllocationResult copaa(const Sltn& sltn, std::span<SatelliteState> sats, const Task& task,
                              double t_s, const AllocParams& ap = AllocParams{}) {
  SatelliteState& root = sats[static_cast<std::size_t>(sltn.root_id)];
  std::size_t n = sltn.child_ids.size();
  double alpha_c = task.dtn_fraction / static_cast<double>(n + 1);

  std::vector<SatId> accepted;
  std::vector<ChildLeg> legs;
  if (alpha_c > 0.0) {
    for (SatId cid : sltn.child_ids) {
      const SatelliteState& child = sats[static_cast<std::size_t>(cid)];
      VracOutcome v = vrac(child, task, alpha_c, t_s, ap);
      if (v.admitted) {
        accepted.push_back(cid);
        ChildLeg leg;
        leg.t_transfer_s = alpha_c * task.size_gb * 1024.0 / ap.isl_bandwidth_mbps;
        leg.t_process_s = v.t_process_s;
        leg.t_result_transfer_s = ap.result_ratio * leg.t_transfer_s;
        legs.push_back(leg);
      }
    }
  }

  double p = static_cast<double>(accepted.size());
  double alpha_r = 1.0 - p * alpha_c;
  if (!accepted.empty()) {
    VracOutcome rv = vrac(root, task, alpha_r, t_s, ap);
    if (rv.admitted) {
      double ft = finish_time(rv.t_process_s, legs);
      allocate(root, task, alpha_r, t_s + ft, ap);
      for (SatId cid : accepted)
        allocate(sats[static_cast<std::size_t>(cid)], task, alpha_c, t_s + ft, ap);
      AllocationResult res;
      res.outcome = AllocOutcome::Cooperative;
      res.participants.emplace_back(root.id, alpha_r);
      for (SatId cid : accepted) res.participants.emplace_back(cid, alpha_c);
      res.finish_time_s = ft;
      return res;
    }
  }
  return root_only_fallback(root, task, t_s, ap);
}

}  // namespace rata
