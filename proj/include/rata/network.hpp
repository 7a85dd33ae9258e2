#pragma once

#include <vector>

#include "rata/domain.hpp"

namespace rata {

struct QueueLogEntry {
  TaskId task_id = 0;
  TransferLeg leg = TransferLeg::Downlink;
  double size_gb = 0.0;
  double request_s = 0.0;
  double start_s = 0.0;
  double done_s = 0.0;
};

// Single shared ground station link. All three transfer legs contend
// for it in strict FIFO order of request time.
struct GroundChannel {
  double bandwidth_mbps = 100.0;
  double busy_until_s = 0.0;
  double last_request_s = 0.0;
  std::vector<QueueLogEntry> queue_log;
};

// Serves one transfer: it starts when both the channel and the request
// are ready and runs for size / bandwidth. Returns the completion time.
inline double channel_transfer(GroundChannel& ch, TaskId task_id, TransferLeg leg, double size_gb,
                               double t_request_s) {
  if (size_gb <= 0.0) throw ContractFault("channel_transfer: size must be > 0");
  if (t_request_s < ch.last_request_s)
    throw ContractFault("channel_transfer: non-monotone request time");
  ch.last_request_s = t_request_s;
  double duration = size_gb * 1024.0 / ch.bandwidth_mbps;
  double start = std::max(t_request_s, ch.busy_until_s);
  double done = start + duration;
  ch.busy_until_s = done;
  ch.queue_log.push_back(QueueLogEntry{task_id, leg, size_gb, t_request_s, start, done});
  return done;
}

// Inter-satellite links are dedicated per pair, so transfers never queue.
inline double isl_transfer_time(double size_gb, double isl_bandwidth_mbps) {
  return size_gb * 1024.0 / isl_bandwidth_mbps;
}

}  // namespace rata
