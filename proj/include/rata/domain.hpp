#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rata {

// Thrown for invalid user-supplied configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an internal contract is violated (CLI exit code 3).
struct ContractFault : std::logic_error {
  using std::logic_error::logic_error;
};

using SatId = int;
using TaskId = std::int64_t;

// Origin sentinel for tasks issued by the ground segment.
inline constexpr SatId kGround = -1;

inline constexpr double kFractionTol = 1e-9;

enum class Category { SatToSat = 0, SatToGnd = 1, GndToSat = 2 };
inline constexpr int kCategoryCount = 3;

inline const char* to_string(Category c) {
  switch (c) {
    case Category::SatToSat: return "SatToSat";
    case Category::SatToGnd: return "SatToGnd";
    case Category::GndToSat: return "GndToSat";
  }
  return "?";
}

inline std::optional<Category> parse_category(const std::string& s) {
  if (s == "SatToSat") return Category::SatToSat;
  if (s == "SatToGnd") return Category::SatToGnd;
  if (s == "GndToSat") return Category::GndToSat;
  return std::nullopt;
}

enum class TaskStatus { Pending, InTransfer, Processing, Completed, Blocked };

inline const char* to_string(TaskStatus s) {
  switch (s) {
    case TaskStatus::Pending: return "Pending";
    case TaskStatus::InTransfer: return "InTransfer";
    case TaskStatus::Processing: return "Processing";
    case TaskStatus::Completed: return "Completed";
    case TaskStatus::Blocked: return "Blocked";
  }
  return "?";
}

enum class ResourceTag { Cores, Memory, Storage, Energy, NoParticipants };
enum class AllocMode { Cooperative, RootOnly };

struct BlockReason {
  ResourceTag resource = ResourceTag::Cores;
  AllocMode mode = AllocMode::RootOnly;
};

inline std::string render_block_reason(const BlockReason& r) {
  std::string out = r.mode == AllocMode::Cooperative ? "Cooperative: " : "Root-only: ";
  out += "Insufficient ";
  switch (r.resource) {
    case ResourceTag::Cores: out += "cores"; break;
    case ResourceTag::Memory: out += "memory"; break;
    case ResourceTag::Storage: out += "storage"; break;
    case ResourceTag::Energy: out += "energy"; break;
    case ResourceTag::NoParticipants: out += "participants"; break;
  }
  return out;
}

// One row of a satellite's allocation ledger. A task holds the listed
// resources from allocation until it is released at completion time.
struct LedgerEntry {
  TaskId task_id = 0;
  int cores = 0;
  double memory_gb = 0.0;
  double storage_gb = 0.0;
  double fraction = 0.0;
  double completion_time_s = 0.0;
};

struct SatelliteState {
  SatId id = 0;

  double altitude_km = 550.0;
  double orbital_period_s = 0.0;
  double phase_offset = 0.0;       // radians, position along orbit at t = 0
  double eclipse_fraction = 0.0;   // fraction of each period spent in shadow

  double compute_speed_gflops = 20.0;
  int total_cores = 4;
  double total_memory_gb = 128.0;
  double total_storage_gb = 512.0;

  double battery_capacity_wh = 280.0;
  double battery_level_wh = 280.0;
  double recharge_watts = 100.0;
  double energy_per_flop_j = 5e-9;

  std::vector<LedgerEntry> ledger;

  // Monotone counters; clamping affects battery_level only, so the
  // clamp losses are tracked separately to keep the energy identity
  // auditable: battery delta = recharged - consumed - lost + unmet.
  double cum_consumed_wh = 0.0;
  double cum_recharged_wh = 0.0;
  double cum_consumed_sunlit_wh = 0.0;
  double clamp_lost_recharge_wh = 0.0;
  double clamp_unmet_consume_wh = 0.0;

  // Available pools are derived from the ledger so the conservation
  // identity (total - available == sum over ledger) holds exactly.
  int available_cores() const {
    int used = 0;
    for (const auto& e : ledger) used += e.cores;
    return total_cores - used;
  }
  double available_memory_gb() const {
    double used = 0.0;
    for (const auto& e : ledger) used += e.memory_gb;
    return total_memory_gb - used;
  }
  double available_storage_gb() const {
    double used = 0.0;
    for (const auto& e : ledger) used += e.storage_gb;
    return total_storage_gb - used;
  }
};

struct Task {
  TaskId id = 0;
  Category category = Category::SatToSat;
  double size_gb = 0.0;
  double intensity_flop_per_mb = 0.0;
  double dtn_fraction = 0.0;     // distributable share; unused for SatToGnd
  SatId origin = kGround;
  double arrival_time_s = 0.0;

  TaskStatus status = TaskStatus::Pending;
  std::optional<BlockReason> blocking_reason;
  std::vector<std::pair<SatId, double>> participants;  // (satellite, fraction)
  std::optional<double> exec_start_s;                  // allocation instant
  std::optional<double> completion_time_s;
};

struct Sltn {
  SatId root_id = 0;
  std::vector<SatId> child_ids;  // ascending, never contains root_id
};

enum class TransferLeg { Downlink, Uplink, ResultDownlink };

inline const char* to_string(TransferLeg l) {
  switch (l) {
    case TransferLeg::Downlink: return "Downlink";
    case TransferLeg::Uplink: return "Uplink";
    case TransferLeg::ResultDownlink: return "ResultDownlink";
  }
  return "?";
}

struct TaskArrival {
  TaskId task_id = 0;
};
struct SatCompletion {
  TaskId task_id = 0;
};
struct GroundTransferDone {
  TaskId task_id = 0;
  TransferLeg leg = TransferLeg::Downlink;
};
struct SimEnd {};

using EventKind = std::variant<TaskArrival, SatCompletion, GroundTransferDone, SimEnd>;

// Events are ordered by (time_s, seq); seq is assigned in scheduling
// order, so ties resolve in favour of the event scheduled first.
struct Event {
  double time_s = 0.0;
  std::uint64_t seq = 0;
  EventKind kind;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time_s != b.time_s) return a.time_s > b.time_s;
    return a.seq > b.seq;
  }
};

}  // namespace rata
