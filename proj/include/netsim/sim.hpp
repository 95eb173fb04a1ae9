#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "netsim/dynamics.hpp"
#include "netsim/guidance.hpp"

namespace netsim {

enum class TerminationReason { Running, Captured, Timeout, Diverged, FuelExhausted };

std::string to_string(TerminationReason r);

// Fixed log-spaced histogram, 5 bins per decade over [1e-8, 1e4), with
// underflow/overflow buckets.
struct LogHistogram {
  static constexpr int kBins = 60;
  static constexpr double kLow = 1e-8;
  std::array<std::uint64_t, kBins + 2> counts{};  // [under | bins | over]

  void add(double value) {
    if (!(value >= kLow)) {
      ++counts[0];
      return;
    }
    const int idx = static_cast<int>(std::log10(value / kLow) * 5.0);
    if (idx >= kBins) {
      ++counts[kBins + 1];
    } else {
      ++counts[1 + idx];
    }
  }

  void merge(const LogHistogram& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
  }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }

  static double bin_lower_edge(int bin) { return kLow * std::pow(10.0, bin / 5.0); }
};

struct EpisodeMetrics {
  bool captured = false;
  double capture_time = 0.0;  // s, time when the sustain counter completed
  double duration = 0.0;      // s simulated
  long steps = 0;             // outer steps executed
  TerminationReason reason = TerminationReason::Running;

  double fuel_total = 0.0;  // kg
  std::array<double, 4> fuel_per_satellite{};

  int contact_points_at_capture = 0;
  bool had_contact = false;
  double effective_area_at_first_contact = 0.0;  // m^2

  double max_thrust = 0.0;          // N
  double max_internal_force = 0.0;  // N, per-node internal magnitude
  double max_edge_strain = 0.0;

  LogHistogram thrust_hist;          // |thrust| per corner per step, N
  LogHistogram velocity_hist;        // node speeds, m/s
  LogHistogram acceleration_hist;    // node accelerations, m/s^2
  LogHistogram internal_force_hist;  // per-node internal force, N
};

struct StepRecord {
  double t = 0.0;
  GuidancePhase phase = GuidancePhase::Orienting;
  std::array<Vec3, 4> corner_pos;
  std::array<Vec3, 4> corner_vel;
  std::array<Vec3, 4> thrust;
  Vec3 debris_pos, debris_vel, debris_ang_vel;
  Quat debris_orientation;
  int contact_count = 0;
  double leftover_angle = 0.0;
  double projected_area = 0.0;
  std::array<double, 4> satellite_mass{};
  double max_internal_force = 0.0;
};

using EpisodeRecord = std::vector<StepRecord>;

class Simulation {
 public:
  explicit Simulation(const SimConfig& config);

  // Advances one outer control step. Returns false once terminated.
  bool step();

  // Runs to termination (capture, timeout, divergence, or fuel floor).
  const EpisodeMetrics& run();

  const SimConfig& config() const { return config_; }
  const NetState& net() const { return net_; }
  const DebrisState& debris() const { return debris_; }
  const NetTopology& topology() const { return topo_; }
  const Guidance& guidance() const { return guidance_; }
  const EpisodeMetrics& metrics() const { return metrics_; }
  const EpisodeRecord& record() const { return record_; }
  const std::array<CornerControllerState, 4>& controllers() const { return controllers_; }
  int contact_count() const { return contact_count_; }
  double time() const { return t_; }

 private:
  void apply_termination(TerminationReason reason);
  void collect_metrics(const TargetSet& targets);

  SimConfig config_;
  NetState net_;
  DebrisState debris_;
  NetTopology topo_;
  Guidance guidance_;
  std::array<CornerControllerState, 4> controllers_;
  std::array<Vec3, 4> thrust_{};
  std::array<Vec3, 4> corner_accel_{};  // measured, for the Eq-8 feedback term
  ForceBuffer forces_;
  ForceBuffer internal_;
  std::vector<Vec3> held_;  // per-node zero-order-hold external force
  Vec3 debris_held_;
  int contact_count_ = 0;
  double t_ = 0.0;
  long step_ = 0;
  EpisodeMetrics metrics_;
  EpisodeRecord record_;
};

// Convenience wrapper; the record is filled only when config.log_trajectory.
EpisodeMetrics run_episode(const SimConfig& config, EpisodeRecord* record = nullptr);

// One row per outer step, stable column order (see header line).
void write_record_csv(const std::string& path, const EpisodeRecord& record);

}  // namespace netsim
