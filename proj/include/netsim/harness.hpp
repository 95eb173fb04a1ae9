#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netsim/sim.hpp"

namespace netsim {

struct Combination {
  ControllerKind controller = ControllerKind::Smc;
  NetModelKind model = NetModelKind::SaintVenant;

  std::string label() const { return to_string(controller) + "+" + to_string(model); }
};

// All six controller x net-model cells.
std::vector<Combination> all_combinations();

struct BatchSpec {
  int samples = 200;
  double sphere_radius = 5.0;  // m
  std::uint64_t seed = 20240811;
  bool sphere_surface = true;  // false: sample the ball volume instead
  std::vector<Combination> combinations = all_combinations();
  int workers = 0;  // 0 = library default; 1 = serial reference path
  std::string output_dir = "out";
};

// One episode of the batch protocol; maps 1:1 onto episodes.csv columns.
struct EpisodeRow {
  std::string combination;
  Vec3 start;
  bool captured = false;
  double capture_time_s = 0.0;
  double fuel_kg = 0.0;
  int contacts = 0;
  double effective_area_m2 = 0.0;
  std::string termination_reason;
};

struct MetricStats {
  int count = 0;
  double min = 0.0, max = 0.0;
  double median = 0.0, q1 = 0.0, q3 = 0.0;
};

struct CombinationSummary {
  std::string label;
  int episodes = 0;
  int captured = 0;
  double capture_percentage = 0.0;
  // Stats over captured episodes only; absent when none captured.
  std::optional<MetricStats> capture_time;
  std::optional<MetricStats> fuel;
  std::optional<MetricStats> contacts;
  std::optional<MetricStats> effective_area;
  double max_thrust = 0.0;  // N, over every step of every episode
  LogHistogram thrust_hist, velocity_hist, acceleration_hist, internal_force_hist;
};

struct BatchSummary {
  std::vector<EpisodeRow> rows;
  std::vector<CombinationSummary> combinations;
  double max_thrust = 0.0;
};

// Deterministic points uniform on the sphere surface (or ball volume).
std::vector<Vec3> sample_sphere_uniform(int n, double radius, std::uint64_t seed,
                                        bool surface = true);

// Runs samples x combinations episodes. The same start set is shared across
// combinations so controller/model comparisons are paired. Episodes run in
// parallel over a worker pool; results are gathered by index, so the outcome
// is identical for any worker count.
BatchSummary run_batch(const SimConfig& base, const BatchSpec& spec);

// Single-threaded reference path: bitwise-identical results to run_batch.
BatchSummary run_batch_serial(const SimConfig& base, const BatchSpec& spec);

// Aggregates rows into per-combination statistics (no histograms/thrust).
std::vector<CombinationSummary> summarize(const std::vector<EpisodeRow>& rows);

std::string episodes_csv_header();
void write_episodes_csv(const std::string& path, const std::vector<EpisodeRow>& rows);
std::vector<EpisodeRow> read_episodes_csv(const std::string& path);

// summary.json document with per-combination stats and histogram bins.
void write_summary_json(const std::string& path, const BatchSummary& summary);

}  // namespace netsim
