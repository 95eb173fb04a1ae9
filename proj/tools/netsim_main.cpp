#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "netsim/errors.hpp"
#include "netsim/scenario.hpp"
#include "netsim/svg.hpp"

namespace {

using namespace netsim;

Scenario load_or_default(const std::string& path) {
  if (path.empty()) return Scenario{};
  return load_scenario(path);
}

nlohmann::json metrics_json(const EpisodeMetrics& m) {
  return {{"captured", m.captured},
          {"capture_time_s", m.captured ? nlohmann::json(m.capture_time) : nlohmann::json()},
          {"duration_s", m.duration},
          {"steps", m.steps},
          {"termination_reason", to_string(m.reason)},
          {"fuel_total_kg", m.fuel_total},
          {"fuel_per_satellite_kg",
           {m.fuel_per_satellite[0], m.fuel_per_satellite[1], m.fuel_per_satellite[2],
            m.fuel_per_satellite[3]}},
          {"contact_points_at_capture", m.contact_points_at_capture},
          {"effective_area_at_first_contact_m2",
           m.had_contact ? nlohmann::json(m.effective_area_at_first_contact)
                         : nlohmann::json()},
          {"max_thrust_n", m.max_thrust},
          {"max_internal_force_n", m.max_internal_force},
          {"max_edge_strain", m.max_edge_strain}};
}

int cmd_run(const std::string& scenario_path, const std::string& record_path) {
  Scenario sc = load_or_default(scenario_path);
  sc.sim.log_trajectory = !record_path.empty() || sc.sim.log_trajectory;

  EpisodeRecord record;
  const EpisodeMetrics metrics = run_episode(sc.sim, &record);

  if (!record_path.empty()) write_record_csv(record_path, record);
  std::cout << metrics_json(metrics).dump(2) << std::endl;
  return 0;
}

void write_batch_outputs(const std::string& out_dir, const Scenario& sc,
                         const BatchSummary& summary) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  write_episodes_csv((fs::path(out_dir) / "episodes.csv").string(), summary.rows);
  write_summary_json((fs::path(out_dir) / "summary.json").string(), summary);
  write_scenario((fs::path(out_dir) / "scenario_effective.json").string(), sc);
}

void write_svgs(const std::string& out_dir, const std::vector<EpisodeRow>& rows) {
  namespace fs = std::filesystem;
  std::set<std::string> combos;
  for (const auto& r : rows) combos.insert(r.combination);

  for (const auto& combo : combos) {
    std::vector<EpisodeRow> subset;
    for (const auto& r : rows)
      if (r.combination == combo) subset.push_back(r);

    std::string safe = combo;
    for (auto& c : safe)
      if (c == '+') c = '_';

    ScatterOptions time_opts;
    time_opts.color_metric = "capture_time";
    time_opts.size_metric = "effective_area";
    time_opts.title = combo + ": capture time over start position";
    std::ofstream((fs::path(out_dir) / ("scatter_capture_time_" + safe + ".svg")))
        << emit_scatter_svg(subset, time_opts);

    ScatterOptions fuel_opts;
    fuel_opts.color_metric = "fuel";
    fuel_opts.size_metric = "contacts";
    fuel_opts.title = combo + ": fuel over start position";
    std::ofstream((fs::path(out_dir) / ("scatter_fuel_" + safe + ".svg")))
        << emit_scatter_svg(subset, fuel_opts);
  }
}

int cmd_batch(const std::string& scenario_path, const std::string& out_dir, int workers,
              bool svg) {
  Scenario sc = load_or_default(scenario_path);
  if (!out_dir.empty()) sc.batch.output_dir = out_dir;
  if (workers >= 0) sc.batch.workers = workers;

  const auto t0 = std::chrono::steady_clock::now();
  const BatchSummary summary = run_batch(sc.sim, sc.batch);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  write_batch_outputs(sc.batch.output_dir, sc, summary);
  if (svg) write_svgs(sc.batch.output_dir, summary.rows);

  std::cerr << summary.rows.size() << " episodes in " << secs << " s\n";
  for (const auto& cs : summary.combinations) {
    std::cerr << "  " << cs.label << ": " << cs.captured << "/" << cs.episodes << " captured ("
              << cs.capture_percentage << "%)\n";
  }
  return 0;
}

int cmd_report(const std::string& in_dir, bool svg) {
  namespace fs = std::filesystem;
  const auto rows = read_episodes_csv((fs::path(in_dir) / "episodes.csv").string());

  BatchSummary summary;
  summary.rows = rows;
  summary.combinations = summarize(rows);
  write_summary_json((fs::path(in_dir) / "summary.json").string(), summary);
  if (svg) write_svgs(in_dir, rows);

  for (const auto& cs : summary.combinations) {
    std::cout << cs.label << ": " << cs.captured << "/" << cs.episodes << " captured ("
              << cs.capture_percentage << "%)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft-net space debris capture simulator"};
  app.require_subcommand(1);

  std::string scenario_path, record_path, out_dir = "", in_dir;
  int workers = -1;
  bool svg = false;

  if (const char* env = std::getenv("NETSIM_WORKERS")) {
    workers = std::atoi(env);
  }

  auto* run = app.add_subcommand("run", "Run a single episode and print metrics JSON");
  run->add_option("--scenario", scenario_path, "Scenario file (defaults when omitted)");
  run->add_option("--record", record_path, "Write per-step trajectory CSV here");

  auto* batch = app.add_subcommand("batch", "Run the batch capture-statistics protocol");
  batch->add_option("--scenario", scenario_path, "Scenario file (defaults when omitted)");
  batch->add_option("--out", out_dir, "Output directory");
  batch->add_option("--workers", workers, "Worker thread count (0 = all cores)");
  batch->add_flag("--svg", svg, "Also emit scatter SVG plots");

  auto* report = app.add_subcommand("report", "Re-aggregate stored episode rows");
  report->add_option("--in", in_dir, "Directory containing episodes.csv")->required();
  report->add_flag("--svg", svg, "Also emit scatter SVG plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(scenario_path, record_path);
    if (batch->parsed()) return cmd_batch(scenario_path, out_dir, workers, svg);
    if (report->parsed()) return cmd_report(in_dir, svg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
