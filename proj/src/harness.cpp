#include "netsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "netsim/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace netsim {

std::vector<Combination> all_combinations() {
  std::vector<Combination> out;
  for (auto controller : {ControllerKind::Pid, ControllerKind::Smc}) {
    for (auto model :
         {NetModelKind::InextensibleEdges, NetModelKind::Shell, NetModelKind::SaintVenant}) {
      out.push_back({controller, model});
    }
  }
  return out;
}

std::vector<Vec3> sample_sphere_uniform(int n, double radius, std::uint64_t seed, bool surface) {
  std::mt19937_64 rng(seed);
  // Uniform in (0,1]; explicit construction keeps the stream portable.
  auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  };
  auto gaussian_pair = [&](double& a, double& b) {
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    a = r * std::cos(2.0 * M_PI * u2);
    b = r * std::sin(2.0 * M_PI * u2);
  };

  std::vector<Vec3> out;
  out.reserve(n);
  while (static_cast<int>(out.size()) < n) {
    double g0, g1, g2, g3;
    gaussian_pair(g0, g1);
    gaussian_pair(g2, g3);
    const Vec3 g{g0, g1, g2};
    const double len = norm(g);
    if (len < 1e-12) continue;
    double r = radius;
    if (!surface) r *= std::cbrt(uniform());
    out.push_back(g * (r / len));
  }
  return out;
}

namespace {

struct EpisodeOutcome {
  EpisodeRow row;
  EpisodeMetrics metrics;
};

EpisodeOutcome run_job(const SimConfig& base, const Combination& combo, const Vec3& start) {
  SimConfig config = base;
  config.gains.kind = combo.controller;
  config.model = combo.model;
  config.net.offset = start;
  config.log_trajectory = false;

  EpisodeOutcome out;
  out.row.combination = combo.label();
  out.row.start = start;
  try {
    out.metrics = run_episode(config);
    out.row.captured = out.metrics.captured;
    out.row.capture_time_s = out.metrics.captured ? out.metrics.capture_time : 0.0;
    out.row.fuel_kg = out.metrics.fuel_total;
    out.row.contacts = out.metrics.contact_points_at_capture;
    out.row.effective_area_m2 = out.metrics.effective_area_at_first_contact;
    out.row.termination_reason = to_string(out.metrics.reason);
  } catch (const std::exception& e) {
    // A failed episode is a recorded outcome, never a batch abort.
    out.row.termination_reason = std::string("error: ") + e.what();
  }
  return out;
}

MetricStats stats_of(std::vector<double> values) {
  MetricStats s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  auto quantile = [&](double q) {
    const double idx = q * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = idx - lo;
    return values[lo] * (1.0 - frac) + values[hi] * frac;
  };
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  return s;
}

BatchSummary assemble(const std::vector<Combination>& combos,
                      const std::vector<EpisodeOutcome>& outcomes, int samples) {
  BatchSummary summary;
  summary.rows.reserve(outcomes.size());
  for (const auto& o : outcomes) summary.rows.push_back(o.row);
  summary.combinations = summarize(summary.rows);

  // Enrich with step-level aggregates that raw rows cannot carry.
  for (std::size_t ci = 0; ci < combos.size(); ++ci) {
    const std::string label = combos[ci].label();
    for (auto& cs : summary.combinations) {
      if (cs.label != label) continue;
      for (int si = 0; si < samples; ++si) {
        const auto& m = outcomes[ci * samples + si].metrics;
        cs.max_thrust = std::max(cs.max_thrust, m.max_thrust);
        cs.thrust_hist.merge(m.thrust_hist);
        cs.velocity_hist.merge(m.velocity_hist);
        cs.acceleration_hist.merge(m.acceleration_hist);
        cs.internal_force_hist.merge(m.internal_force_hist);
      }
      summary.max_thrust = std::max(summary.max_thrust, cs.max_thrust);
    }
  }
  return summary;
}

}  // namespace

BatchSummary run_batch(const SimConfig& base, const BatchSpec& spec) {
  if (spec.samples < 1) throw ConfigError("batch.samples", "must be >= 1");
  if (spec.sphere_radius <= 0.0) throw ConfigError("batch.radius", "must be > 0");
  if (spec.combinations.empty()) throw ConfigError("batch.combinations", "must be non-empty");
  base.validate();

  const std::vector<Vec3> starts =
      sample_sphere_uniform(spec.samples, spec.sphere_radius, spec.seed, spec.sphere_surface);

  const int jobs = static_cast<int>(spec.combinations.size()) * spec.samples;
  std::vector<EpisodeOutcome> outcomes(jobs);

  if (spec.workers == 1) {
    // Serial reference path; must produce bitwise-identical results.
    for (int j = 0; j < jobs; ++j) {
      const int ci = j / spec.samples;
      const int si = j % spec.samples;
      outcomes[j] = run_job(base, spec.combinations[ci], starts[si]);
    }
  } else {
#ifdef _OPENMP
    const int threads = spec.workers > 0 ? spec.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int j = 0; j < jobs; ++j) {
      const int ci = j / spec.samples;
      const int si = j % spec.samples;
      outcomes[j] = run_job(base, spec.combinations[ci], starts[si]);
    }
  }

  return assemble(spec.combinations, outcomes, spec.samples);
}

BatchSummary run_batch_serial(const SimConfig& base, const BatchSpec& spec) {
  BatchSpec serial = spec;
  serial.workers = 1;
  return run_batch(base, serial);
}

std::vector<CombinationSummary> summarize(const std::vector<EpisodeRow>& rows) {
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (std::find(order.begin(), order.end(), r.combination) == order.end())
      order.push_back(r.combination);
  }

  std::vector<CombinationSummary> out;
  for (const auto& label : order) {
    CombinationSummary cs;
    cs.label = label;
    std::vector<double> times, fuels, contacts, areas;
    for (const auto& r : rows) {
      if (r.combination != label) continue;
      ++cs.episodes;
      if (r.captured) {
        ++cs.captured;
        times.push_back(r.capture_time_s);
        fuels.push_back(r.fuel_kg);
        contacts.push_back(static_cast<double>(r.contacts));
        areas.push_back(r.effective_area_m2);
      }
    }
    cs.capture_percentage = 100.0 * cs.captured / cs.episodes;
    if (cs.captured > 0) {
      cs.capture_time = stats_of(times);
      cs.fuel = stats_of(fuels);
      cs.contacts = stats_of(contacts);
      cs.effective_area = stats_of(areas);
    }
    out.push_back(std::move(cs));
  }
  return out;
}

std::string episodes_csv_header() {
  return "combination,start_x,start_y,start_z,captured,capture_time_s,fuel_kg,contacts,"
         "effective_area_m2,termination_reason";
}

namespace {

std::string fmt(double v) {
  // Shortest exact representation so parse(emit(rows)) == rows.
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_episodes_csv(const std::string& path, const std::vector<EpisodeRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << episodes_csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.combination << ',' << fmt(r.start.x) << ',' << fmt(r.start.y) << ','
        << fmt(r.start.z) << ',' << (r.captured ? 1 : 0) << ',' << fmt(r.capture_time_s) << ','
        << fmt(r.fuel_kg) << ',' << r.contacts << ',' << fmt(r.effective_area_m2) << ','
        << r.termination_reason << '\n';
  }
}

std::vector<EpisodeRow> read_episodes_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  if (line != episodes_csv_header())
    throw std::runtime_error(path + ": unexpected header: " + line);

  std::vector<EpisodeRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    EpisodeRow r;
    auto next = [&]() {
      if (!std::getline(ss, field, ',')) throw std::runtime_error(path + ": short row");
      return field;
    };
    r.combination = next();
    r.start.x = std::stod(next());
    r.start.y = std::stod(next());
    r.start.z = std::stod(next());
    r.captured = std::stoi(next()) != 0;
    r.capture_time_s = std::stod(next());
    r.fuel_kg = std::stod(next());
    r.contacts = std::stoi(next());
    r.effective_area_m2 = std::stod(next());
    r.termination_reason = next();
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

nlohmann::json stats_json(const std::optional<MetricStats>& s) {
  if (!s) return nullptr;
  return {{"count", s->count}, {"min", s->min},       {"q1", s->q1},
          {"median", s->median}, {"q3", s->q3},       {"max", s->max}};
}

nlohmann::json hist_json(const LogHistogram& h) {
  nlohmann::json bins = nlohmann::json::array();
  for (int b = 0; b < LogHistogram::kBins; ++b) {
    if (h.counts[1 + b] == 0) continue;
    bins.push_back({{"lower_edge", LogHistogram::bin_lower_edge(b)},
                    {"count", h.counts[1 + b]}});
  }
  return {{"underflow", h.counts[0]},
          {"overflow", h.counts[LogHistogram::kBins + 1]},
          {"bins", bins}};
}

}  // namespace

void write_summary_json(const std::string& path, const BatchSummary& summary) {
  nlohmann::json combos = nlohmann::json::array();
  for (const auto& cs : summary.combinations) {
    combos.push_back({{"combination", cs.label},
                      {"episodes", cs.episodes},
                      {"captured", cs.captured},
                      {"capture_percentage", cs.capture_percentage},
                      {"capture_time_s", stats_json(cs.capture_time)},
                      {"fuel_kg", stats_json(cs.fuel)},
                      {"contacts", stats_json(cs.contacts)},
                      {"effective_area_m2", stats_json(cs.effective_area)},
                      {"max_thrust_n", cs.max_thrust},
                      {"histograms",
                       {{"thrust_n", hist_json(cs.thrust_hist)},
                        {"node_speed_m_s", hist_json(cs.velocity_hist)},
                        {"node_acceleration_m_s2", hist_json(cs.acceleration_hist)},
                        {"internal_force_n", hist_json(cs.internal_force_hist)}}}});
  }
  nlohmann::json doc = {{"episodes", summary.rows.size()},
                        {"max_thrust_n", summary.max_thrust},
                        {"combinations", combos}};

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << doc.dump(2) << '\n';
}

}  // namespace netsim
