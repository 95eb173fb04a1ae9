#pragma once

#include <cstdint>

#include "netsim/actuation.hpp"
#include "netsim/contact.hpp"
#include "netsim/guidance.hpp"
#include "netsim/net_models.hpp"
#include "netsim/orbital.hpp"

namespace netsim {

struct NetConfig {
  int rows = 10;
  int cols = 10;
  double side_length = 10.0;   // m, corner-to-corner along an edge
  double node_mass = 0.1;      // kg
  double corner_mass = 350.0;  // kg
  Vec3 offset{5.0, 0.0, 0.0};  // net centroid relative to the debris, m
  Vec3 relative_velocity{0.0, 0.0, 0.0};
  // The net plane normal is +x in the Hill frame for every start point
  // (constant absolute orientation).
  double spawn_clearance = 0.25;  // m, minimum initial node-to-debris gap

  double spacing() const { return side_length / (cols - 1); }
};

struct DebrisConfig {
  double mass = 7821.0;  // kg
  Vec3 initial_velocity{0.0, 0.0, 0.0};
  Vec3 initial_angular_velocity{0.0, 0.0, 0.0};
  CompositeShape geometry = CompositeShape::envisat_like();
};

struct SimConfig {
  NetModelKind model = NetModelKind::SaintVenant;
  ElasticParams elastic;
  NetConfig net;
  DebrisConfig debris;
  ControlGains gains;
  GuidanceConfig guidance;
  ContactParams contact;
  orbital::OrbitParams orbit;

  double control_step = 0.02;  // s
  int substeps = 20;
  double timeout = 600.0;          // s
  double fuel_floor_mass = 250.0;  // kg, per-satellite dry floor
  double divergence_limit = 1e6;   // m
  std::uint64_t seed = 0;
  bool log_trajectory = false;

  double substep_dt() const { return control_step / substeps; }

  // Throws ConfigError naming the offending field.
  void validate() const;
};

}  // namespace netsim
