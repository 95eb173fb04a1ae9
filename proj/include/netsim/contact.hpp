#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netsim/state.hpp"

namespace netsim {

struct ContactParams {
  double penalty_stiffness = 1e4;  // N/m
  double penalty_damping = 50.0;   // N*s/m
  double friction_coeff = 0.5;
  double node_radius = 0.05;  // m
  bool self_contact_enabled = true;
  // Tangential speed below which friction ramps linearly to zero instead of
  // switching sign (keeps resting contacts quiet at 1 ms substeps).
  double friction_regularization_vel = 1e-3;  // m/s
};

// Penalty contact of every net node against the debris composite.
// Equal-and-opposite force plus the consistent torque go to the debris.
// Returns the number of nodes with signed distance < node_radius.
int net_debris_contact(const NetState& net, const DebrisState& debris,
                       const ContactParams& params, ForceBuffer& forces);

// Number of nodes with signed distance < node_radius, without forces.
int contact_count(const NetState& net, const DebrisState& debris, const ContactParams& params);

// Uniform-grid spatial hash over points; cell size should be at least the
// query diameter.
class SpatialHash {
 public:
  SpatialHash(const std::vector<Vec3>& points, double cell_size);

  // Calls fn(i, j) with i < j for every pair whose cells are within one cell
  // of each other: a superset of all pairs closer than cell_size.
  template <typename Fn>
  void for_each_near_pair(Fn&& fn) const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const Vec3& p = points_[i];
      const std::int64_t cx = cell_coord(p.x), cy = cell_coord(p.y), cz = cell_coord(p.z);
      for (std::int64_t dx = -1; dx <= 1; ++dx)
        for (std::int64_t dy = -1; dy <= 1; ++dy)
          for (std::int64_t dz = -1; dz <= 1; ++dz) {
            const auto it = cells_.find(key(cx + dx, cy + dy, cz + dz));
            if (it == cells_.end()) continue;
            for (int j : it->second) {
              if (static_cast<std::size_t>(j) > i) fn(static_cast<int>(i), j);
            }
          }
    }
  }

  std::vector<std::pair<int, int>> near_pairs() const;

 private:
  std::int64_t cell_coord(double x) const {
    return static_cast<std::int64_t>(std::floor(x / cell_));
  }
  static std::uint64_t key(std::int64_t x, std::int64_t y, std::int64_t z) {
    // Large odd primes keep grid-aligned points from colliding too often.
    return static_cast<std::uint64_t>(x) * 73856093ULL ^
           static_cast<std::uint64_t>(y) * 19349663ULL ^
           static_cast<std::uint64_t>(z) * 83492791ULL;
  }

  const std::vector<Vec3>& points_;
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

// Sphere-sphere repulsion between non-adjacent node pairs closer than
// 2 * node_radius. Grid neighbors (8-neighborhood) are excluded.
void self_contact(const NetState& net, const ContactParams& params, ForceBuffer& forces);

// Broad-phase pair candidates: every non-adjacent pair within
// 2 * node_radius + margin. A margin covering the worst node motion lets the
// list be reused across the substeps of one control step.
std::vector<std::pair<int, int>> self_contact_pairs(const NetState& net,
                                                    const ContactParams& params,
                                                    double margin);

// Narrow phase over a candidate list; pairs farther than 2 * node_radius are
// skipped, so any superset list yields identical forces.
void self_contact_forces(const NetState& net, const ContactParams& params,
                         const std::vector<std::pair<int, int>>& pairs, ForceBuffer& forces);

// True when grid nodes i and j differ by at most one row and one column.
bool grid_adjacent(const NetState& net, int i, int j);

}  // namespace netsim
