#include "netsim/net_models.hpp"

#include <cmath>

#include "netsim/errors.hpp"

namespace netsim {

std::string to_string(NetModelKind k) {
  switch (k) {
    case NetModelKind::InextensibleEdges: return "inextensible";
    case NetModelKind::Shell: return "shell";
    case NetModelKind::SaintVenant: return "saint_venant";
  }
  return "unknown";
}

NetTopology NetTopology::build(const NetState& net) {
  NetTopology topo;
  const int rows = net.rows, cols = net.cols;

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int i = net.index(r, c);
      if (c + 1 < cols) {
        const int j = net.index(r, c + 1);
        topo.edges.push_back({i, j, norm(net.pos[j] - net.pos[i])});
      }
      if (r + 1 < rows) {
        const int j = net.index(r + 1, c);
        topo.edges.push_back({i, j, norm(net.pos[j] - net.pos[i])});
      }
      if (c + 2 < cols) topo.bends.push_back({i, net.index(r, c + 1), net.index(r, c + 2)});
      if (r + 2 < rows) topo.bends.push_back({i, net.index(r + 1, c), net.index(r + 2, c)});
    }
  }

  // Two constant-strain triangles per cell. Rest shape comes from the grid
  // coordinates (u along columns, v along rows).
  auto add_triangle = [&](int a, int b, int c, double ua, double va, double ub, double vb,
                          double uc, double vc) {
    const double d00 = ub - ua, d01 = uc - ua;
    const double d10 = vb - va, d11 = vc - va;
    const double det = d00 * d11 - d01 * d10;
    if (std::abs(det) < 1e-12) {
      throw ConfigError("net", "degenerate rest triangle in grid topology");
    }
    Triangle t;
    t.a = a;
    t.b = b;
    t.c = c;
    const double inv = 1.0 / det;
    t.inv_rest[0][0] = d11 * inv;
    t.inv_rest[0][1] = -d01 * inv;
    t.inv_rest[1][0] = -d10 * inv;
    t.inv_rest[1][1] = d00 * inv;
    t.rest_area = 0.5 * std::abs(det);
    topo.triangles.push_back(t);
  };

  const double s = net.rest_spacing;
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      const int i00 = net.index(r, c);
      const int i01 = net.index(r, c + 1);
      const int i10 = net.index(r + 1, c);
      const int i11 = net.index(r + 1, c + 1);
      const double u0 = c * s, u1 = (c + 1) * s;
      const double v0 = r * s, v1 = (r + 1) * s;
      add_triangle(i00, i01, i11, u0, v0, u1, v0, u1, v1);
      add_triangle(i00, i11, i10, u0, v0, u1, v1, u0, v1);
    }
  }
  return topo;
}

void edge_spring_forces(const NetState& net, const NetTopology& topo, double stiffness,
                        ForceBuffer& forces) {
  for (const auto& e : topo.edges) {
    const Vec3 d = net.pos[e.b] - net.pos[e.a];
    const double len = norm(d);
    if (len < 1e-12) continue;
    const Vec3 dir = d / len;
    const Vec3 f = dir * (stiffness * (len - e.rest_length));
    forces.node_force[e.a] += f;
    forces.node_force[e.b] -= f;
  }
}

double edge_spring_energy(const NetState& net, const NetTopology& topo, double stiffness) {
  double energy = 0.0;
  for (const auto& e : topo.edges) {
    const double stretch = norm(net.pos[e.b] - net.pos[e.a]) - e.rest_length;
    energy += 0.5 * stiffness * stretch * stretch;
  }
  return energy;
}

void bending_forces(const NetState& net, const NetTopology& topo, double bending_stiffness,
                    ForceBuffer& forces) {
  if (topo.edges.empty()) return;
  const double s = topo.edges.front().rest_length;
  const double k = bending_stiffness / (s * s);
  for (const auto& t : topo.bends) {
    const Vec3 lap = net.pos[t.a] - net.pos[t.b] * 2.0 + net.pos[t.c];
    const Vec3 f = lap * k;
    forces.node_force[t.a] -= f;
    forces.node_force[t.b] += f * 2.0;
    forces.node_force[t.c] -= f;
  }
}

double bending_energy(const NetState& net, const NetTopology& topo, double bending_stiffness) {
  if (topo.edges.empty()) return 0.0;
  const double s = topo.edges.front().rest_length;
  const double k = bending_stiffness / (s * s);
  double energy = 0.0;
  for (const auto& t : topo.bends) {
    const Vec3 lap = net.pos[t.a] - net.pos[t.b] * 2.0 + net.pos[t.c];
    energy += 0.5 * k * norm2(lap);
  }
  return energy;
}

namespace {

// Deformation gradient columns (3x2) of a triangle: F = Ds * inv_rest.
struct MembraneKinematics {
  Vec3 f0, f1;     // columns of F
  double area = 0.0;
  bool degenerate = false;
};

MembraneKinematics membrane_kinematics(const NetState& net, const Triangle& t) {
  MembraneKinematics k;
  k.area = t.rest_area;
  if (t.rest_area < 1e-12) {
    k.degenerate = true;
    return k;
  }
  const Vec3 e1 = net.pos[t.b] - net.pos[t.a];
  const Vec3 e2 = net.pos[t.c] - net.pos[t.a];
  k.f0 = e1 * t.inv_rest[0][0] + e2 * t.inv_rest[1][0];
  k.f1 = e1 * t.inv_rest[0][1] + e2 * t.inv_rest[1][1];
  return k;
}

}  // namespace

int stvk_membrane_forces(const NetState& net, const NetTopology& topo,
                         const ElasticParams& params, ForceBuffer& forces) {
  const double lambda = params.lame_lambda();
  const double mu = params.lame_mu();
  const double h = params.thickness;
  int skipped = 0;

  for (const auto& t : topo.triangles) {
    const MembraneKinematics k = membrane_kinematics(net, t);
    if (k.degenerate) {
      ++skipped;
      continue;
    }
    // Green strain E = (F^T F - I)/2, 2x2 symmetric.
    const double c00 = dot(k.f0, k.f0);
    const double c01 = dot(k.f0, k.f1);
    const double c11 = dot(k.f1, k.f1);
    const double e00 = 0.5 * (c00 - 1.0);
    const double e01 = 0.5 * c01;
    const double e11 = 0.5 * (c11 - 1.0);

    // Second Piola-Kirchhoff stress S = lambda tr(E) I + 2 mu E.
    const double tr = e00 + e11;
    const double s00 = lambda * tr + 2.0 * mu * e00;
    const double s01 = 2.0 * mu * e01;
    const double s11 = lambda * tr + 2.0 * mu * e11;

    // P = F S (3x2), node forces = -V * P * inv_rest^T with V = area * h.
    const Vec3 p0 = k.f0 * s00 + k.f1 * s01;
    const Vec3 p1 = k.f0 * s01 + k.f1 * s11;
    const double v = k.area * h;

    const Vec3 fb = (p0 * t.inv_rest[0][0] + p1 * t.inv_rest[0][1]) * (-v);
    const Vec3 fc = (p0 * t.inv_rest[1][0] + p1 * t.inv_rest[1][1]) * (-v);
    forces.node_force[t.b] += fb;
    forces.node_force[t.c] += fc;
    forces.node_force[t.a] -= fb + fc;
  }
  return skipped;
}

double stvk_energy(const NetState& net, const NetTopology& topo, const ElasticParams& params) {
  const double lambda = params.lame_lambda();
  const double mu = params.lame_mu();
  const double h = params.thickness;
  double energy = 0.0;

  for (const auto& t : topo.triangles) {
    const MembraneKinematics k = membrane_kinematics(net, t);
    if (k.degenerate) continue;
    const double c00 = dot(k.f0, k.f0);
    const double c01 = dot(k.f0, k.f1);
    const double c11 = dot(k.f1, k.f1);
    const double e00 = 0.5 * (c00 - 1.0);
    const double e01 = 0.5 * c01;
    const double e11 = 0.5 * (c11 - 1.0);
    const double tr = e00 + e11;
    const double tr_e2 = e00 * e00 + 2.0 * e01 * e01 + e11 * e11;
    energy += k.area * h * (0.5 * lambda * tr * tr + mu * tr_e2);
  }
  return energy;
}

void damping_forces(const NetState& net, const NetTopology& topo, double damping,
                    ForceBuffer& forces) {
  if (damping <= 0.0) return;
  for (const auto& e : topo.edges) {
    const Vec3 d = net.pos[e.b] - net.pos[e.a];
    const double len = norm(d);
    if (len < 1e-12) continue;
    const Vec3 dir = d / len;
    const double rate = dot(net.vel[e.b] - net.vel[e.a], dir);
    const Vec3 f = dir * (damping * rate);
    forces.node_force[e.a] += f;
    forces.node_force[e.b] -= f;
  }
}

int internal_forces(const NetState& net, const NetTopology& topo, NetModelKind kind,
                    const ElasticParams& params, ForceBuffer& forces) {
  int skipped = 0;
  switch (kind) {
    case NetModelKind::InextensibleEdges:
      // Elastic part handled by constraint projection; only edge damping here.
      break;
    case NetModelKind::Shell:
      edge_spring_forces(net, topo, params.effective_edge_stiffness(), forces);
      bending_forces(net, topo, params.bending_stiffness, forces);
      break;
    case NetModelKind::SaintVenant:
      skipped = stvk_membrane_forces(net, topo, params, forces);
      break;
  }
  damping_forces(net, topo, params.damping, forces);
  return skipped;
}

void project_inextensible(NetState& net, const NetTopology& topo, int iterations, double dt) {
  static thread_local std::vector<Vec3> before;
  before.assign(net.pos.begin(), net.pos.end());

  for (int it = 0; it < iterations; ++it) {
    for (const auto& e : topo.edges) {
      const Vec3 d = net.pos[e.b] - net.pos[e.a];
      const double len = norm(d);
      if (len < 1e-12) continue;
      const double wa = 1.0 / net.mass[e.a];
      const double wb = 1.0 / net.mass[e.b];
      const double violation = len - e.rest_length;
      const Vec3 corr = d * (violation / (len * (wa + wb)));
      net.pos[e.a] += corr * wa;
      net.pos[e.b] -= corr * wb;
    }
  }

  if (dt > 0.0) {
    const double inv_dt = 1.0 / dt;
    for (int i = 0; i < net.node_count(); ++i) {
      net.vel[i] += (net.pos[i] - before[i]) * inv_dt;
    }
  }

  // A fixed-distance edge is a rod: the relative velocity along its axis is
  // constrained too. Projecting it out (mass-weighted, momentum-free) keeps
  // the taut net from whipping under the position fixes above.
  for (int it = 0; it < iterations; ++it) {
    for (const auto& e : topo.edges) {
      const Vec3 d = net.pos[e.b] - net.pos[e.a];
      const double len = norm(d);
      if (len < 1e-12) continue;
      const Vec3 axis = d / len;
      const double wa = 1.0 / net.mass[e.a];
      const double wb = 1.0 / net.mass[e.b];
      const double rate = dot(net.vel[e.b] - net.vel[e.a], axis);
      const Vec3 corr = axis * (rate / (wa + wb));
      net.vel[e.a] += corr * wa;
      net.vel[e.b] -= corr * wb;
    }
  }
}

double max_edge_strain(const NetState& net, const NetTopology& topo) {
  double worst = 0.0;
  for (const auto& e : topo.edges) {
    const double len = norm(net.pos[e.b] - net.pos[e.a]);
    worst = std::max(worst, std::abs(len - e.rest_length) / e.rest_length);
  }
  return worst;
}

}  // namespace netsim
