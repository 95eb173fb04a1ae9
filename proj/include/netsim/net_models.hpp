#pragma once

#include <string>
#include <vector>

#include "netsim/state.hpp"

namespace netsim {

enum class NetModelKind { InextensibleEdges, Shell, SaintVenant };

std::string to_string(NetModelKind k);

// Elastic parameters shared by the net formulations. `damping` acts as an
// axial dashpot coefficient per structural edge.
struct ElasticParams {
  double young_modulus = 10e3;     // Pa
  double poisson_ratio = 0.3;
  double damping = 1e-2;           // N*s/m per edge
  double thickness = 1e-3;         // m, membrane/shell thickness
  double bending_stiffness = 0.5;  // N*m, Shell only
  double edge_stiffness = 0.0;     // N/m; 0 means derive from E * thickness
  int constraint_iterations = 10;  // InextensibleEdges projection passes

  double effective_edge_stiffness() const {
    return edge_stiffness > 0.0 ? edge_stiffness : young_modulus * thickness;
  }

  double lame_lambda() const {
    const double e = young_modulus, nu = poisson_ratio;
    return e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  }
  double lame_mu() const { return young_modulus / (2.0 * (1.0 + poisson_ratio)); }
};

struct Edge {
  int a = 0;
  int b = 0;
  double rest_length = 0.0;
};

// Collinear triple along a grid row or column; b is the middle node.
struct BendTriple {
  int a = 0;
  int b = 0;
  int c = 0;
};

// Constant-strain triangle with its 2D rest shape. inv_rest is the inverse
// of the 2x2 rest edge matrix [x1-x0, x2-x0].
struct Triangle {
  int a = 0;
  int b = 0;
  int c = 0;
  double inv_rest[2][2] = {{0, 0}, {0, 0}};
  double rest_area = 0.0;  // m^2
};

struct NetTopology {
  std::vector<Edge> edges;
  std::vector<BendTriple> bends;
  std::vector<Triangle> triangles;

  static NetTopology build(const NetState& net);
};

// Per-formulation internal forces accumulated into `forces`. Returns the
// number of skipped degenerate elements (membrane triangles under 1e-12 m^2).
int internal_forces(const NetState& net, const NetTopology& topo, NetModelKind kind,
                    const ElasticParams& params, ForceBuffer& forces);

// Linear springs on structural edges (Shell elastic part).
void edge_spring_forces(const NetState& net, const NetTopology& topo, double stiffness,
                        ForceBuffer& forces);

// Momentum-free (-1, 2, -1) stencil penalizing the discrete Laplacian of
// each collinear triple.
void bending_forces(const NetState& net, const NetTopology& topo, double bending_stiffness,
                    ForceBuffer& forces);

// St. Venant-Kirchhoff constant-strain membrane. Returns skipped elements.
int stvk_membrane_forces(const NetState& net, const NetTopology& topo,
                         const ElasticParams& params, ForceBuffer& forces);

// Axial dashpot along each structural edge.
void damping_forces(const NetState& net, const NetTopology& topo, double damping,
                    ForceBuffer& forces);

// Iterative mass-weighted distance projection for InextensibleEdges.
// Positions are corrected in place; velocities receive the position change
// over dt so the substep stays consistent.
void project_inextensible(NetState& net, const NetTopology& topo, int iterations, double dt);

double max_edge_strain(const NetState& net, const NetTopology& topo);

// Energies matching the force operators above (finite-difference oracles
// and diagnostics).
double edge_spring_energy(const NetState& net, const NetTopology& topo, double stiffness);
double bending_energy(const NetState& net, const NetTopology& topo, double bending_stiffness);
double stvk_energy(const NetState& net, const NetTopology& topo, const ElasticParams& params);

}  // namespace netsim
