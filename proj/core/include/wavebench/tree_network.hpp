#pragma once

#include <utility>
#include <vector>

#include "wavebench/geometry.hpp"
#include "wavebench/types.hpp"

namespace wavebench {

enum class TreeShape { Path, Star };

/// Reciprocal lossless network whose graph is a spanning tree over the
/// N + M BD-RIS ports. Ports [0, N) face the antennas, [N, N + M) face the
/// environment.
struct TreeNetwork {
  int antenna_ports = 0;
  int env_ports = 0;
  std::vector<std::pair<int, int>> edges;
  RVector edge_susceptances;   // siemens, one per edge
  RVector shunt_susceptances;  // siemens, one per port

  int port_count() const { return antenna_ports + env_ports; }
  /// Throws unless the edges form a spanning tree and all values are finite.
  void validate() const;
};

/// Zero-susceptance tree. Path alternates antenna/environment ports
/// (a0 e0 a1 e1 ...) and appends whatever is left; Star hangs every port
/// off port 0.
TreeNetwork make_tree(int antenna_ports, int env_ports, TreeShape shape);

/// Nodal susceptance matrix: edge Laplacian plus diagonal shunts.
Eigen::MatrixXd nodal_susceptance(const TreeNetwork& net);

struct Scattering {
  CMatrix s;             // (N+M) x (N+M)
  CMatrix transmission;  // M x N, antenna ports -> environment ports
};

/// S = (I - Z0 Y)(I + Z0 Y)^-1 with Y = jB.
Scattering tree_scattering(const TreeNetwork& net, const CarrierConfig& carrier);

/// O(P) solver for (I + j Z0 B) x = r on a tree, by leaf-to-root
/// elimination. The matrix is complex symmetric. The topology is fixed at
/// construction; factor() refreshes the numeric values.
class TreeSolver {
 public:
  TreeSolver(const TreeNetwork& net, double reference_impedance);

  /// Re-factors for the susceptances currently in `net` (same topology).
  void factor(const TreeNetwork& net);
  CVector solve(const CVector& rhs) const;

 private:
  double z0_;
  std::vector<int> order_;        // BFS order from port 0
  std::vector<int> parent_;
  std::vector<int> parent_edge_;  // edge index to parent, -1 for the root
  std::vector<std::vector<int>> incident_edges_;
  std::vector<Complex> coupling_to_parent_;  // A(i, parent(i))
  std::vector<Complex> pivot_;
  std::vector<Complex> inv_pivot_;
};

}  // namespace wavebench
