#pragma once

#include <vector>

#include "wavebench/propagation.hpp"
#include "wavebench/synthesis.hpp"

namespace wavebench {

/// Stacked intelligent metasurface. The aperture excitation for phases
/// phi_1..phi_L and feed f is
///   x = Phi_L W_{L-1} Phi_{L-1} ... W_1 Phi_1 G0 f
/// where G0 (M x K) couples the antennas into the first layer and W_l
/// (M x M) couples layer l into layer l + 1.
struct SimStack {
  CMatrix feed_coupling;
  std::vector<CMatrix> inter_layer;

  int layers() const { return static_cast<int>(inter_layer.size()) + 1; }
  Eigen::Index elements() const { return feed_coupling.rows(); }
  Eigen::Index rf_chains() const { return feed_coupling.cols(); }
  void validate() const;
};

using LayerPhases = std::vector<CVector>;

/// Builds G0 and the inter-layer couplings from geometry, normalizing each
/// to be passive when `passive` is set.
SimStack make_sim_stack(const ArrayGeometry& feed, const std::vector<ArrayGeometry>& layers,
                        const CarrierConfig& carrier, bool passive = true);

/// x for the given phases and feed.
CVector sim_beam(const SimStack& stack, const LayerPhases& phases, const CVector& feed);

/// Composite row c with h^T x = c f, returned as a K-vector.
CVector sim_composite(const SimStack& stack, const CVector& h, const LayerPhases& phases);

/// |h^T x|^2.
double sim_objective(const SimStack& stack, const CVector& h, const LayerPhases& phases,
                     const CVector& feed);

/// Euclidean gradient of sim_objective with respect to each phase entry,
/// packed as dJ/dRe + j dJ/dIm.
LayerPhases sim_gradient(const SimStack& stack, const CVector& h, const LayerPhases& phases,
                         const CVector& feed);

struct SimAscentOptions {
  OptimizerOptions optimizer;
  /// Largest per-element move of the first trial step; halved on failure.
  double step = 2.0;
  int max_backtracks = 30;
};

/// Projected gradient ascent on the unit circle. Each iteration moves
/// along the gradient, projects every entry back to unit modulus, halves
/// the step until the objective improves, then re-optimizes the feed as the
/// dominant right singular vector of the composite channel.
BeamSolution sim_configure(const SimStack& stack, const CVector& h, const SimAscentOptions& options);
BeamSolution sim_configure(const SimStack& stack, const CVector& h, const OptimizerOptions& options);

}  // namespace wavebench
