#pragma once

#include <vector>

#include "wavebench/propagation.hpp"
#include "wavebench/sim.hpp"
#include "wavebench/synthesis.hpp"
#include "wavebench/tree_network.hpp"

namespace wavebench {

/// Physical layout shared by the architectures under comparison. Lengths
/// are in wavelengths. The feed array (K antennas) sits on the aperture
/// axis at `feed_distance_wl` behind the M-element environment-facing
/// aperture, which is also the BD-RIS (N = M) and the last SIM layer. The
/// other SIM layers sit behind it, `sim_layer_spacing_wl` apart.
struct FrontEndConfig {
  int rows = 9;
  int cols = 9;
  double element_spacing_wl = 0.5;
  int rf_chains = 4;
  double feed_spacing_wl = 1.0;
  double feed_distance_wl = 5.0;
  int sim_layers = 3;
  double sim_layer_spacing_wl = 0.5;
  TreeShape tree_shape = TreeShape::Path;
  bool passive_normalization = true;

  int aperture_size() const { return rows * cols; }
  void validate() const;

  friend bool operator==(const FrontEndConfig&, const FrontEndConfig&) = default;
};

/// Near-square rows x cols factorization of k used for the feed array.
std::pair<int, int> feed_grid(int k);

struct FrontEnd {
  FrontEndConfig config;
  CarrierConfig carrier;
  ArrayGeometry feed;
  ArrayGeometry aperture;
  /// Antenna -> BD-RIS coupling (N x K), passive-normalized when configured.
  CouplingMatrix feed_coupling;
  std::vector<ArrayGeometry> sim_layers;
  SimStack sim;

  /// The architectures this front end can host, in CSV order:
  /// digital, milac, hybrid, bdris_full, bdris_tree, sim.
  std::vector<ArchitectureSpec> architectures() const;
};

FrontEnd build_front_end(const FrontEndConfig& config, const CarrierConfig& carrier);

/// Configures `spec` for a single user with channel h over the aperture.
BeamSolution configure_for_user(const ArchitectureSpec& spec, const FrontEnd& front_end,
                                const CVector& h, const OptimizerOptions& options);

/// Beam the architecture actually radiates when asked for unit-modulus
/// codeword c: c / sqrt(M) for digital, milac and hybrid; otherwise the
/// configuration maximizing the projection onto c.
CVector realizable_sweep_beam(const ArchitectureSpec& spec, const CVector& codeword,
                              const FrontEnd& front_end, const OptimizerOptions& options);

}  // namespace wavebench
