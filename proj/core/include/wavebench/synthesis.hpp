#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "wavebench/propagation.hpp"
#include "wavebench/tree_network.hpp"
#include "wavebench/types.hpp"

namespace wavebench {

enum class ArchitectureKind { Digital, Hybrid, Milac, Sim, Bdris };
enum class BdrisTopology { Full, Tree };

/// One transceiver architecture and its tunable-parameter counts.
///   M  environment-facing elements
///   N  antenna-facing BD-RIS elements (bdris only)
///   K  RF chains
///   L  SIM layers (sim only)
struct ArchitectureSpec {
  ArchitectureKind kind = ArchitectureKind::Digital;
  int M = 1;
  int N = 0;
  int K = 1;
  int L = 0;
  BdrisTopology topology = BdrisTopology::Full;
  double layer_spacing = 0.0;  // meters, sim only

  static ArchitectureSpec digital(int m);
  static ArchitectureSpec milac(int m, int k);
  static ArchitectureSpec hybrid(int m, int k);
  static ArchitectureSpec sim(int m, int k, int l, double layer_spacing);
  static ArchitectureSpec bdris(int m, int n, int k, BdrisTopology topology);

  void validate() const;
  /// CSV label: digital, milac, hybrid, sim, bdris_full, bdris_tree.
  std::string name() const;

  friend bool operator==(const ArchitectureSpec&, const ArchitectureSpec&) = default;
};

struct DigitalConfig {};

/// Output of the microwave network for the transmitted stream.
struct MilacConfig {
  CVector network_output;
};

/// Unit-modulus phase payload: one vector for hybrid, one per layer for SIM.
struct PhaseConfig {
  std::vector<CVector> layers;
};

/// Transmission block of a fully connected BD-RIS.
struct TransmissionConfig {
  CMatrix transmission;
};

/// Tree-connected BD-RIS: the reciprocal network and the transmission
/// block it realizes.
struct TreeConfig {
  TreeNetwork network;
  CMatrix transmission;
};

using AnalogConfig =
    std::variant<DigitalConfig, MilacConfig, PhaseConfig, TransmissionConfig, TreeConfig>;

struct BeamSolution {
  CVector feed;
  AnalogConfig analog;
  CVector effective_beam;
  double gain = 0.0;
  /// Objective after every accepted optimizer step (iterative configurators only).
  std::vector<double> history;
};

struct OptimizerOptions {
  int budget = 500;
  int restarts = 4;
  std::uint64_t seed = 0;
};

/// Feed = dominant right singular vector of H, gain = sigma_max(H).
BeamSolution digital_precoder(const CMatrix& channel);

/// MiLAC realizes any linear precoder, so it inherits the digital optimum.
BeamSolution milac_precoder(const CMatrix& channel);

/// Phase-only conjugate beam w_m = exp(-j arg h_m) / sqrt(M) for the
/// received sample h^T w; gain = sum |h_m| / sqrt(M).
BeamSolution hybrid_precoder(const CVector& h);

/// Fully connected transmissive BD-RIS with feasible set sigma_max(T) <= 1.
/// The rank-one T = u v^H with u = conj(h)/|h|, v = G f / |G f| attains the
/// bound |h| sigma_max(G).
BeamSolution bdris_full_configure(const CMatrix& coupling, const CVector& h);

/// Tree-connected BD-RIS. With f fixed to the dominant right singular vector
/// of G, every susceptance is updated in turn by a golden-section search of
/// |h^T T(b) G f|; `budget` caps the number of full sweeps and the best of
/// `restarts` seeded random starts is returned.
BeamSolution bdris_tree_configure(const CMatrix& coupling, const CVector& h, TreeShape shape,
                                  const CarrierConfig& carrier, const OptimizerOptions& options);

/// |h^T T G f|.
double end_to_end_gain(const CVector& h, const CMatrix& transmission, const CMatrix& coupling,
                       const CVector& feed);

/// Shape misfit of a realized beam against a target codeword:
/// min_alpha |beam - alpha c| / |beam|.
double beam_fit_residual(const CVector& beam, const CVector& codeword);

}  // namespace wavebench
