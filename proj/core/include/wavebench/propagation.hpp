#pragma once

#include <cstdint>
#include <variant>

#include "wavebench/geometry.hpp"

namespace wavebench {

/// Near-field channel from a transmitting aperture to a receiving one.
/// entries is rx.size() x tx.size().
struct CouplingMatrix {
  CMatrix entries;
  ArrayGeometry tx;
  ArrayGeometry rx;
  /// Scale applied by normalize_passive (1 when untouched).
  double passive_factor = 1.0;
};

struct LineOfSight {
  Complex gain{1.0, 0.0};
};

/// Line-of-sight component plus `path_count` planar scattered paths with
/// CN(0, 1/path_count) gains. k_factor is linear (LoS / scattered power).
struct Rician {
  double k_factor = 3.1622776601683795;  // 5 dB
  int path_count = 4;
};

using ChannelModel = std::variant<LineOfSight, Rician>;

void validate(const ChannelModel& model);

/// Channel from the environment-facing aperture to a single-antenna user;
/// the received sample is gains^T x for aperture excitation x.
struct UserChannel {
  CVector gains;
  ChannelModel model;
  std::uint64_t seed = 0;
};

/// Rayleigh-Sommerfeld coupling. Entry (m, n) is
///   A_t cos(chi) / d * (1 / (2 pi d) - j / lambda) * exp(j 2 pi d / lambda)
/// with d the distance from tx element n to rx element m and chi the angle
/// between the tx normal and the link.
CouplingMatrix near_field_coupling(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                   const CarrierConfig& carrier);

struct PassiveScaling {
  CMatrix matrix;
  double factor = 1.0;
};

/// Scales g by 1 / sigma_max(g) when sigma_max(g) > 1. The result is
/// guaranteed to have a computed spectral norm <= 1.
PassiveScaling normalize_passive(const CMatrix& g);
CouplingMatrix normalize_passive(const CouplingMatrix& g);

/// Deterministic for a fixed seed. Scattered path directions are drawn with
/// azimuth in [-pi/2, pi/2] and elevation in [-pi/4, pi/4].
UserChannel user_channel(const ArrayGeometry& env_aperture, Direction dir,
                         const CarrierConfig& carrier, const ChannelModel& model,
                         std::uint64_t seed);

/// h^T T G f for h (M), T (M x N), G (N x K), f (K).
Complex cascade_gain(const CVector& h, const CMatrix& transmission, const CMatrix& coupling,
                     const CVector& feed);

}  // namespace wavebench
