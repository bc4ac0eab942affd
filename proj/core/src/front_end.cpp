#include "wavebench/front_end.hpp"

#include <cmath>

#include "wavebench/error.hpp"

namespace wavebench {

void FrontEndConfig::validate() const {
  require(rows >= 1 && cols >= 1, "aperture rows and cols must be >= 1");
  require(element_spacing_wl > 0.0, "element spacing must be positive");
  require(rf_chains >= 1, "rf_chains must be >= 1");
  require(feed_spacing_wl > 0.0, "feed spacing must be positive");
  require(feed_distance_wl > 0.0, "feed distance must be positive");
  require(sim_layers >= 1, "sim_layers must be >= 1");
  require(sim_layer_spacing_wl > 0.0, "sim layer spacing must be positive");
}

std::pair<int, int> feed_grid(int k) {
  require(k >= 1, "k must be >= 1");
  int r = static_cast<int>(std::sqrt(static_cast<double>(k)));
  while (k % r != 0) --r;
  return {r, k / r};
}

std::vector<ArchitectureSpec> FrontEnd::architectures() const {
  const int m = config.aperture_size();
  const int k = config.rf_chains;
  return {
      ArchitectureSpec::digital(m),
      ArchitectureSpec::milac(m, k),
      ArchitectureSpec::hybrid(m, k),
      ArchitectureSpec::bdris(m, m, k, BdrisTopology::Full),
      ArchitectureSpec::bdris(m, m, k, BdrisTopology::Tree),
      ArchitectureSpec::sim(m, k, config.sim_layers, config.sim_layer_spacing_wl * carrier.wavelength),
  };
}

FrontEnd build_front_end(const FrontEndConfig& config, const CarrierConfig& carrier) {
  config.validate();
  carrier.validate();
  const double lambda = carrier.wavelength;
  const Vec3 axis = Vec3::UnitX();
  const auto [feed_rows, feed_cols] = feed_grid(config.rf_chains);
  ArrayGeometry feed =
      make_planar_array(feed_rows, feed_cols, config.feed_spacing_wl * lambda, Vec3::Zero(), axis);
  const Vec3 aperture_center = config.feed_distance_wl * lambda * axis;
  ArrayGeometry aperture = make_planar_array(config.rows, config.cols,
                                             config.element_spacing_wl * lambda, aperture_center, axis);
  CouplingMatrix coupling = near_field_coupling(feed, aperture, carrier);
  if (config.passive_normalization) coupling = normalize_passive(coupling);

  std::vector<ArrayGeometry> layers;
  for (int l = 0; l < config.sim_layers; ++l) {
    // The last layer is the environment-facing aperture itself.
    const double back = (config.sim_layers - 1 - l) * config.sim_layer_spacing_wl * lambda;
    layers.push_back(aperture.translated(-back * axis));
  }
  SimStack stack = make_sim_stack(feed, layers, carrier, config.passive_normalization);

  return FrontEnd{config,           carrier, std::move(feed), std::move(aperture), std::move(coupling),
                  std::move(layers), std::move(stack)};
}

namespace {

void check_spec(const ArchitectureSpec& spec, const FrontEnd& fe) {
  spec.validate();
  if (spec.M != fe.config.aperture_size()) {
    fail(ErrorCode::DimensionMismatch, "architecture M does not match the front-end aperture");
  }
  if (spec.kind == ArchitectureKind::Sim && spec.L != fe.sim.layers()) {
    fail(ErrorCode::DimensionMismatch, "architecture L does not match the front-end SIM stack");
  }
  if (spec.kind == ArchitectureKind::Bdris && spec.N != fe.feed_coupling.entries.rows()) {
    fail(ErrorCode::DimensionMismatch, "architecture N does not match the front-end BD-RIS");
  }
}

}  // namespace

BeamSolution configure_for_user(const ArchitectureSpec& spec, const FrontEnd& fe, const CVector& h,
                                const OptimizerOptions& options) {
  check_spec(spec, fe);
  switch (spec.kind) {
    case ArchitectureKind::Digital:
      return digital_precoder(h.transpose());
    case ArchitectureKind::Milac:
      return milac_precoder(h.transpose());
    case ArchitectureKind::Hybrid:
      return hybrid_precoder(h);
    case ArchitectureKind::Bdris:
      if (spec.topology == BdrisTopology::Full) {
        return bdris_full_configure(fe.feed_coupling.entries, h);
      }
      return bdris_tree_configure(fe.feed_coupling.entries, h, fe.config.tree_shape, fe.carrier,
                                  options);
    case ArchitectureKind::Sim:
      return sim_configure(fe.sim, h, options);
  }
  fail(ErrorCode::InvalidArgument, "unknown architecture");
}

CVector realizable_sweep_beam(const ArchitectureSpec& spec, const CVector& codeword,
                              const FrontEnd& fe, const OptimizerOptions& options) {
  check_spec(spec, fe);
  require(codeword.size() == spec.M, "codeword must have M entries");
  for (Eigen::Index m = 0; m < codeword.size(); ++m) {
    require(std::abs(std::abs(codeword[m]) - 1.0) <= 1e-9, "codeword must be unit-modulus");
  }
  switch (spec.kind) {
    case ArchitectureKind::Digital:
    case ArchitectureKind::Milac:
    case ArchitectureKind::Hybrid:
      return codeword / std::sqrt(static_cast<double>(spec.M));
    case ArchitectureKind::Bdris:
    case ArchitectureKind::Sim:
      // The radiated field towards c is c^H x = conj(c)^T x.
      return configure_for_user(spec, fe, codeword.conjugate(), options).effective_beam;
  }
  fail(ErrorCode::InvalidArgument, "unknown architecture");
}

}  // namespace wavebench
