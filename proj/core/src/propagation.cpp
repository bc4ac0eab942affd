#include "wavebench/propagation.hpp"

#include <cmath>
#include <limits>

#include "wavebench/error.hpp"
#include "wavebench/linalg.hpp"
#include "wavebench/random.hpp"

namespace wavebench {

void validate(const ChannelModel& model) {
  if (const auto* r = std::get_if<Rician>(&model)) {
    require(!std::isnan(r->k_factor) && r->k_factor >= 0.0, "rician k-factor must be >= 0");
    require(r->path_count >= 1, "rician path count must be >= 1");
  } else {
    const auto& los = std::get<LineOfSight>(model);
    require(std::isfinite(los.gain.real()) && std::isfinite(los.gain.imag()),
            "line-of-sight gain must be finite");
  }
}

CouplingMatrix near_field_coupling(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                   const CarrierConfig& carrier) {
  carrier.validate();
  const double lambda = carrier.wavelength;
  const double k = carrier.wavenumber();
  const double area = tx.element_area();
  CMatrix g(rx.size(), tx.size());
  for (Eigen::Index n = 0; n < tx.size(); ++n) {
    const Vec3 pt = tx.position(n);
    for (Eigen::Index m = 0; m < rx.size(); ++m) {
      const Vec3 link = rx.position(m) - pt;
      const double d = link.norm();
      if (!(d > 1e-12 * lambda)) {
        fail(ErrorCode::Singularity, "coincident tx/rx elements (d = 0) at tx " +
                                         std::to_string(n) + ", rx " + std::to_string(m));
      }
      const double cos_chi = tx.normal().dot(link) / d;
      const Complex radial = Complex(1.0 / (2.0 * kPi * d), -1.0 / lambda);
      g(m, n) = (area * cos_chi / d) * radial * std::polar(1.0, k * d);
    }
  }
  return CouplingMatrix{std::move(g), tx, rx, 1.0};
}

PassiveScaling normalize_passive(const CMatrix& g) {
  require(g.allFinite(), "matrix must be finite");
  const double sigma = spectral_norm(g);
  if (!(sigma > 1.0)) return {g, 1.0};
  double factor = 1.0 / sigma;
  CMatrix scaled = g * factor;
  // Guard against the rescaled norm rounding to just above one.
  while (spectral_norm(scaled) > 1.0) {
    factor = std::nextafter(factor, 0.0);
    scaled = g * factor;
  }
  return {std::move(scaled), factor};
}

CouplingMatrix normalize_passive(const CouplingMatrix& g) {
  PassiveScaling s = normalize_passive(g.entries);
  return CouplingMatrix{std::move(s.matrix), g.tx, g.rx, g.passive_factor * s.factor};
}

UserChannel user_channel(const ArrayGeometry& env_aperture, Direction dir,
                         const CarrierConfig& carrier, const ChannelModel& model,
                         std::uint64_t seed) {
  validate(model);
  dir.validate();
  UserChannel out{CVector(), model, seed};
  if (const auto* los = std::get_if<LineOfSight>(&model)) {
    out.gains = los->gain * steering_vector(env_aperture, dir, carrier);
    return out;
  }
  const auto& rician = std::get<Rician>(model);
  Rng rng = make_rng(seed);
  CVector scattered = CVector::Zero(env_aperture.size());
  for (int p = 0; p < rician.path_count; ++p) {
    const Direction path{uniform(rng, -kPi / 2, kPi / 2), uniform(rng, -kPi / 4, kPi / 4)};
    const Complex gamma = complex_normal(rng, 1.0 / rician.path_count);
    scattered += gamma * steering_vector(env_aperture, path, carrier);
  }
  // Written so that k = 0 and k = inf need no special casing.
  const double los_weight = 1.0 / std::sqrt(1.0 + 1.0 / rician.k_factor);
  const double nlos_weight = 1.0 / std::sqrt(1.0 + rician.k_factor);
  out.gains = los_weight * steering_vector(env_aperture, dir, carrier) + nlos_weight * scattered;
  return out;
}

Complex cascade_gain(const CVector& h, const CMatrix& transmission, const CMatrix& coupling,
                     const CVector& feed) {
  if (transmission.rows() != h.size() || transmission.cols() != coupling.rows() ||
      coupling.cols() != feed.size()) {
    fail(ErrorCode::DimensionMismatch, "cascade h^T T G f dimensions do not chain");
  }
  const CVector beam = transmission * (coupling * feed);
  return h.cwiseProduct(beam).sum();
}

}  // namespace wavebench
