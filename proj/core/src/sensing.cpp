#include "wavebench/sensing.hpp"

#include <algorithm>
#include <cmath>

#include "wavebench/error.hpp"
#include "wavebench/parallel.hpp"

namespace wavebench {

SweepCodebook make_sweep_codebook(const ArrayGeometry& geom, int count, double sector_min,
                                  double sector_max, const CarrierConfig& carrier) {
  require(count >= 2, "codebook needs at least two codewords");
  require(sector_max > sector_min, "sweep sector must be non-empty");
  SweepCodebook cb;
  cb.codewords.reserve(count);
  cb.beam_angles.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double az = sector_min + (sector_max - sector_min) * i / (count - 1);
    cb.beam_angles.push_back(az);
    cb.codewords.push_back(steering_vector(geom, {az, 0.0}, carrier));
  }
  return cb;
}

CVector beam_responses(const ArrayGeometry& geom, const std::vector<CVector>& beams, Direction dir,
                       const CarrierConfig& carrier) {
  const CVector a = steering_vector(geom, dir, carrier);
  CVector v(static_cast<Eigen::Index>(beams.size()));
  for (std::size_t i = 0; i < beams.size(); ++i) {
    if (beams[i].size() != a.size()) fail(ErrorCode::DimensionMismatch, "beam length must be M");
    v[static_cast<Eigen::Index>(i)] = a.dot(beams[i]);
  }
  return v;
}

CVector observe(const SensingTarget& target, const std::vector<CVector>& beams,
                const ArrayGeometry& geom, const CarrierConfig& carrier, double noise_variance,
                Rng& rng) {
  require(noise_variance >= 0.0, "noise variance must be >= 0");
  CVector y = target.beta * beam_responses(geom, beams, target.aod, carrier);
  if (noise_variance > 0.0) {
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += complex_normal(rng, noise_variance);
  }
  return y;
}

AodEstimator::AodEstimator(const ArrayGeometry& geom, std::vector<CVector> beams,
                           const CarrierConfig& carrier, double grid_min, double grid_max,
                           double grid_resolution)
    : geom_(geom), beams_(std::move(beams)), carrier_(carrier), resolution_(grid_resolution) {
  require(beams_.size() >= 2, "estimator needs at least two measurements");
  require(grid_resolution > 0.0, "grid resolution must be positive");
  require(grid_max > grid_min, "estimation grid must be non-empty");
  const auto points = static_cast<Eigen::Index>(std::floor((grid_max - grid_min) / grid_resolution + 1e-9)) + 1;
  grid_.reserve(static_cast<std::size_t>(points));
  for (Eigen::Index g = 0; g < points; ++g) grid_.push_back(grid_min + g * grid_resolution);

  normalized_.resize(points, static_cast<Eigen::Index>(beams_.size()));
  bool observable = false;
  for (Eigen::Index g = 0; g < points; ++g) {
    const CVector v = beam_responses(geom_, beams_, {grid_[g], 0.0}, carrier_);
    const double n = v.norm();
    if (n > 0.0) {
      normalized_.row(g) = v.adjoint() / n;
      observable = true;
    } else {
      normalized_.row(g).setZero();
    }
  }
  if (!observable) fail(ErrorCode::Unobservable, "v(theta) vanishes over the whole grid");
}

double AodEstimator::score_at(double azimuth, const CVector& y) const {
  const CVector v = beam_responses(geom_, beams_, {azimuth, 0.0}, carrier_);
  const double n2 = v.squaredNorm();
  return n2 > 0.0 ? std::norm(v.dot(y)) / n2 : 0.0;
}

double AodEstimator::refine(Eigen::Index peak, const RVector& scores, const CVector& y) const {
  const double theta = grid_[peak];
  if (peak == 0 || peak + 1 >= static_cast<Eigen::Index>(grid_.size())) return theta;
  const double left = scores[peak - 1];
  const double mid = scores[peak];
  const double right = scores[peak + 1];
  const double curvature = left - 2.0 * mid + right;
  if (!(curvature < 0.0)) return theta;
  const double offset = std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
  const double refined = theta + offset * resolution_;
  return score_at(refined, y) > mid ? refined : theta;
}

double AodEstimator::estimate(const CVector& y) const {
  if (y.size() != static_cast<Eigen::Index>(beams_.size())) {
    fail(ErrorCode::DimensionMismatch, "measurement count must match beam count");
  }
  const RVector scores = (normalized_ * y).cwiseAbs2();
  Eigen::Index peak = 0;
  scores.maxCoeff(&peak);
  return refine(peak, scores, y);
}

std::vector<double> AodEstimator::estimate_batch(const CMatrix& ys) const {
  if (ys.rows() != static_cast<Eigen::Index>(beams_.size())) {
    fail(ErrorCode::DimensionMismatch, "measurement count must match beam count");
  }
  const Eigen::MatrixXd scores = (normalized_ * ys).cwiseAbs2();
  std::vector<double> out(static_cast<std::size_t>(ys.cols()));
  for (Eigen::Index c = 0; c < ys.cols(); ++c) {
    Eigen::Index peak = 0;
    scores.col(c).maxCoeff(&peak);
    out[static_cast<std::size_t>(c)] = refine(peak, scores.col(c), ys.col(c));
  }
  return out;
}

Direction mle_aod(const CVector& y, const std::vector<CVector>& beams, const ArrayGeometry& geom,
                  const CarrierConfig& carrier, double grid_resolution, double sector_min,
                  double sector_max) {
  const AodEstimator est(geom, beams, carrier, sector_min, sector_max, grid_resolution);
  return {est.estimate(y), 0.0};
}

Eigen::Matrix3d fisher_information(const ArrayGeometry& geom, const std::vector<CVector>& beams,
                                   Complex beta, double snr_linear, Direction true_aod,
                                   const CarrierConfig& carrier) {
  require(snr_linear > 0.0, "snr must be positive");
  require(std::abs(beta) > 0.0, "beta must be nonzero");
  const CVector da = steering_azimuth_derivative(geom, true_aod, carrier);
  const CVector v = beam_responses(geom, beams, true_aod, carrier);
  CVector dv(v.size());
  for (std::size_t i = 0; i < beams.size(); ++i) dv[static_cast<Eigen::Index>(i)] = da.dot(beams[i]);

  Eigen::Matrix<Complex, Eigen::Dynamic, 3> jac(v.size(), 3);
  jac.col(0) = beta * dv;
  jac.col(1) = v;
  jac.col(2) = kJ * v;
  const Eigen::Matrix3d gram = (jac.adjoint() * jac).real();
  return (2.0 * snr_linear) * gram;
}

double crb_aod(const ArrayGeometry& geom, const std::vector<CVector>& beams, Complex beta,
               double snr_linear, Direction true_aod, const CarrierConfig& carrier) {
  const Eigen::Matrix3d fim = fisher_information(geom, beams, beta, snr_linear, true_aod, carrier);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(fim);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) fail(ErrorCode::UnidentifiableGeometry, "singular Fisher information");
  // Cofactor inverse: exact under power-of-two scaling of the FIM.
  const Eigen::Matrix3d inv = fim.inverse();
  return inv(0, 0);
}

void SensingScenario::validate() const {
  front_end.validate();
  carrier.validate();
  target.aod.validate();
  require(codebook_size >= 2, "codebook size must be >= 2");
  require(sector > 0.0 && sector <= kPi / 2, "sector must lie in (0, pi/2]");
  require(std::abs(target.aod.azimuth) <= sector && target.aod.elevation == 0.0,
          "true AoD must lie inside the swept azimuth sector");
  require(std::abs(target.beta) > 0.0, "beta must be nonzero");
  require(trials >= 1, "trials must be >= 1");
  require(!snr_grid_db.empty(), "snr grid must be non-empty");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
    require(snr_grid_db[i] > snr_grid_db[i - 1], "snr grid must be strictly increasing");
  }
  require(grid_resolution > 0.0, "grid resolution must be positive");
  for (const auto& s : specs) s.validate();
}

std::vector<ArchitectureSpec> selected_specs(const SensingScenario& scenario, const FrontEnd& fe) {
  if (!scenario.specs.empty()) return scenario.specs;
  std::vector<ArchitectureSpec> out;
  for (const auto& s : fe.architectures()) {
    if (!(s.kind == ArchitectureKind::Bdris && s.topology == BdrisTopology::Tree)) out.push_back(s);
  }
  return out;
}

std::vector<CVector> realize_codebook(const ArchitectureSpec& spec, const SweepCodebook& codebook,
                                      const FrontEnd& fe, const OptimizerOptions& options) {
  std::vector<CVector> beams(codebook.codewords.size());
  parallel_for(beams.size(), [&](std::size_t i) {
    OptimizerOptions o = options;
    o.seed = mix_seed(options.seed ^ mix_seed(0x5357ULL + i));
    beams[i] = realizable_sweep_beam(spec, codebook.codewords[i], fe, o);
  });
  return beams;
}

ExperimentResult run_sensing_experiment(const SensingScenario& scenario) {
  return run_sensing_experiment(scenario, build_front_end(scenario.front_end, scenario.carrier));
}

ExperimentResult run_sensing_experiment(const SensingScenario& scenario, const FrontEnd& fe) {
  scenario.validate();
  const auto specs = selected_specs(scenario, fe);
  const SweepCodebook codebook =
      make_sweep_codebook(fe.aperture, scenario.codebook_size, -scenario.sector, scenario.sector, fe.carrier);
  const double theta0 = scenario.target.aod.azimuth;

  // Unit-variance noise draws shared by every architecture: column t of
  // noise[s] is trial t at SNR index s.
  const auto beams_count = static_cast<Eigen::Index>(codebook.codewords.size());
  std::vector<CMatrix> noise(scenario.snr_grid_db.size());
  for (std::size_t s = 0; s < noise.size(); ++s) {
    noise[s].resize(beams_count, scenario.trials);
    for (int t = 0; t < scenario.trials; ++t) {
      Rng rng = make_rng(scenario.seed, {0x73656eULL, s, static_cast<std::uint64_t>(t)});
      for (Eigen::Index i = 0; i < beams_count; ++i) noise[s](i, t) = complex_normal(rng, 1.0);
    }
  }

  ExperimentResult result;
  result.attempted_trials = scenario.trials;
  OptimizerOptions options = scenario.optimizer;
  options.seed = mix_seed(scenario.seed ^ 0x7377ULL);
  for (const auto& spec : specs) {
    const auto beams = realize_codebook(spec, codebook, fe, options);
    const AodEstimator estimator(fe.aperture, beams, fe.carrier, -scenario.sector, scenario.sector,
                                 scenario.grid_resolution);
    const CVector clean = scenario.target.beta * beam_responses(fe.aperture, beams, scenario.target.aod, fe.carrier);
    for (std::size_t s = 0; s < scenario.snr_grid_db.size(); ++s) {
      const double snr_db = scenario.snr_grid_db[s];
      const double snr = std::pow(10.0, snr_db / 10.0);
      const double sigma = std::sqrt(1.0 / snr);
      const CMatrix ys = (sigma * noise[s]).colwise() + clean;
      const auto estimates = estimator.estimate_batch(ys);
      std::vector<double> err(estimates.size());
      std::vector<double> sq(estimates.size());
      for (std::size_t t = 0; t < estimates.size(); ++t) {
        err[t] = estimates[t] - theta0;
        sq[t] = err[t] * err[t];
      }
      const double rmse = std::sqrt(pairwise_sum(sq.data(), sq.size()) / static_cast<double>(sq.size()));
      const double crb = crb_aod(fe.aperture, beams, scenario.target.beta, snr, scenario.target.aod, fe.carrier);
      result.rows.push_back(
          ResultRow{spec.name(), snr_db, rmse, moments(err).stddev, scenario.trials, std::sqrt(crb)});
    }
  }
  return result;
}

}  // namespace wavebench
