#pragma once

#include <cstdint>
#include <vector>

#include "wavebench/experiment.hpp"
#include "wavebench/front_end.hpp"
#include "wavebench/random.hpp"

namespace wavebench {

struct SweepCodebook {
  std::vector<CVector> codewords;
  std::vector<double> beam_angles;  // azimuth, radians
};

/// Steering vectors at `count` uniformly spaced azimuths over
/// [sector_min, sector_max] (elevation 0), endpoints included.
SweepCodebook make_sweep_codebook(const ArrayGeometry& geom, int count, double sector_min,
                                  double sector_max, const CarrierConfig& carrier);

/// Single far-field target.
struct SensingTarget {
  Direction aod;
  Complex beta{1.0, 0.0};
};

/// v_i(theta) = a(theta)^H beam_i.
CVector beam_responses(const ArrayGeometry& geom, const std::vector<CVector>& beams,
                       Direction dir, const CarrierConfig& carrier);

/// y_i = beta v_i(theta) + n_i, n_i ~ CN(0, noise_variance).
CVector observe(const SensingTarget& target, const std::vector<CVector>& beams,
                const ArrayGeometry& geom, const CarrierConfig& carrier, double noise_variance,
                Rng& rng);

/// Grid maximum-likelihood azimuth estimator with beta concentrated out:
/// argmax |v(theta)^H y|^2 / |v(theta)|^2, followed by one parabolic step
/// that is kept only when it raises the likelihood.
class AodEstimator {
 public:
  AodEstimator(const ArrayGeometry& geom, std::vector<CVector> beams, const CarrierConfig& carrier,
               double grid_min, double grid_max, double grid_resolution);

  double estimate(const CVector& y) const;
  /// One estimate per column of `ys`.
  std::vector<double> estimate_batch(const CMatrix& ys) const;

  const std::vector<double>& grid() const { return grid_; }

 private:
  double score_at(double azimuth, const CVector& y) const;
  double refine(Eigen::Index peak, const RVector& scores, const CVector& y) const;

  ArrayGeometry geom_;
  std::vector<CVector> beams_;
  CarrierConfig carrier_;
  std::vector<double> grid_;
  double resolution_;
  CMatrix normalized_;  // row g: conj(v(theta_g))^T / |v(theta_g)|
};

Direction mle_aod(const CVector& y, const std::vector<CVector>& beams, const ArrayGeometry& geom,
                  const CarrierConfig& carrier, double grid_resolution, double sector_min,
                  double sector_max);

/// Three-parameter deterministic CRB (theta, Re beta, Im beta) for noise
/// variance 1 / snr_linear. Returns the (theta, theta) entry in rad^2.
double crb_aod(const ArrayGeometry& geom, const std::vector<CVector>& beams, Complex beta,
               double snr_linear, Direction true_aod, const CarrierConfig& carrier);

/// 3 x 3 Fisher information in (theta, Re beta, Im beta).
Eigen::Matrix3d fisher_information(const ArrayGeometry& geom, const std::vector<CVector>& beams,
                                   Complex beta, double snr_linear, Direction true_aod,
                                   const CarrierConfig& carrier);

struct SensingScenario {
  FrontEndConfig front_end;
  CarrierConfig carrier;
  std::vector<ArchitectureSpec> specs;  // empty: digital, milac, hybrid, bdris_full, sim
  SensingTarget target{{deg_to_rad(20.0), 0.0}, {1.0, 0.0}};
  int codebook_size = 64;
  double sector = deg_to_rad(60.0);  // sweep and search over [-sector, sector]
  std::vector<double> snr_grid_db{-10, -5, 0, 5, 10, 15, 20, 25, 30};
  int trials = 500;
  std::uint64_t seed = 1;
  double grid_resolution = deg_to_rad(0.05);
  OptimizerOptions optimizer;

  void validate() const;
};

std::vector<ArchitectureSpec> selected_specs(const SensingScenario& scenario, const FrontEnd& fe);

/// Realized beams for every codeword; optimizer seeds are derived per codeword.
std::vector<CVector> realize_codebook(const ArchitectureSpec& spec, const SweepCodebook& codebook,
                                      const FrontEnd& fe, const OptimizerOptions& options);

/// RMSE (mean, radians) and sqrt(CRB) (bound, radians) per architecture and
/// SNR. All architectures see the same noise draws.
ExperimentResult run_sensing_experiment(const SensingScenario& scenario);
ExperimentResult run_sensing_experiment(const SensingScenario& scenario, const FrontEnd& fe);

}  // namespace wavebench
