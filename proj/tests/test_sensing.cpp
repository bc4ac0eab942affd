#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "wavebench/error.hpp"
#include "wavebench/front_end.hpp"
#include "wavebench/sensing.hpp"

namespace wavebench {
namespace {

const CarrierConfig kCarrier{};
const double kLambda = kCarrier.wavelength;
const double kSector = deg_to_rad(60.0);

ArrayGeometry square_array(int n) {
  return make_planar_array(n, n, kLambda / 2, Vec3::Zero(), Vec3::UnitX());
}

std::vector<CVector> digital_beams(const ArrayGeometry& g, int count) {
  auto cb = make_sweep_codebook(g, count, -kSector, kSector, kCarrier);
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  for (auto& c : cb.codewords) c *= scale;
  return cb.codewords;
}

TEST(Codebook, TwoBeamsAtEndpoints) {
  const auto g = square_array(3);
  const SweepCodebook cb = make_sweep_codebook(g, 2, -kSector, kSector, kCarrier);
  ASSERT_EQ(cb.codewords.size(), 2u);
  EXPECT_DOUBLE_EQ(cb.beam_angles[0], -kSector);
  EXPECT_DOUBLE_EQ(cb.beam_angles[1], kSector);
  EXPECT_LT((cb.codewords[1] - steering_vector(g, {kSector, 0.0}, kCarrier)).norm(), 1e-12);
}

TEST(Codebook, UnitModulusAndDistinct) {
  const auto g = square_array(9);
  const SweepCodebook cb = make_sweep_codebook(g, 64, -kSector, kSector, kCarrier);
  ASSERT_EQ(cb.codewords.size(), 64u);
  for (const auto& c : cb.codewords) {
    EXPECT_LT((c.cwiseAbs() - RVector::Ones(81)).cwiseAbs().maxCoeff(), 1e-12);
  }
  for (std::size_t i = 0; i < 64; ++i) {
    for (std::size_t j = i + 1; j < 64; ++j) {
      EXPECT_LT(std::abs(cb.codewords[i].dot(cb.codewords[j])) / 81.0, 1.0 - 1e-6);
    }
  }
}

TEST(Codebook, RejectsBadInput) {
  const auto g = square_array(3);
  EXPECT_THROW(make_sweep_codebook(g, 1, -kSector, kSector, kCarrier), Error);
  EXPECT_THROW(make_sweep_codebook(g, 4, 0.2, 0.2, kCarrier), Error);
}

TEST(Observe, NoiselessIsExact) {
  const auto g = square_array(3);
  const auto beams = digital_beams(g, 8);
  const SensingTarget target{{0.3, 0.0}, {0.5, -0.2}};
  Rng rng = make_rng(1);
  const CVector y = observe(target, beams, g, kCarrier, 0.0, rng);
  const CVector a = steering_vector(g, target.aod, kCarrier);
  for (std::size_t i = 0; i < beams.size(); ++i) {
    EXPECT_NEAR(std::abs(y[i] - target.beta * a.dot(beams[i])), 0.0, 1e-15);
  }
}

TEST(Observe, PureNoiseVariance) {
  const auto g = square_array(2);
  const auto beams = digital_beams(g, 100);
  const SensingTarget target{{0.0, 0.0}, {0.0, 0.0}};
  const double var = 0.37;
  Rng rng = make_rng(2);
  double total = 0.0;
  for (int rep = 0; rep < 100; ++rep) total += observe(target, beams, g, kCarrier, var, rng).squaredNorm();
  const double sample = total / 1e4;
  // |n|^2 is exponential with mean and std var.
  EXPECT_NEAR(sample, var, 3.0 * var / 100.0);
}

TEST(Observe, Deterministic) {
  const auto g = square_array(3);
  const auto beams = digital_beams(g, 8);
  Rng a = make_rng(3);
  Rng b = make_rng(3);
  const SensingTarget target{{0.1, 0.0}, {1.0, 0.0}};
  EXPECT_EQ(observe(target, beams, g, kCarrier, 0.1, a), observe(target, beams, g, kCarrier, 0.1, b));
}

TEST(Mle, NoiselessOnGridExact) {
  const auto g = square_array(5);
  const auto beams = digital_beams(g, 16);
  const AodEstimator est(g, beams, kCarrier, -kSector, kSector, deg_to_rad(0.05));
  for (const std::size_t k : {std::size_t{17}, est.grid().size() / 2, est.grid().size() - 40}) {
    const double theta = est.grid()[k];
    const CVector y = beam_responses(g, beams, {theta, 0.0}, kCarrier);
    EXPECT_EQ(est.estimate(y), theta);
  }
}

TEST(Mle, NoiselessOffGridWithinTenthOfCell) {
  const auto g = square_array(9);
  const auto beams = digital_beams(g, 64);
  const double res = deg_to_rad(0.05);
  Rng rng = make_rng(4);
  for (int t = 0; t < 50; ++t) {
    const double theta = uniform(rng, -deg_to_rad(55.0), deg_to_rad(55.0));
    const CVector y = beam_responses(g, beams, {theta, 0.0}, kCarrier);
    const Direction d = mle_aod(y, beams, g, kCarrier, res, -kSector, kSector);
    EXPECT_LT(std::abs(d.azimuth - theta), 0.1 * res);
  }
}

TEST(Mle, HighSnrNearBound) {
  const auto g = square_array(5);
  const auto beams = digital_beams(g, 32);
  const SensingTarget target{{deg_to_rad(20.0), 0.0}, {1.0, 0.0}};
  const double snr = 1000.0;
  const AodEstimator est(g, beams, kCarrier, -kSector, kSector, deg_to_rad(0.05));
  Rng rng = make_rng(5);
  double sq = 0.0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const double e = est.estimate(observe(target, beams, g, kCarrier, 1.0 / snr, rng)) - target.aod.azimuth;
    sq += e * e;
  }
  const double rmse = std::sqrt(sq / trials);
  const double bound = std::sqrt(crb_aod(g, beams, target.beta, snr, target.aod, kCarrier));
  EXPECT_LT(rmse, 1.5 * bound);
}

TEST(Mle, UnobservableWhenBeamsVanish) {
  const auto g = square_array(3);
  const std::vector<CVector> beams(4, CVector::Zero(9));
  try {
    mle_aod(CVector::Ones(4), beams, g, kCarrier, deg_to_rad(0.1), -kSector, kSector);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unobservable);
  }
}

TEST(Crb, HalvesWhenSnrDoubles) {
  const auto g = square_array(9);
  const auto beams = digital_beams(g, 64);
  for (const double snr : {0.1, 1.0, 31.6, 1000.0}) {
    const double a = crb_aod(g, beams, {1.0, 0.0}, snr, {0.35, 0.0}, kCarrier);
    const double b = crb_aod(g, beams, {1.0, 0.0}, 2 * snr, {0.35, 0.0}, kCarrier);
    EXPECT_EQ(b, a / 2);
  }
}

TEST(Crb, FisherMatchesExpectedLogLikelihoodHessian) {
  const auto g = square_array(3);
  const auto beams = digital_beams(g, 4);
  const Complex beta(0.8, -0.3);
  const Direction dir{0.25, 0.0};
  const double snr = 5.0;
  const Eigen::Matrix3d fim = fisher_information(g, beams, beta, snr, dir, kCarrier);
  // -E[log L](p) = snr |mu(p) - mu(p0)|^2 + const, with mu = beta v(theta).
  const CVector mu0 = beta * beam_responses(g, beams, dir, kCarrier);
  auto cost = [&](const Eigen::Vector3d& p) {
    const CVector mu = Complex(p[1], p[2]) * beam_responses(g, beams, {p[0], 0.0}, kCarrier);
    return snr * (mu - mu0).squaredNorm();
  };
  const Eigen::Vector3d p0(dir.azimuth, beta.real(), beta.imag());
  const double h = 1e-4;
  Eigen::Matrix3d hess;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d ei = Eigen::Vector3d::Zero();
      Eigen::Vector3d ej = Eigen::Vector3d::Zero();
      ei[i] = h;
      ej[j] = h;
      hess(i, j) = (cost(p0 + ei + ej) - cost(p0 + ei - ej) - cost(p0 - ei + ej) +
                    cost(p0 - ei - ej)) / (4 * h * h);
    }
  }
  EXPECT_LT((hess - fim).norm() / fim.norm(), 1e-4);
}

TEST(Crb, LargerApertureTighterBound) {
  const Direction dir{deg_to_rad(20.0), 0.0};
  const auto small = square_array(3);
  const auto large = square_array(9);
  const double a = crb_aod(small, digital_beams(small, 64), 1.0, 10.0, dir, kCarrier);
  const double b = crb_aod(large, digital_beams(large, 64), 1.0, 10.0, dir, kCarrier);
  EXPECT_LT(b, a);
}

TEST(Crb, InvariantToGlobalPhases) {
  const auto g = square_array(5);
  auto beams = digital_beams(g, 16);
  const Direction dir{0.2, 0.0};
  const double base = crb_aod(g, beams, 1.0, 3.0, dir, kCarrier);
  const double rotated_beta = crb_aod(g, beams, std::polar(1.0, 1.1), 3.0, dir, kCarrier);
  for (auto& b : beams) b *= std::polar(1.0, -0.7);
  const double rotated_beams = crb_aod(g, beams, 1.0, 3.0, dir, kCarrier);
  EXPECT_NEAR(rotated_beta, base, 1e-12 * base);
  EXPECT_NEAR(rotated_beams, base, 1e-12 * base);
}

TEST(Crb, SingleBeamUnidentifiable) {
  const auto g = square_array(3);
  const auto beams = digital_beams(g, 2);
  try {
    crb_aod(g, {beams[0]}, 1.0, 10.0, {0.1, 0.0}, kCarrier);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnidentifiableGeometry);
  }
}

SensingScenario small_scenario() {
  SensingScenario s;
  s.front_end.rows = 3;
  s.front_end.cols = 3;
  s.front_end.rf_chains = 2;
  s.front_end.feed_distance_wl = 3.0;
  s.codebook_size = 12;
  s.trials = 50;
  s.snr_grid_db = {0, 10, 20};
  s.optimizer = {60, 2, 0};
  return s;
}

TEST(SensingExperiment, MilacHybridIdenticalAndDeterministic) {
  const SensingScenario s = small_scenario();
  const auto a = run_sensing_experiment(s);
  const auto b = run_sensing_experiment(s);
  ASSERT_EQ(a.rows.size(), 5 * s.snr_grid_db.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].mean, b.rows[i].mean);
    EXPECT_EQ(a.rows[i].bound, b.rows[i].bound);
  }
  const std::size_t n = s.snr_grid_db.size();
  for (std::size_t i = 0; i < n; ++i) {
    ASSERT_EQ(a.rows[n + i].architecture, "milac");
    ASSERT_EQ(a.rows[2 * n + i].architecture, "hybrid");
    EXPECT_EQ(a.rows[n + i].mean, a.rows[2 * n + i].mean);
    EXPECT_EQ(a.rows[n + i].bound, a.rows[2 * n + i].bound);
  }
}

TEST(SensingExperiment, RmseTracksBoundAtHighSnr) {
  // The sample RMSE of n near-Gaussian errors has relative spread about
  // 1 / sqrt(2 n); allow four of those either side of the bound.
  SensingScenario s;
  const FrontEnd fe = build_front_end(s.front_end, s.carrier);
  s.specs = {fe.architectures()[0]};
  s.snr_grid_db = {20, 25, 30};
  const double band = 4.0 / std::sqrt(2.0 * s.trials);
  const auto r = run_sensing_experiment(s, fe);
  for (const auto& row : r.rows) {
    EXPECT_NEAR(row.mean / row.bound, 1.0, band) << row.snr_db << " dB";
  }
}

TEST(SensingExperiment, RmseAtLeastBoundAtHighSnrOnDefaultSeed) {
  SensingScenario s;
  const FrontEnd fe = build_front_end(s.front_end, s.carrier);
  s.specs = {fe.architectures()[0]};
  s.snr_grid_db = {20, 25, 30};
  const auto r = run_sensing_experiment(s, fe);
  for (const auto& row : r.rows) {
    EXPECT_GE(row.mean, row.bound) << row.snr_db << " dB: rmse/sqrt(crb) = " << row.mean / row.bound;
  }
}

TEST(SensingScenario, Validation) {
  SensingScenario s = small_scenario();
  s.target.aod.azimuth = deg_to_rad(70.0);
  EXPECT_THROW(s.validate(), Error);
  s = small_scenario();
  s.codebook_size = 1;
  EXPECT_THROW(s.validate(), Error);
  s = small_scenario();
  s.target.beta = 0.0;
  EXPECT_THROW(s.validate(), Error);
}

}  // namespace
}  // namespace wavebench
