#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "support.hpp"
#include "wavebench/error.hpp"
#include "wavebench/front_end.hpp"
#include "wavebench/linalg.hpp"
#include "wavebench/sim.hpp"
#include "wavebench/synthesis.hpp"
#include "wavebench/tree_network.hpp"

namespace wavebench {
namespace {

using testing::random_matrix;
using testing::random_phases;
using testing::random_unit_vector;
using testing::random_vector;
using testing::sigma_max;

const CarrierConfig kCarrier{};

// Small front end shared by the integration-style tests below.
FrontEnd small_front_end(int layers = 3) {
  FrontEndConfig cfg;
  cfg.rows = 3;
  cfg.cols = 3;
  cfg.rf_chains = 2;
  cfg.feed_distance_wl = 3.0;
  cfg.sim_layers = layers;
  return build_front_end(cfg, kCarrier);
}

// Random CMatrix with sigma_max drawn uniformly in [0, 1].
CMatrix random_passive(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  CMatrix t = random_matrix(rng, rows, cols);
  return t * (uniform(rng, 0.0, 1.0) / sigma_max(t));
}

TEST(Digital, RankOne) {
  Rng rng = make_rng(1);
  const CVector u = random_unit_vector(rng, 3);
  const CVector v = random_unit_vector(rng, 4);
  const CMatrix h = 3.0 * u * v.adjoint();
  const BeamSolution s = digital_precoder(h);
  EXPECT_NEAR(s.gain, 3.0, 1e-10);
  EXPECT_NEAR(std::abs(s.feed.dot(v)), 1.0, 1e-10);
  EXPECT_NEAR(s.feed.norm(), 1.0, 1e-10);
}

TEST(Digital, IdentityGainExactlyOne) {
  const BeamSolution s = digital_precoder(CMatrix::Identity(2, 2));
  EXPECT_EQ(s.gain, 1.0);
  EXPECT_NEAR(s.feed.norm(), 1.0, 1e-12);
}

TEST(Digital, BeatsRandomSearch) {
  Rng rng = make_rng(2);
  for (int inst = 0; inst < 5; ++inst) {
    const CMatrix h = random_matrix(rng, 3, 3);
    const BeamSolution s = digital_precoder(h);
    EXPECT_NEAR(s.gain, sigma_max(h), 1e-10);
    EXPECT_NEAR((h * s.feed).norm(), s.gain, 1e-10);
    for (int t = 0; t < 10000; ++t) {
      const CVector w = random_unit_vector(rng, 3);
      ASSERT_LE((h * w).norm(), s.gain + 1e-12);
    }
  }
}

TEST(Digital, ZeroChannelIsDegenerate) {
  try {
    digital_precoder(CMatrix::Zero(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateChannel);
  }
  EXPECT_THROW(milac_precoder(CMatrix::Zero(1, 3)), Error);
}

TEST(Milac, EqualsDigitalExactly) {
  Rng rng = make_rng(3);
  EXPECT_EQ(milac_precoder(CMatrix::Identity(3, 3)).gain, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const CMatrix h = random_matrix(rng, 1 + t % 3, 2 + t % 5);
    const BeamSolution d = digital_precoder(h);
    const BeamSolution m = milac_precoder(h);
    worst = std::max(worst, std::abs(m.gain - d.gain));
    EXPECT_EQ(m.effective_beam, d.effective_beam);
    EXPECT_TRUE(std::holds_alternative<MilacConfig>(m.analog));
  }
  EXPECT_EQ(worst, 0.0);
}

TEST(Hybrid, HandEvaluatedExample) {
  CVector h(2);
  h << 1.0, Complex(0.0, 2.0);
  const BeamSolution s = hybrid_precoder(h);
  EXPECT_NEAR(s.gain, 3.0 / std::sqrt(2.0), 1e-15);
  // Received sample h^T w is real and positive for w = exp(-j arg h) / sqrt(M).
  CVector w(2);
  w << 1.0, Complex(0.0, -1.0);
  w /= std::sqrt(2.0);
  EXPECT_LT((s.effective_beam - w).norm(), 1e-15);
  EXPECT_NEAR(std::abs(h.dot(s.effective_beam.conjugate()) - Complex(s.gain)), 0.0, 1e-14);
  EXPECT_LT(s.gain, h.norm());
}

TEST(Hybrid, EqualMagnitudesReachMatchedFilter) {
  Rng rng = make_rng(4);
  const CVector h = 0.7 * random_phases(rng, 16);
  EXPECT_NEAR(hybrid_precoder(h).gain, h.norm(), 1e-12);
}

TEST(Hybrid, NeverExceedsDigitalAndIsPhaseOnly) {
  Rng rng = make_rng(5);
  for (int t = 0; t < 200; ++t) {
    const CVector h = random_vector(rng, 8);
    const BeamSolution s = hybrid_precoder(h);
    EXPECT_LE(s.gain, h.norm() + 1e-12);
    const auto& phases = std::get<PhaseConfig>(s.analog).layers.front();
    EXPECT_LT((phases.cwiseAbs() - RVector::Ones(8)).cwiseAbs().maxCoeff(), 1e-10);
  }
  EXPECT_THROW(hybrid_precoder(CVector::Zero(3)), Error);
}

TEST(BdrisFull, ScalarChain) {
  const BeamSolution s =
      bdris_full_configure(CMatrix::Constant(1, 1, 0.5), CVector::Constant(1, 2.0));
  const CMatrix& t = std::get<TransmissionConfig>(s.analog).transmission;
  EXPECT_NEAR(std::abs(t(0, 0) - Complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(s.gain, 1.0, 1e-15);
}

TEST(BdrisFull, UnitSpectralNormAndAchievedGain) {
  Rng rng = make_rng(6);
  for (int t = 0; t < 100; ++t) {
    const CMatrix g = random_matrix(rng, 3 + t % 3, 1 + t % 3);
    const CVector h = random_vector(rng, 2 + t % 4);
    const BeamSolution s = bdris_full_configure(g, h);
    const CMatrix& tm = std::get<TransmissionConfig>(s.analog).transmission;
    EXPECT_NEAR(sigma_max(tm), 1.0, 1e-12);
    EXPECT_NEAR(end_to_end_gain(h, tm, g, s.feed), s.gain, 1e-10 * s.gain);
    EXPECT_NEAR(s.gain, h.norm() * sigma_max(g), 1e-10 * s.gain);
  }
}

TEST(BdrisFull, BeatsRandomFeasiblePoints) {
  Rng rng = make_rng(7);
  const CMatrix g = random_matrix(rng, 3, 2);
  const CVector h = random_vector(rng, 4);
  const double gain = bdris_full_configure(g, h).gain;
  for (int t = 0; t < 100000; ++t) {
    const CMatrix tm = random_passive(rng, 4, 3);
    const CVector f = random_unit_vector(rng, 2);
    ASSERT_LE(end_to_end_gain(h, tm, g, f), gain + 1e-9);
  }
}

TEST(BdrisFull, RejectsZeroInputs) {
  EXPECT_THROW(bdris_full_configure(CMatrix::Zero(2, 2), CVector::Ones(2)), Error);
  EXPECT_THROW(bdris_full_configure(CMatrix::Ones(2, 2), CVector::Zero(2)), Error);
}

TEST(TreeNetwork, ShapesAreSpanningTrees) {
  for (const TreeShape shape : {TreeShape::Path, TreeShape::Star}) {
    for (const auto& [n, m] : {std::pair{1, 1}, {3, 5}, {4, 2}, {1, 6}}) {
      const TreeNetwork net = make_tree(n, m, shape);
      EXPECT_EQ(static_cast<int>(net.edges.size()), n + m - 1);
      EXPECT_NO_THROW(net.validate());
    }
  }
  const TreeNetwork path = make_tree(2, 2, TreeShape::Path);
  // a0 e0 a1 e1 with env ports numbered after the antenna ports.
  const std::vector<std::pair<int, int>> expected{{0, 2}, {2, 1}, {1, 3}};
  EXPECT_EQ(path.edges, expected);
}

TEST(TreeNetwork, RejectsCycle) {
  TreeNetwork net = make_tree(2, 1, TreeShape::Path);
  net.edges.back() = {0, 2};
  net.edges.front() = {2, 0};
  EXPECT_THROW(net.validate(), Error);
}

TEST(TreeScattering, OpenNetworkIsIdentity) {
  const TreeNetwork net = make_tree(2, 3, TreeShape::Path);
  const Scattering s = tree_scattering(net, kCarrier);
  EXPECT_LT((s.s - CMatrix::Identity(5, 5)).norm(), 1e-15);
  EXPECT_EQ(s.transmission.rows(), 3);
  EXPECT_EQ(s.transmission.cols(), 2);
  EXPECT_LT(s.transmission.norm(), 1e-15);
}

TEST(TreeScattering, NodalSusceptanceAssembly) {
  TreeNetwork net = make_tree(1, 2, TreeShape::Star);
  net.edge_susceptances << 0.1, 0.2;
  net.shunt_susceptances << 0.01, 0.02, 0.03;
  Eigen::Matrix3d expected;
  expected << 0.31, -0.1, -0.2, -0.1, 0.12, 0.0, -0.2, 0.0, 0.23;
  EXPECT_LT((nodal_susceptance(net) - expected).norm(), 1e-15);
}

TEST(TreeScattering, UnitaryAndSymmetric) {
  Rng rng = make_rng(8);
  for (int t = 0; t < 200; ++t) {
    TreeNetwork net = make_tree(1 + t % 4, 1 + t % 5, t % 2 ? TreeShape::Star : TreeShape::Path);
    for (auto& b : net.edge_susceptances) b = std::tan(uniform(rng, -1.5, 1.5)) / 50.0;
    for (auto& b : net.shunt_susceptances) b = std::tan(uniform(rng, -1.5, 1.5)) / 50.0;
    const CMatrix s = tree_scattering(net, kCarrier).s;
    const auto p = s.rows();
    EXPECT_LT((s.adjoint() * s - CMatrix::Identity(p, p)).norm(), 1e-9);
    EXPECT_LT((s - s.transpose()).norm(), 1e-9);
  }
}

TEST(TreeSolver, MatchesDenseSolve) {
  Rng rng = make_rng(9);
  for (int t = 0; t < 50; ++t) {
    TreeNetwork net = make_tree(2 + t % 3, 3 + t % 4, t % 2 ? TreeShape::Star : TreeShape::Path);
    for (auto& b : net.edge_susceptances) b = uniform(rng, -0.1, 0.1);
    for (auto& b : net.shunt_susceptances) b = uniform(rng, -0.1, 0.1);
    const int p = net.port_count();
    const CMatrix a = CMatrix::Identity(p, p) +
                      kJ * kCarrier.reference_impedance * nodal_susceptance(net).cast<Complex>();
    const CVector r = random_vector(rng, p);
    const TreeSolver solver(net, kCarrier.reference_impedance);
    const CVector x = solver.solve(r);
    EXPECT_LT((a * x - r).norm(), 1e-10 * r.norm());
  }
}

TEST(BdrisTree, AscentIsMonotone) {
  Rng rng = make_rng(10);
  const CMatrix g = random_matrix(rng, 4, 2);
  const CVector h = random_vector(rng, 5);
  const BeamSolution s = bdris_tree_configure(g, h, TreeShape::Path, kCarrier, {30, 2, 3});
  ASSERT_GE(s.history.size(), 2u);
  for (std::size_t i = 1; i < s.history.size(); ++i) {
    EXPECT_GE(s.history[i], s.history[i - 1]);
  }
  EXPECT_NEAR(s.history.back(), s.gain, 1e-9 * s.gain);
}

TEST(BdrisTree, BoundedByFullAndPassive) {
  Rng rng = make_rng(11);
  for (int t = 0; t < 20; ++t) {
    const CMatrix g = random_matrix(rng, 2 + t % 3, 1 + t % 2);
    const CVector h = random_vector(rng, 2 + t % 4);
    const double full = bdris_full_configure(g, h).gain;
    const BeamSolution s = bdris_tree_configure(g, h, t % 2 ? TreeShape::Star : TreeShape::Path,
                                                kCarrier, {20, 2, static_cast<std::uint64_t>(t)});
    EXPECT_LE(s.gain, full + 1e-9);
    const auto& tree = std::get<TreeConfig>(s.analog);
    EXPECT_LE(sigma_max(tree.transmission), 1.0 + 1e-9);
    const CMatrix sm = tree_scattering(tree.network, kCarrier).s;
    EXPECT_LT((sm.adjoint() * sm - CMatrix::Identity(sm.rows(), sm.cols())).norm(), 1e-9);
    EXPECT_NEAR(end_to_end_gain(h, tree.transmission, g, s.feed), s.gain, 1e-9 * full);
  }
}

TEST(BdrisTree, SingleEdgeMatchesGridSearch) {
  const CMatrix g = CMatrix::Constant(1, 1, Complex(0.3, 0.4));
  const CVector h = CVector::Constant(1, Complex(-0.8, 1.1));
  const BeamSolution s = bdris_tree_configure(g, h, TreeShape::Path, kCarrier, {200, 4, 0});
  const double z0 = kCarrier.reference_impedance;
  const CVector f = dominant_singular(g).right;
  TreeNetwork net = make_tree(1, 1, TreeShape::Path);
  double grid_best = 0.0;
  constexpr int kSteps = 100;  // 10^6 points over (edge, shunt, shunt)
  auto at = [&](int i) { return std::tan(-kPi / 2 + (i + 0.5) * kPi / kSteps) / z0; };
  for (int a = 0; a < kSteps; ++a) {
    for (int b = 0; b < kSteps; ++b) {
      for (int c = 0; c < kSteps; ++c) {
        net.edge_susceptances[0] = at(a);
        net.shunt_susceptances << at(b), at(c);
        const CMatrix t = tree_scattering(net, kCarrier).transmission;
        grid_best = std::max(grid_best, end_to_end_gain(h, t, g, f));
      }
    }
  }
  EXPECT_NEAR(s.gain, grid_best, 1e-3 * grid_best);
  EXPECT_GE(s.gain, grid_best * (1 - 1e-9));
}

TEST(BdrisTree, Deterministic) {
  Rng rng = make_rng(12);
  const CMatrix g = random_matrix(rng, 3, 2);
  const CVector h = random_vector(rng, 3);
  const auto a = bdris_tree_configure(g, h, TreeShape::Path, kCarrier, {10, 2, 5});
  const auto b = bdris_tree_configure(g, h, TreeShape::Path, kCarrier, {10, 2, 5});
  EXPECT_EQ(a.gain, b.gain);
  EXPECT_EQ(a.effective_beam, b.effective_beam);
}

SimStack random_stack(Rng& rng, int layers, int m, int k) {
  SimStack stack;
  stack.feed_coupling = random_matrix(rng, m, k);
  for (int l = 1; l < layers; ++l) stack.inter_layer.push_back(random_matrix(rng, m, m));
  return stack;
}

LayerPhases random_layer_phases(Rng& rng, int layers, int m) {
  LayerPhases p;
  for (int l = 0; l < layers; ++l) p.push_back(random_phases(rng, m));
  return p;
}

TEST(Sim, GradientMatchesCentralDifferences) {
  Rng rng = make_rng(13);
  for (int inst = 0; inst < 20; ++inst) {
    const int layers = 1 + inst % 3;
    const int m = 2 + inst % 7;
    const SimStack stack = random_stack(rng, layers, m, 2);
    const CVector h = random_vector(rng, m);
    const CVector f = random_unit_vector(rng, 2);
    const LayerPhases phases = random_layer_phases(rng, layers, m);
    const LayerPhases grad = sim_gradient(stack, h, phases, f);
    double num = 0.0;
    double den = 0.0;
    const double step = 1e-6;
    for (int l = 0; l < layers; ++l) {
      for (int i = 0; i < m; ++i) {
        for (const Complex dir : {Complex(1.0), kJ}) {
          LayerPhases plus = phases;
          LayerPhases minus = phases;
          plus[l][i] += step * dir;
          minus[l][i] -= step * dir;
          const double fd = (sim_objective(stack, h, plus, f) - sim_objective(stack, h, minus, f)) /
                            (2 * step);
          const double an = dir == Complex(1.0) ? grad[l][i].real() : grad[l][i].imag();
          num += (fd - an) * (fd - an);
          den += an * an;
        }
      }
    }
    EXPECT_LT(std::sqrt(num / den), 1e-5) << inst;
  }
}

TEST(Sim, SingleLayerReachesDigitalForPhaseOnlyTarget) {
  Rng rng = make_rng(14);
  SimStack stack;
  stack.feed_coupling = CMatrix::Identity(6, 6);
  const CVector h = 1.3 * random_phases(rng, 6);
  const BeamSolution s = sim_configure(stack, h, OptimizerOptions{});
  EXPECT_NEAR(s.gain, h.norm(), 1e-6);
}

TEST(Sim, AscentMonotoneAndUnitModulus) {
  Rng rng = make_rng(15);
  const SimStack stack = random_stack(rng, 3, 6, 2);
  const CVector h = random_vector(rng, 6);
  const BeamSolution s = sim_configure(stack, h, OptimizerOptions{200, 2, 1});
  for (std::size_t i = 1; i < s.history.size(); ++i) EXPECT_GE(s.history[i], s.history[i - 1]);
  for (const auto& layer : std::get<PhaseConfig>(s.analog).layers) {
    EXPECT_LT((layer.cwiseAbs() - RVector::Ones(6)).cwiseAbs().maxCoeff(), 1e-10);
  }
  EXPECT_NEAR(s.feed.norm(), 1.0, 1e-10);
  EXPECT_NEAR(std::abs(h.dot(s.effective_beam.conjugate())), s.gain, 1e-10 * s.gain);
  // Feed covers the composite channel exactly.
  const auto& phases = std::get<PhaseConfig>(s.analog).layers;
  EXPECT_NEAR(sim_composite(stack, h, phases).norm(), s.gain, 1e-10 * s.gain);
}

TEST(Sim, DimensionMismatchRejected) {
  Rng rng = make_rng(16);
  const SimStack stack = random_stack(rng, 2, 4, 2);
  EXPECT_THROW(sim_configure(stack, random_vector(rng, 5), OptimizerOptions{}), Error);
}

TEST(FrontEnd, GainOrderingOnEveryInstance) {
  const FrontEnd fe = small_front_end();
  Rng rng = make_rng(17);
  for (int t = 0; t < 10; ++t) {
    const UserChannel h =
        user_channel(fe.aperture, {uniform(rng, -1.0, 1.0), 0.0}, fe.carrier, Rician{}, rng());
    std::map<std::string, double> gain;
    for (const auto& spec : fe.architectures()) {
      gain[spec.name()] = configure_for_user(spec, fe, h.gains, {100, 2, 0}).gain;
    }
    EXPECT_EQ(gain["digital"], gain["milac"]);
    EXPECT_GE(gain["milac"] + 1e-9, gain["bdris_full"]);
    EXPECT_GE(gain["bdris_full"] + 1e-9, gain["bdris_tree"]);
    EXPECT_GE(gain["digital"] + 1e-9, gain["hybrid"]);
    EXPECT_GE(gain["digital"] + 1e-9, gain["sim"]);
  }
}

TEST(SweepBeam, HybridAndMilacIdentical) {
  const FrontEnd fe = small_front_end();
  Rng rng = make_rng(18);
  const auto specs = fe.architectures();
  for (int t = 0; t < 20; ++t) {
    const CVector c = random_phases(rng, 9);
    const CVector hybrid = realizable_sweep_beam(specs[2], c, fe, {});
    const CVector milac = realizable_sweep_beam(specs[1], c, fe, {});
    EXPECT_EQ(hybrid, milac);
    EXPECT_LT((milac - c / 3.0).norm(), 1e-15);
  }
}

TEST(SweepBeam, BdrisFullFitsExactly) {
  const FrontEnd fe = small_front_end();
  Rng rng = make_rng(19);
  const auto spec = fe.architectures()[3];
  ASSERT_GE(spec.N, spec.M);
  for (int t = 0; t < 20; ++t) {
    const CVector c = random_phases(rng, 9);
    EXPECT_LE(beam_fit_residual(realizable_sweep_beam(spec, c, fe, {}), c), 1e-9);
  }
}

TEST(SweepBeam, SimResidualShrinksWithLayers) {
  // On the small front end one layer already captures the feed; the
  // default aperture is where depth pays off.
  Rng rng = make_rng(20);
  FrontEndConfig cfg;
  const CVector c = random_phases(rng, cfg.aperture_size());
  std::vector<double> residual;
  for (const int layers : {1, 2, 3}) {
    cfg.sim_layers = layers;
    const FrontEnd fe = build_front_end(cfg, kCarrier);
    residual.push_back(beam_fit_residual(realizable_sweep_beam(fe.architectures()[5], c, fe, {}), c));
  }
  EXPECT_LT(residual[1], residual[0]);
  EXPECT_LT(residual[2], residual[1]);
}

TEST(SweepBeam, RejectsNonUnitCodeword) {
  const FrontEnd fe = small_front_end();
  EXPECT_THROW(realizable_sweep_beam(fe.architectures()[0], CVector::Constant(9, 2.0), fe, {}),
               Error);
}

TEST(ArchitectureSpec, Validation) {
  EXPECT_THROW(ArchitectureSpec::milac(0, 1).validate(), Error);
  EXPECT_THROW(ArchitectureSpec::sim(4, 2, 0, 0.005).validate(), Error);
  EXPECT_THROW(ArchitectureSpec::bdris(4, 0, 2, BdrisTopology::Full).validate(), Error);
  ArchitectureSpec d = ArchitectureSpec::digital(4);
  d.K = 2;
  EXPECT_THROW(d.validate(), Error);
  EXPECT_EQ(ArchitectureSpec::bdris(4, 4, 2, BdrisTopology::Tree).name(), "bdris_tree");
}

}  // namespace
}  // namespace wavebench
