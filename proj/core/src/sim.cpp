#include "wavebench/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavebench/error.hpp"
#include "wavebench/linalg.hpp"
#include "wavebench/random.hpp"

namespace wavebench {

void SimStack::validate() const {
  require(feed_coupling.rows() >= 1 && feed_coupling.cols() >= 1, "feed coupling is empty");
  for (const auto& w : inter_layer) {
    if (w.rows() != elements() || w.cols() != elements()) {
      fail(ErrorCode::DimensionMismatch, "inter-layer coupling must be M x M");
    }
  }
}

SimStack make_sim_stack(const ArrayGeometry& feed, const std::vector<ArrayGeometry>& layers,
                        const CarrierConfig& carrier, bool passive) {
  require(!layers.empty(), "sim needs at least one layer");
  auto couple = [&](const ArrayGeometry& tx, const ArrayGeometry& rx) {
    CouplingMatrix g = near_field_coupling(tx, rx, carrier);
    return passive ? normalize_passive(g).entries : g.entries;
  };
  SimStack stack;
  stack.feed_coupling = couple(feed, layers.front());
  for (std::size_t l = 1; l < layers.size(); ++l) {
    stack.inter_layer.push_back(couple(layers[l - 1], layers[l]));
  }
  stack.validate();
  return stack;
}

namespace {

void check_dimensions(const SimStack& stack, const CVector& h, const LayerPhases& phases) {
  stack.validate();
  if (h.size() != stack.elements()) fail(ErrorCode::DimensionMismatch, "h must have M entries");
  if (static_cast<int>(phases.size()) != stack.layers()) {
    fail(ErrorCode::DimensionMismatch, "need one phase vector per layer");
  }
  for (const auto& p : phases) {
    if (p.size() != stack.elements()) fail(ErrorCode::DimensionMismatch, "phase vector length");
  }
}

// Field incident on each layer (before its phases) for feed f.
std::vector<CVector> forward_fields(const SimStack& stack, const LayerPhases& phases,
                                    const CVector& feed) {
  std::vector<CVector> incident;
  incident.reserve(phases.size());
  CVector x = stack.feed_coupling * feed;
  for (int l = 0; l < stack.layers(); ++l) {
    incident.push_back(x);
    x = phases[l].cwiseProduct(x);
    if (l + 1 < stack.layers()) x = stack.inter_layer[l] * x;
  }
  return incident;
}

// Row vectors a_l with h^T x = a_l^T diag(phi_l) b_l, stored as columns.
// Returns the composite row over the feed.
CVector backward_pass(const SimStack& stack, const CVector& h, const LayerPhases& phases,
                      std::vector<CVector>* rows) {
  if (rows) rows->assign(phases.size(), CVector());
  CVector row = h;
  for (int l = stack.layers() - 1; l >= 0; --l) {
    if (rows) (*rows)[l] = row;
    row = row.cwiseProduct(phases[l]);
    if (l > 0) row = stack.inter_layer[l - 1].transpose() * row;
  }
  return stack.feed_coupling.transpose() * row;
}

// J = |s|^2 with s linear in each phase entry psi_m with coefficient c_m,
// so dJ/dRe + j dJ/dIm = 2 s conj(c_m).
LayerPhases gradient_from_rows(const SimStack& stack, const std::vector<CVector>& rows,
                               const LayerPhases& phases, const CVector& feed) {
  const auto incident = forward_fields(stack, phases, feed);
  const Complex s = rows.back().cwiseProduct(phases.back()).cwiseProduct(incident.back()).sum();
  LayerPhases grad(phases.size());
  for (std::size_t l = 0; l < phases.size(); ++l) {
    grad[l] = 2.0 * s * rows[l].cwiseProduct(incident[l]).conjugate();
  }
  return grad;
}

CVector project_unit(const CVector& v) {
  CVector out(v.size());
  for (Eigen::Index m = 0; m < v.size(); ++m) {
    const double mag = std::sqrt(std::norm(v[m]));
    out[m] = mag > 0.0 ? v[m] / mag : Complex(1.0, 0.0);
  }
  return out;
}

CVector optimal_feed(const CVector& composite) {
  const double n = composite.norm();
  if (n == 0.0) return CVector::Unit(composite.size(), 0);
  return canonical_phase(composite.conjugate() / n);
}

}  // namespace

CVector sim_beam(const SimStack& stack, const LayerPhases& phases, const CVector& feed) {
  if (feed.size() != stack.rf_chains()) fail(ErrorCode::DimensionMismatch, "feed must have K entries");
  CVector x = stack.feed_coupling * feed;
  for (int l = 0; l < stack.layers(); ++l) {
    x = phases[l].cwiseProduct(x);
    if (l + 1 < stack.layers()) x = stack.inter_layer[l] * x;
  }
  return x;
}

CVector sim_composite(const SimStack& stack, const CVector& h, const LayerPhases& phases) {
  check_dimensions(stack, h, phases);
  return backward_pass(stack, h, phases, nullptr);
}

double sim_objective(const SimStack& stack, const CVector& h, const LayerPhases& phases,
                     const CVector& feed) {
  check_dimensions(stack, h, phases);
  return std::norm(h.cwiseProduct(sim_beam(stack, phases, feed)).sum());
}

LayerPhases sim_gradient(const SimStack& stack, const CVector& h, const LayerPhases& phases,
                         const CVector& feed) {
  check_dimensions(stack, h, phases);
  if (feed.size() != stack.rf_chains()) fail(ErrorCode::DimensionMismatch, "feed must have K entries");
  std::vector<CVector> rows;
  backward_pass(stack, h, phases, &rows);
  return gradient_from_rows(stack, rows, phases, feed);
}

BeamSolution sim_configure(const SimStack& stack, const CVector& h, const OptimizerOptions& options) {
  return sim_configure(stack, h, SimAscentOptions{options});
}

BeamSolution sim_configure(const SimStack& stack, const CVector& h, const SimAscentOptions& options) {
  stack.validate();
  if (h.size() != stack.elements()) fail(ErrorCode::DimensionMismatch, "h must have M entries");
  require(h.allFinite(), "user channel must be finite");
  require(options.optimizer.budget >= 1 && options.optimizer.restarts >= 1,
          "optimizer budget and restarts must be >= 1");
  require(options.step > 0.0, "step must be positive");
  const Eigen::Index m = stack.elements();
  const int layers = stack.layers();

  LayerPhases best_phases;
  CVector best_feed;
  double best_value = -1.0;
  std::vector<double> best_history;

  for (int restart = 0; restart < options.optimizer.restarts; ++restart) {
    Rng rng = make_rng(options.optimizer.seed, {0x73696dULL, static_cast<std::uint64_t>(restart)});
    LayerPhases phases(layers, CVector(m));
    for (auto& layer : phases) {
      for (Eigen::Index i = 0; i < m; ++i) layer[i] = std::polar(1.0, uniform(rng, -kPi, kPi));
    }
    std::vector<CVector> rows;
    CVector composite = backward_pass(stack, h, phases, &rows);
    CVector feed = optimal_feed(composite);
    double value = composite.squaredNorm();
    std::vector<double> history{value};

    for (int iter = 0; iter < options.optimizer.budget; ++iter) {
      const LayerPhases grad = gradient_from_rows(stack, rows, phases, feed);
      double peak = 0.0;
      for (const auto& g : grad) peak = std::max(peak, g.cwiseAbs().maxCoeff());
      if (!(peak > 0.0)) break;
      bool accepted = false;
      double step = options.step / peak;
      for (int bt = 0; bt <= options.max_backtracks; ++bt, step *= 0.5) {
        LayerPhases trial(layers);
        for (int l = 0; l < layers; ++l) trial[l] = project_unit(phases[l] + step * grad[l]);
        std::vector<CVector> trial_rows;
        CVector trial_composite = backward_pass(stack, h, trial, &trial_rows);
        const double trial_value = trial_composite.squaredNorm();
        if (trial_value > value) {
          phases = std::move(trial);
          rows = std::move(trial_rows);
          composite = std::move(trial_composite);
          feed = optimal_feed(composite);
          value = trial_value;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
      history.push_back(value);
      if (history.size() >= 2 && history.back() - history[history.size() - 2] <= 1e-14 * value) break;
    }
    if (value > best_value) {
      best_value = value;
      best_phases = std::move(phases);
      best_feed = std::move(feed);
      best_history = std::move(history);
    }
  }

  BeamSolution out;
  out.feed = best_feed;
  out.effective_beam = sim_beam(stack, best_phases, best_feed);
  out.gain = std::abs(h.cwiseProduct(out.effective_beam).sum());
  out.history = std::move(best_history);
  out.analog = PhaseConfig{std::move(best_phases)};
  return out;
}

}  // namespace wavebench
