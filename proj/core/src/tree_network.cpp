#include "wavebench/tree_network.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <tuple>
#include <string>

#include "wavebench/error.hpp"
#include "wavebench/linalg.hpp"
#include "wavebench/random.hpp"
#include "wavebench/synthesis.hpp"

namespace wavebench {

namespace {

// Adjacency list with edge indices.
std::vector<std::vector<std::pair<int, int>>> adjacency(const TreeNetwork& net) {
  std::vector<std::vector<std::pair<int, int>>> adj(net.port_count());
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto [a, b] = net.edges[e];
    adj[a].emplace_back(b, static_cast<int>(e));
    adj[b].emplace_back(a, static_cast<int>(e));
  }
  return adj;
}

}  // namespace

void TreeNetwork::validate() const {
  const int p = port_count();
  require(antenna_ports >= 1 && env_ports >= 1, "tree needs at least one port on each side");
  require(static_cast<int>(edges.size()) == p - 1, "tree must have exactly ports - 1 edges");
  require(edge_susceptances.size() == static_cast<Eigen::Index>(edges.size()),
          "one susceptance per edge required");
  require(shunt_susceptances.size() == p, "one shunt susceptance per port required");
  require(edge_susceptances.allFinite() && shunt_susceptances.allFinite(),
          "susceptances must be finite");
  // Union-find: p - 1 edges without a cycle span the graph.
  std::vector<int> root(p);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& [a, b] : edges) {
    require(a >= 0 && a < p && b >= 0 && b < p && a != b, "edge endpoints out of range");
    const int ra = find(a);
    const int rb = find(b);
    require(ra != rb, "edges contain a cycle");
    root[ra] = rb;
  }
}

TreeNetwork make_tree(int antenna_ports, int env_ports, TreeShape shape) {
  require(antenna_ports >= 1 && env_ports >= 1, "tree needs at least one port on each side");
  TreeNetwork net;
  net.antenna_ports = antenna_ports;
  net.env_ports = env_ports;
  const int p = net.port_count();
  if (shape == TreeShape::Star) {
    for (int i = 1; i < p; ++i) net.edges.emplace_back(0, i);
  } else {
    std::vector<int> sequence;
    sequence.reserve(p);
    for (int i = 0; i < std::max(antenna_ports, env_ports); ++i) {
      if (i < antenna_ports) sequence.push_back(i);
      if (i < env_ports) sequence.push_back(antenna_ports + i);
    }
    for (int i = 1; i < p; ++i) net.edges.emplace_back(sequence[i - 1], sequence[i]);
  }
  net.edge_susceptances = RVector::Zero(p - 1);
  net.shunt_susceptances = RVector::Zero(p);
  return net;
}

Eigen::MatrixXd nodal_susceptance(const TreeNetwork& net) {
  net.validate();
  const int p = net.port_count();
  Eigen::MatrixXd b = net.shunt_susceptances.asDiagonal();
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto [i, j] = net.edges[e];
    const double be = net.edge_susceptances[static_cast<Eigen::Index>(e)];
    b(i, i) += be;
    b(j, j) += be;
    b(i, j) -= be;
    b(j, i) -= be;
  }
  (void)p;
  return b;
}

Scattering tree_scattering(const TreeNetwork& net, const CarrierConfig& carrier) {
  carrier.validate();
  const Eigen::MatrixXd b = nodal_susceptance(net);
  const int p = net.port_count();
  const CMatrix zy = kJ * carrier.reference_impedance * b.cast<Complex>();
  const CMatrix eye = CMatrix::Identity(p, p);
  const CMatrix a = eye + zy;
  Eigen::PartialPivLU<CMatrix> lu(a);
  // rcond() is a cheap estimate; it drops to ~0 only near resonance.
  if (!(lu.rcond() > 1e-13)) fail(ErrorCode::ResonantConfiguration, "I + Z0 Y is singular");
  Scattering out;
  // (I - X)(I + X)^-1 = (I + X)^-1 (I - X) since both are polynomials in X.
  out.s = lu.solve(eye - zy);
  out.transmission = out.s.block(net.antenna_ports, 0, net.env_ports, net.antenna_ports);
  return out;
}

TreeSolver::TreeSolver(const TreeNetwork& net, double reference_impedance)
    : z0_(reference_impedance) {
  const int p = net.port_count();
  const auto adj = adjacency(net);
  order_.reserve(p);
  parent_.assign(p, -1);
  parent_edge_.assign(p, -1);
  incident_edges_.assign(p, {});
  std::vector<char> seen(p, 0);
  order_.push_back(0);
  seen[0] = 1;
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const int node = order_[head];
    for (const auto& [next, e] : adj[node]) {
      incident_edges_[node].push_back(e);
      if (seen[next]) continue;
      seen[next] = 1;
      parent_[next] = node;
      parent_edge_[next] = e;
      order_.push_back(next);
    }
  }
  require(static_cast<int>(order_.size()) == p, "tree is not connected");
  factor(net);
}

void TreeSolver::factor(const TreeNetwork& net) {
  const int p = net.port_count();
  coupling_to_parent_.assign(p, Complex(0.0));
  pivot_.resize(p);
  for (int i = 0; i < p; ++i) {
    double total = net.shunt_susceptances[i];
    for (const int e : incident_edges_[i]) total += net.edge_susceptances[e];
    pivot_[i] = Complex(1.0, z0_ * total);
    if (parent_edge_[i] >= 0) {
      coupling_to_parent_[i] = Complex(0.0, -z0_ * net.edge_susceptances[parent_edge_[i]]);
    }
  }
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    const int i = *it;
    if (pivot_[i] == Complex(0.0)) fail(ErrorCode::ResonantConfiguration, "zero pivot");
    if (parent_[i] < 0) continue;
    const Complex a = coupling_to_parent_[i];
    pivot_[parent_[i]] -= a * a / pivot_[i];
  }
  inv_pivot_.resize(p);
  for (int i = 0; i < p; ++i) inv_pivot_[i] = 1.0 / pivot_[i];
}

CVector TreeSolver::solve(const CVector& rhs) const {
  CVector r = rhs;
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    const int i = *it;
    if (parent_[i] >= 0) r[parent_[i]] -= coupling_to_parent_[i] * r[i] * inv_pivot_[i];
  }
  CVector x(r.size());
  for (const int i : order_) {
    const Complex upper = parent_[i] >= 0 ? coupling_to_parent_[i] * x[parent_[i]] : Complex(0.0);
    x[i] = (r[i] - upper) * inv_pivot_[i];
  }
  return x;
}

namespace {

// State of one coordinate-ascent run. The objective is
//   s(b) = h^T T(b) g = 2 h~^T A(b)^-1 g~,  A = I + j Z0 B(b),
// with h~ / g~ the user channel and incident field padded onto the
// environment / antenna ports (the -I part of S has no off-diagonal block).
class TreeAscent {
 public:
  TreeAscent(TreeNetwork net, const CVector& h, const CVector& incident, double z0)
      : net_(std::move(net)), z0_(z0) {
    const int p = net_.port_count();
    h_pad_ = CVector::Zero(p);
    h_pad_.tail(net_.env_ports) = h;
    g_pad_ = CVector::Zero(p);
    g_pad_.head(net_.antenna_ports) = incident;
    w_ = CVector::Zero(p);
    refresh();
  }

  double value() const { return std::abs(s_); }
  const TreeNetwork& network() const { return net_; }

  /// Golden-section update of one susceptance. Returns true if accepted.
  bool update(int coordinate) {
    const int edge_count = static_cast<int>(net_.edges.size());
    const bool is_edge = coordinate < edge_count;
    int i = 0;
    int j = -1;
    double current = 0.0;
    if (is_edge) {
      std::tie(i, j) = net_.edges[coordinate];
      current = net_.edge_susceptances[coordinate];
    } else {
      i = coordinate - edge_count;
      current = net_.shunt_susceptances[i];
    }
    w_.setZero();
    w_[i] = 1.0;
    if (j >= 0) w_[j] = -1.0;
    const CVector z = solver_->solve(w_);
    const Complex pw = is_edge ? p_[i] - p_[j] : p_[i];
    const Complex wq = is_edge ? q_[i] - q_[j] : q_[i];
    const Complex wz = is_edge ? z[i] - z[j] : z[i];
    const Complex c = 2.0 * kJ * z0_ * pw * wq;
    const Complex d = kJ * z0_ * wz;

    // Susceptance b = tan(t) / Z0 maps t in [-pi/2, pi/2] onto the real line.
    // |s(delta)|^2 = |s0 + (s0 d - c) delta|^2 / |1 + d delta|^2.
    const Complex slope = s_ * d - c;
    auto objective = [&](double t) {
      const double delta = std::tan(t) / z0_ - current;
      const double nr = s_.real() + slope.real() * delta;
      const double ni = s_.imag() + slope.imag() * delta;
      const double dr = 1.0 + d.real() * delta;
      const double di = d.imag() * delta;
      return (nr * nr + ni * ni) / (dr * dr + di * di);
    };
    constexpr int kScan = 24;
    const double cell = kPi / kScan;
    double best_t = 0.0;
    double best_val = -1.0;
    for (int k = 0; k < kScan; ++k) {
      const double t = -kPi / 2 + (k + 0.5) * cell;
      const double val = objective(t);
      if (val > best_val) {
        best_val = val;
        best_t = t;
      }
    }
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = best_t - cell;
    double hi = best_t + cell;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = objective(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = objective(x1);
      }
    }
    const double t_star = f1 > f2 ? x1 : x2;
    if (std::max(f1, f2) <= std::norm(s_)) return false;
    const double updated = std::tan(t_star) / z0_;
    const double previous = value();
    const CVector p_old = p_;
    const CVector q_old = q_;
    const Complex s_old = s_;
    set_susceptance(coordinate, updated);
    solver_->factor(net_);
    // Sherman-Morrison: A' = A + j Z0 delta w w^T, and A^-1 w = z.
    const double delta = updated - current;
    const Complex scale = kJ * z0_ * delta / (1.0 + d * delta);
    p_ -= (scale * pw) * z;
    q_ -= (scale * wq) * z;
    s_ = 2.0 * h_pad_.cwiseProduct(q_).sum();
    if (value() < previous) {
      set_susceptance(coordinate, current);
      solver_->factor(net_);
      p_ = p_old;
      q_ = q_old;
      s_ = s_old;
      return false;
    }
    return true;
  }

  /// Full re-solve, clearing drift from the rank-one updates.
  void refresh() {
    if (solver_) {
      solver_->factor(net_);
    } else {
      solver_.emplace(net_, z0_);
    }
    p_ = solver_->solve(h_pad_);
    q_ = solver_->solve(g_pad_);
    s_ = 2.0 * h_pad_.cwiseProduct(q_).sum();
  }

 private:
  void set_susceptance(int coordinate, double value) {
    const int edge_count = static_cast<int>(net_.edges.size());
    if (coordinate < edge_count) {
      net_.edge_susceptances[coordinate] = value;
    } else {
      net_.shunt_susceptances[coordinate - edge_count] = value;
    }
  }

  TreeNetwork net_;
  double z0_;
  CVector h_pad_;
  CVector g_pad_;
  CVector w_;
  std::optional<TreeSolver> solver_;
  CVector p_;
  CVector q_;
  Complex s_{0.0};
};

}  // namespace

BeamSolution bdris_tree_configure(const CMatrix& coupling, const CVector& h, TreeShape shape,
                                  const CarrierConfig& carrier, const OptimizerOptions& options) {
  carrier.validate();
  require(coupling.size() > 0 && coupling.allFinite(), "coupling must be non-empty and finite");
  require(h.size() > 0 && h.allFinite(), "user channel must be non-empty and finite");
  require(options.budget >= 1, "optimizer budget must be >= 1");
  require(options.restarts >= 1, "optimizer restarts must be >= 1");
  if (coupling.isZero(0.0) || h.isZero(0.0)) {
    fail(ErrorCode::DegenerateChannel, "all-zero coupling or user channel");
  }
  const DominantSingular top = dominant_singular(coupling);
  const CVector incident = coupling * top.right;
  const int n = static_cast<int>(coupling.rows());
  const int m = static_cast<int>(h.size());
  const double z0 = carrier.reference_impedance;

  TreeNetwork best_net;
  double best_value = -1.0;
  std::vector<double> best_history;
  for (int restart = 0; restart < options.restarts; ++restart) {
    Rng rng = make_rng(options.seed, {0x7472ULL, static_cast<std::uint64_t>(restart)});
    TreeNetwork net = make_tree(n, m, shape);
    for (Eigen::Index e = 0; e < net.edge_susceptances.size(); ++e) {
      net.edge_susceptances[e] = std::tan(uniform(rng, -kPi / 2, kPi / 2)) / z0;
    }
    for (Eigen::Index i = 0; i < net.shunt_susceptances.size(); ++i) {
      net.shunt_susceptances[i] = std::tan(uniform(rng, -kPi / 2, kPi / 2)) / z0;
    }
    TreeAscent ascent(std::move(net), h, incident, z0);
    std::vector<double> history{ascent.value()};
    const int coordinates =
        static_cast<int>(ascent.network().edges.size()) + ascent.network().port_count();
    for (int sweep = 0; sweep < options.budget; ++sweep) {
      const double before = ascent.value();
      for (int c = 0; c < coordinates; ++c) ascent.update(c);
      ascent.refresh();
      history.push_back(ascent.value());
      if (ascent.value() - before <= 1e-12 * ascent.value()) break;
    }
    if (ascent.value() > best_value) {
      best_value = ascent.value();
      best_net = ascent.network();
      best_history = std::move(history);
    }
  }

  Scattering sc = tree_scattering(best_net, carrier);
  BeamSolution out;
  out.feed = top.right;
  out.effective_beam = sc.transmission * incident;
  out.gain = std::abs(h.cwiseProduct(out.effective_beam).sum());
  out.history = std::move(best_history);
  out.analog = TreeConfig{std::move(best_net), std::move(sc.transmission)};
  return out;
}

}  // namespace wavebench
