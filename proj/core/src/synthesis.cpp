#include "wavebench/synthesis.hpp"

#include <cmath>

#include "wavebench/error.hpp"
#include "wavebench/linalg.hpp"

namespace wavebench {

ArchitectureSpec ArchitectureSpec::digital(int m) {
  ArchitectureSpec s;
  s.kind = ArchitectureKind::Digital;
  s.M = m;
  s.K = m;
  return s;
}

ArchitectureSpec ArchitectureSpec::milac(int m, int k) {
  ArchitectureSpec s;
  s.kind = ArchitectureKind::Milac;
  s.M = m;
  s.K = k;
  return s;
}

ArchitectureSpec ArchitectureSpec::hybrid(int m, int k) {
  ArchitectureSpec s;
  s.kind = ArchitectureKind::Hybrid;
  s.M = m;
  s.K = k;
  return s;
}

ArchitectureSpec ArchitectureSpec::sim(int m, int k, int l, double layer_spacing) {
  ArchitectureSpec s;
  s.kind = ArchitectureKind::Sim;
  s.M = m;
  s.K = k;
  s.L = l;
  s.layer_spacing = layer_spacing;
  return s;
}

ArchitectureSpec ArchitectureSpec::bdris(int m, int n, int k, BdrisTopology topology) {
  ArchitectureSpec s;
  s.kind = ArchitectureKind::Bdris;
  s.M = m;
  s.N = n;
  s.K = k;
  s.topology = topology;
  return s;
}

void ArchitectureSpec::validate() const {
  require(M >= 1, "M must be >= 1");
  require(K >= 1, "K must be >= 1");
  switch (kind) {
    case ArchitectureKind::Digital:
      require(K == M, "digital architecture requires K == M");
      break;
    case ArchitectureKind::Sim:
      require(L >= 1, "sim requires L >= 1");
      require(std::isfinite(layer_spacing) && layer_spacing >= 0.0,
              "sim layer spacing must be >= 0");
      break;
    case ArchitectureKind::Bdris:
      require(N >= 1, "bdris requires N >= 1");
      break;
    case ArchitectureKind::Hybrid:
    case ArchitectureKind::Milac:
      break;
  }
}

std::string ArchitectureSpec::name() const {
  switch (kind) {
    case ArchitectureKind::Digital: return "digital";
    case ArchitectureKind::Hybrid: return "hybrid";
    case ArchitectureKind::Milac: return "milac";
    case ArchitectureKind::Sim: return "sim";
    case ArchitectureKind::Bdris:
      return topology == BdrisTopology::Full ? "bdris_full" : "bdris_tree";
  }
  return "unknown";
}

BeamSolution digital_precoder(const CMatrix& channel) {
  require(channel.size() > 0, "channel must be non-empty");
  require(channel.allFinite(), "channel must be finite");
  if (channel.isZero(0.0)) fail(ErrorCode::DegenerateChannel, "all-zero channel");
  const DominantSingular top = dominant_singular(channel);
  BeamSolution out;
  out.feed = top.right;
  out.analog = DigitalConfig{};
  out.effective_beam = top.right;
  out.gain = top.value;
  return out;
}

BeamSolution milac_precoder(const CMatrix& channel) {
  BeamSolution out = digital_precoder(channel);
  out.analog = MilacConfig{out.effective_beam};
  return out;
}

BeamSolution hybrid_precoder(const CVector& h) {
  require(h.size() > 0 && h.allFinite(), "channel must be non-empty and finite");
  if (h.isZero(0.0)) fail(ErrorCode::DegenerateChannel, "all-zero channel");
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(h.size()));
  CVector phases(h.size());
  for (Eigen::Index m = 0; m < h.size(); ++m) phases[m] = std::polar(1.0, -std::arg(h[m]));
  BeamSolution out;
  out.feed = CVector::Ones(1);
  out.effective_beam = phases * inv_sqrt_m;
  out.gain = h.cwiseAbs().sum() * inv_sqrt_m;
  out.analog = PhaseConfig{{std::move(phases)}};
  return out;
}

BeamSolution bdris_full_configure(const CMatrix& coupling, const CVector& h) {
  require(coupling.size() > 0 && coupling.allFinite(), "coupling must be non-empty and finite");
  require(h.size() > 0 && h.allFinite(), "user channel must be non-empty and finite");
  if (coupling.isZero(0.0)) fail(ErrorCode::DegenerateChannel, "all-zero coupling");
  if (h.isZero(0.0)) fail(ErrorCode::DegenerateChannel, "all-zero user channel");

  const DominantSingular top = dominant_singular(coupling);
  const CVector incident = coupling * top.right;
  const CVector v = incident / incident.norm();
  const CVector u = h.conjugate() / h.norm();

  BeamSolution out;
  out.feed = top.right;
  CMatrix t = u * v.adjoint();
  out.effective_beam = t * incident;
  out.gain = h.norm() * top.value;
  out.analog = TransmissionConfig{std::move(t)};
  return out;
}

double end_to_end_gain(const CVector& h, const CMatrix& transmission, const CMatrix& coupling,
                       const CVector& feed) {
  return std::abs(cascade_gain(h, transmission, coupling, feed));
}

double beam_fit_residual(const CVector& beam, const CVector& codeword) {
  require(beam.size() == codeword.size(), "beam and codeword lengths differ");
  const double beam_norm = beam.norm();
  const double cw_norm = codeword.norm();
  require(cw_norm > 0.0, "codeword must be nonzero");
  if (beam_norm == 0.0) return 1.0;
  const Complex alpha = codeword.dot(beam) / (cw_norm * cw_norm);
  return (beam - alpha * codeword).norm() / beam_norm;
}

}  // namespace wavebench
