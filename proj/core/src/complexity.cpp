#include "wavebench/complexity.hpp"

#include "wavebench/error.hpp"

namespace wavebench {

namespace {

std::int64_t fully_connected(std::int64_t ports) { return ports * (ports + 1) / 2; }

}  // namespace

std::int64_t component_count(const ArchitectureSpec& spec) {
  spec.validate();
  const std::int64_t m = spec.M;
  const std::int64_t k = spec.K;
  switch (spec.kind) {
    case ArchitectureKind::Digital: return 0;
    case ArchitectureKind::Hybrid: return k * m;
    case ArchitectureKind::Sim: return static_cast<std::int64_t>(spec.L) * m;
    case ArchitectureKind::Milac: return fully_connected(m + k);
    case ArchitectureKind::Bdris: {
      const std::int64_t p = m + spec.N;
      return spec.topology == BdrisTopology::Full ? fully_connected(p) : 2 * p - 1;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown architecture");
}

ComplexityReport complexity_sweep(const ComplexityTemplate& tmpl, const std::vector<int>& m_values) {
  require(!m_values.empty(), "M list must be non-empty");
  ComplexityReport report;
  auto add = [&](const std::string& name, const ArchitectureSpec& s) {
    report.rows.push_back(ComplexityRow{name, s.M, s.N, s.K, s.L, component_count(s)});
  };
  for (const int m : m_values) {
    add("digital", ArchitectureSpec::digital(m));
    add("hybrid", ArchitectureSpec::hybrid(m, tmpl.K));
    add("sim", ArchitectureSpec::sim(m, tmpl.K, tmpl.L, 0.0));
    add("milac", ArchitectureSpec::milac(m, tmpl.K));
    add("bdris_full", ArchitectureSpec::bdris(m, m, tmpl.K, BdrisTopology::Full));
    add("bdris_tree", ArchitectureSpec::bdris(m, m, tmpl.K, BdrisTopology::Tree));
    if (tmpl.include_asymmetric) {
      const int n = tmpl.asymmetric_n(m);
      add("bdris_full_asym", ArchitectureSpec::bdris(m, n, tmpl.K, BdrisTopology::Full));
      add("bdris_tree_asym", ArchitectureSpec::bdris(m, n, tmpl.K, BdrisTopology::Tree));
    }
  }
  return report;
}

}  // namespace wavebench
