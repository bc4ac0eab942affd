#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wavebench/synthesis.hpp"

namespace wavebench {

/// Tunable analog components, counted as edges plus shunts of the
/// reciprocal network:
///   digital 0 (its cost is in RF chains and converters, not counted here)
///   hybrid  K M phase shifters
///   sim     L M phase shifters
///   milac   P (P + 1) / 2 with P = M + K (fully connected)
///   bdris   P (P + 1) / 2 with P = M + N (full), 2 P - 1 (tree)
std::int64_t component_count(const ArchitectureSpec& spec);

struct ComplexityRow {
  std::string architecture;
  int M = 0;
  int N = 0;
  int K = 0;
  int L = 0;
  std::int64_t count = 0;
};

struct ComplexityReport {
  std::vector<ComplexityRow> rows;
};

struct ComplexityTemplate {
  int K = 4;
  int L = 3;
  /// Asymmetric BD-RIS antenna-facing size; rows are emitted as
  /// bdris_full_asym / bdris_tree_asym. Default ceil(M / 2).
  std::function<int(int)> asymmetric_n = [](int m) { return (m + 1) / 2; };
  bool include_asymmetric = true;
};

/// One row per (architecture, M): digital, hybrid, sim, milac, bdris_full,
/// bdris_tree, then the asymmetric BD-RIS rows.
ComplexityReport complexity_sweep(const ComplexityTemplate& tmpl, const std::vector<int>& m_values);

}  // namespace wavebench
