#pragma once

#include <cstdint>

#include "wavebench/random.hpp"
#include "wavebench/types.hpp"

namespace wavebench::testing {

inline CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = complex_normal(rng);
  return m;
}

inline CVector random_vector(Rng& rng, Eigen::Index n) { return random_matrix(rng, n, 1); }

inline CVector random_unit_vector(Rng& rng, Eigen::Index n) {
  CVector v = random_vector(rng, n);
  return v / v.norm();
}

inline CVector random_phases(Rng& rng, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = std::polar(1.0, uniform(rng, -kPi, kPi));
  return v;
}

/// Largest singular value by Jacobi SVD, independent of the library's
/// dominant_singular path.
inline double sigma_max(const CMatrix& m) {
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

}  // namespace wavebench::testing
