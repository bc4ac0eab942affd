#pragma once

#include "wavebench/types.hpp"

namespace wavebench {

struct DominantSingular {
  double value = 0.0;
  CVector left;
  CVector right;
};

/// Largest singular triplet. The global phase is fixed so that the
/// largest-magnitude entry of `right` is real and positive, which makes the
/// result deterministic. Single-row and single-column matrices are handled
/// in closed form (sigma = Euclidean norm).
DominantSingular dominant_singular(const CMatrix& m);

double spectral_norm(const CMatrix& m);

/// Rotates `v` so its largest-magnitude entry is real and positive.
CVector canonical_phase(const CVector& v);

}  // namespace wavebench
