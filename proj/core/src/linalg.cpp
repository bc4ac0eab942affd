#include "wavebench/linalg.hpp"

#include <cmath>

#include "wavebench/error.hpp"

namespace wavebench {

CVector canonical_phase(const CVector& v) {
  if (v.size() == 0) return v;
  Eigen::Index pivot = 0;
  v.cwiseAbs().maxCoeff(&pivot);
  const double mag = std::abs(v[pivot]);
  if (mag == 0.0) return v;
  return v * (std::conj(v[pivot]) / mag);
}

DominantSingular dominant_singular(const CMatrix& m) {
  require(m.rows() > 0 && m.cols() > 0, "matrix must be non-empty");
  DominantSingular out;
  if (m.rows() == 1) {
    // m = c^T: sigma = |c|, right vector conj(c)/|c|.
    out.value = m.norm();
    if (out.value > 0.0) {
      out.right = canonical_phase(CVector(m.row(0).adjoint()) / out.value);
      out.left = CVector::Constant(1, (m * out.right)(0) / out.value);
    } else {
      out.right = CVector::Unit(m.cols(), 0);
      out.left = CVector::Unit(1, 0);
    }
    return out;
  }
  if (m.cols() == 1) {
    out.value = m.norm();
    out.right = CVector::Ones(1);
    out.left = out.value > 0.0 ? CVector(m.col(0) / out.value) : CVector(CVector::Unit(m.rows(), 0));
    return out;
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.value = svd.singularValues()(0);
  out.right = canonical_phase(svd.matrixV().col(0));
  if (out.value > 0.0) {
    out.left = m * out.right / out.value;
  } else {
    out.left = svd.matrixU().col(0);
  }
  return out;
}

double spectral_norm(const CMatrix& m) {
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace wavebench
