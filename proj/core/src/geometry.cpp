#include "wavebench/geometry.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "wavebench/error.hpp"

namespace wavebench {

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kCoplanarTolerance = 1e-9;

}  // namespace

void CarrierConfig::validate() const {
  require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be positive");
  require(std::isfinite(reference_impedance) && reference_impedance > 0.0,
          "reference impedance must be positive");
}

void Direction::validate() const {
  require(std::isfinite(azimuth) && azimuth >= -kPi && azimuth <= kPi,
          "azimuth must lie in [-pi, pi]");
  require(std::isfinite(elevation) && elevation >= -kPi / 2 && elevation <= kPi / 2,
          "elevation must lie in [-pi/2, pi/2]");
}

ArrayGeometry::ArrayGeometry(Eigen::Matrix3Xd positions, const Vec3& normal,
                             const Vec3& horizontal, double element_area, int rows, int cols)
    : positions_(std::move(positions)),
      normal_(normal),
      horizontal_(horizontal),
      element_area_(element_area),
      rows_(rows),
      cols_(cols) {
  require(rows >= 1 && cols >= 1, "array needs at least one row and one column");
  require(positions_.cols() == static_cast<Eigen::Index>(rows) * cols,
          "position count must equal rows * cols");
  require(std::abs(normal_.norm() - 1.0) <= kUnitTolerance, "normal must be a unit vector");
  require(std::abs(horizontal_.norm() - 1.0) <= kUnitTolerance &&
              std::abs(horizontal_.dot(normal_)) <= kUnitTolerance,
          "horizontal axis must be a unit vector orthogonal to the normal");
  require(std::isfinite(element_area_) && element_area_ > 0.0, "element area must be positive");
  require(positions_.allFinite(), "positions must be finite");
  const Vec3 c = centroid();
  for (Eigen::Index m = 0; m < positions_.cols(); ++m) {
    require(std::abs((positions_.col(m) - c).dot(normal_)) <= kCoplanarTolerance,
            "positions must be coplanar in the plane orthogonal to the normal");
  }
}

ArrayGeometry ArrayGeometry::with_element_area(double area) const {
  return ArrayGeometry(positions_, normal_, horizontal_, area, rows_, cols_);
}

ArrayGeometry ArrayGeometry::translated(const Vec3& offset) const {
  Eigen::Matrix3Xd moved = positions_.colwise() + offset;
  return ArrayGeometry(std::move(moved), normal_, horizontal_, element_area_, rows_, cols_);
}

Vec3 horizontal_axis_for(const Vec3& normal) {
  Vec3 up = Vec3::UnitZ();
  if (std::abs(normal.dot(up)) > 1.0 - 1e-9) up = Vec3::UnitY();
  return up.cross(normal).normalized();
}

ArrayGeometry make_planar_array(int rows, int cols, double spacing, const Vec3& center,
                                const Vec3& normal) {
  require(rows >= 1 && cols >= 1, "rows and cols must be >= 1");
  require(std::isfinite(spacing) && spacing > 0.0, "spacing must be positive");
  require(center.allFinite(), "center must be finite");
  require(std::abs(normal.norm() - 1.0) <= kUnitTolerance, "normal must be a unit vector");

  const Vec3 h = horizontal_axis_for(normal);
  const Vec3 v = normal.cross(h);
  Eigen::Matrix3Xd positions(3, static_cast<Eigen::Index>(rows) * cols);
  const double col_mid = 0.5 * (cols - 1);
  const double row_mid = 0.5 * (rows - 1);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      positions.col(static_cast<Eigen::Index>(r) * cols + c) =
          center + (c - col_mid) * spacing * h + (r - row_mid) * spacing * v;
    }
  }
  return ArrayGeometry(std::move(positions), normal, h, spacing * spacing, rows, cols);
}

Vec3 propagation_vector(const ArrayGeometry& geom, Direction dir) {
  const double ce = std::cos(dir.elevation);
  return ce * std::cos(dir.azimuth) * geom.normal() + ce * std::sin(dir.azimuth) * geom.horizontal() +
         std::sin(dir.elevation) * geom.vertical();
}

CVector steering_vector(const ArrayGeometry& geom, Direction dir, const CarrierConfig& carrier) {
  dir.validate();
  carrier.validate();
  const Vec3 u = propagation_vector(geom, dir);
  const Eigen::VectorXd phase = carrier.wavenumber() * (geom.positions().transpose() * u);
  CVector a(phase.size());
  for (Eigen::Index m = 0; m < phase.size(); ++m) a[m] = std::polar(1.0, phase[m]);
  return a;
}

CVector steering_azimuth_derivative(const ArrayGeometry& geom, Direction dir,
                                    const CarrierConfig& carrier) {
  const CVector a = steering_vector(geom, dir, carrier);
  const double ce = std::cos(dir.elevation);
  const Vec3 du = ce * (-std::sin(dir.azimuth) * geom.normal() + std::cos(dir.azimuth) * geom.horizontal());
  const Eigen::VectorXd dphase = carrier.wavenumber() * (geom.positions().transpose() * du);
  return (kJ * dphase.cast<Complex>()).cwiseProduct(a);
}

}  // namespace wavebench
