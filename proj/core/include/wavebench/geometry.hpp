#pragma once

#include <vector>

#include "wavebench/types.hpp"

namespace wavebench {

/// Carrier parameters shared by every array and network model.
struct CarrierConfig {
  double wavelength = 0.01;           // meters
  double reference_impedance = 50.0;  // ohms, port reference for network models

  double wavenumber() const { return 2.0 * kPi / wavelength; }
  void validate() const;

  friend bool operator==(const CarrierConfig&, const CarrierConfig&) = default;
};

/// Direction relative to an aperture: azimuth is measured in the
/// (normal, horizontal) plane from broadside, elevation towards the
/// vertical axis.
struct Direction {
  double azimuth = 0.0;
  double elevation = 0.0;

  Direction operator-() const { return {-azimuth, -elevation}; }
  void validate() const;
};

/// Planar aperture on a rectangular grid. Element m = row * cols + col.
class ArrayGeometry {
 public:
  ArrayGeometry(Eigen::Matrix3Xd positions, const Vec3& normal, const Vec3& horizontal,
                double element_area, int rows, int cols);

  const Eigen::Matrix3Xd& positions() const { return positions_; }
  Vec3 position(Eigen::Index m) const { return positions_.col(m); }
  const Vec3& normal() const { return normal_; }
  const Vec3& horizontal() const { return horizontal_; }
  Vec3 vertical() const { return normal_.cross(horizontal_); }
  double element_area() const { return element_area_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Eigen::Index size() const { return positions_.cols(); }
  Vec3 centroid() const { return positions_.rowwise().mean(); }

  ArrayGeometry with_element_area(double area) const;
  /// Same aperture shifted rigidly by `offset`.
  ArrayGeometry translated(const Vec3& offset) const;

 private:
  Eigen::Matrix3Xd positions_;
  Vec3 normal_;
  Vec3 horizontal_;
  double element_area_;
  int rows_;
  int cols_;
};

/// In-plane horizontal axis used for a given normal: z x normal, falling
/// back to y x normal when the normal is (anti)parallel to z.
Vec3 horizontal_axis_for(const Vec3& normal);

/// Uniform rows x cols grid centered at `center`, columns along the
/// horizontal axis and rows along the vertical axis. Element area is the
/// unit cell, spacing^2.
ArrayGeometry make_planar_array(int rows, int cols, double spacing, const Vec3& center,
                                const Vec3& normal);

/// Unit propagation vector of `dir` in the frame of `geom`.
Vec3 propagation_vector(const ArrayGeometry& geom, Direction dir);

/// a_m = exp(+j k <p_m, u(dir)>).
CVector steering_vector(const ArrayGeometry& geom, Direction dir, const CarrierConfig& carrier);

/// d a / d azimuth, evaluated at `dir`.
CVector steering_azimuth_derivative(const ArrayGeometry& geom, Direction dir,
                                    const CarrierConfig& carrier);

}  // namespace wavebench
