#include "qsim/field_geometry.hpp"

#include <cmath>

#include "qsim/error.hpp"

namespace qsim {

void DriveConfig::validate() const {
  if (!(b1_mag >= 0.0)) throw ParameterError("DriveConfig: |B1| must be non-negative");
  if (!(f_mw >= 0.0)) throw ParameterError("DriveConfig: microwave frequency must be non-negative");
}

Vec3 static_direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

FrameAxes frame_axes(double theta, double phi, double epsilon) {
  // n1 keeps its closed form at the poles so the frame follows the phi label.
  const Vec3 n1(-std::sin(phi), std::cos(phi), 0.0);
  const Vec3 n2(std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta));
  const double ce = std::cos(epsilon), se = std::sin(epsilon);
  return {n2 * ce + n1 * se, -n2 * se + n1 * ce, static_direction(theta, phi)};
}

Vec3 b1_vector(const DriveConfig& drive, double theta, double phi) {
  drive.validate();
  const auto ax = frame_axes(theta, phi, drive.epsilon);
  return drive.b1_mag * (ax.y * std::cos(drive.alpha) + ax.z * std::sin(drive.alpha));
}

}  // namespace qsim
