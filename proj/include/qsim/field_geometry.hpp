#pragma once
#include <Eigen/Dense>

namespace qsim {

using Vec3 = Eigen::Vector3d;

struct FieldDirection {
  double theta = 0.0;  // rad
  double phi = 0.0;    // rad
  double weight = 1.0;
  double gamma_mag = 0.0;  // 1/Tn + 1/Te, us^-1
};

struct DriveConfig {
  double b1_mag = 0.0;  // mT
  double f_mw = 0.0;    // GHz
  double alpha = 0.0;   // rad
  double epsilon = 0.0; // rad

  void validate() const;
};

struct FrameAxes {
  Vec3 x, y, z;
};

Vec3 static_direction(double theta, double phi);
FrameAxes frame_axes(double theta, double phi, double epsilon);
Vec3 b1_vector(const DriveConfig& drive, double theta, double phi);

}  // namespace qsim
