#pragma once
#include <vector>

#include "qsim/field_geometry.hpp"

namespace qsim {

struct LebedevPoint {
  double x, y, z, w;
};

// Supported orders: 6, 26, 110. Weights sum to one.
std::vector<LebedevPoint> lebedev_grid(int n);
std::vector<FieldDirection> lebedev_directions(int n);

}  // namespace qsim
