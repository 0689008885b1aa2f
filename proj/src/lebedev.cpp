#include "qsim/lebedev.hpp"

#include <algorithm>
#include <cmath>

#include "qsim/error.hpp"

namespace qsim {

namespace {

using Grid = std::vector<LebedevPoint>;

// Octahedral orbit generators of the Lebedev-Laikov tables.
void oh_axes(Grid& g, double v) {
  for (int a = 0; a < 3; ++a)
    for (double s : {1.0, -1.0}) {
      double p[3] = {0, 0, 0};
      p[a] = s;
      g.push_back({p[0], p[1], p[2], v});
    }
}

void oh_edges(Grid& g, double v) {
  const double a = std::sqrt(0.5);
  for (int zero = 0; zero < 3; ++zero)
    for (double s1 : {1.0, -1.0})
      for (double s2 : {1.0, -1.0}) {
        double p[3];
        int k = 0;
        for (int d = 0; d < 3; ++d) p[d] = (d == zero) ? 0.0 : (k++ == 0 ? s1 * a : s2 * a);
        g.push_back({p[0], p[1], p[2], v});
      }
}

void oh_corners(Grid& g, double v) {
  const double a = std::sqrt(1.0 / 3.0);
  for (double sx : {1.0, -1.0})
    for (double sy : {1.0, -1.0})
      for (double sz : {1.0, -1.0}) g.push_back({sx * a, sy * a, sz * a, v});
}

// (a, a, b) with b = sqrt(1 - 2a^2)
void oh_aab(Grid& g, double a, double v) {
  const double b = std::sqrt(1.0 - 2.0 * a * a);
  for (int odd = 0; odd < 3; ++odd)
    for (double s0 : {1.0, -1.0})
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
          double p[3];
          const double sg[3] = {s0, s1, s2};
          for (int d = 0; d < 3; ++d) p[d] = sg[d] * (d == odd ? b : a);
          g.push_back({p[0], p[1], p[2], v});
        }
}

// (a, b, 0) with b = sqrt(1 - a^2), all permutations
void oh_ab0(Grid& g, double a, double v) {
  const double b = std::sqrt(1.0 - a * a);
  const int perm[6][3] = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 0, 1}, {1, 2, 0}, {2, 1, 0}};
  for (const auto& pm : perm)
    for (double s0 : {1.0, -1.0})
      for (double s1 : {1.0, -1.0}) {
        double p[3] = {0, 0, 0};
        p[pm[0]] = s0 * a;
        p[pm[1]] = s1 * b;
        g.push_back({p[0], p[1], p[2], v});
      }
}

}  // namespace

std::vector<LebedevPoint> lebedev_grid(int n) {
  Grid g;
  switch (n) {
    case 6:
      oh_axes(g, 1.0 / 6.0);
      break;
    case 26:
      oh_axes(g, 0.4761904761904762e-1);
      oh_edges(g, 0.3809523809523810e-1);
      oh_corners(g, 0.3214285714285714e-1);
      break;
    case 110:
      oh_axes(g, 0.3828270494937162e-2);
      oh_corners(g, 0.9793737512487512e-2);
      oh_aab(g, 0.1851156353447362, 0.8211737283191111e-2);
      oh_aab(g, 0.6904210483822922, 0.9942814891178103e-2);
      oh_aab(g, 0.3956894730559419, 0.9595471336070963e-2);
      oh_ab0(g, 0.4783690288121502, 0.9694996361663028e-2);
      break;
    default:
      throw ParameterError("lebedev_grid: supported sizes are 6, 26 and 110");
  }
  return g;
}

std::vector<FieldDirection> lebedev_directions(int n) {
  std::vector<FieldDirection> out;
  for (const auto& p : lebedev_grid(n)) {
    FieldDirection d;
    d.theta = std::acos(std::clamp(p.z, -1.0, 1.0));
    d.phi = std::atan2(p.y, p.x);
    if (d.phi < 0) d.phi += 2.0 * M_PI;
    d.weight = p.w;
    out.push_back(d);
  }
  return out;
}

}  // namespace qsim
