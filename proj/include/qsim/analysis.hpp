#pragma once
#include <vector>

#include "qsim/lindblad.hpp"

namespace qsim {

double fidelity(const DensityState& rho, const DensityState& sigma);

struct BlochPoint {
  double x, y, z, purity;
};
BlochPoint bloch_coordinates(const DensityState& rho);

enum class FitModel { MonoFixed, MonoStretched, Biexp };

struct FitResult {
  FitModel model = FitModel::MonoFixed;
  double y0 = 0.0, a = 0.0, T = 0.0, x = 1.0;
  double a_slow = 0.0, T_slow = 0.0;  // biexponential only; a,T hold the fast part
  double residual = 0.0;              // Euclidean norm
  bool converged = false;
  bool degenerate = false;
  int iterations = 0;

  double eval(double t) const;
};

struct FitOptions {
  int max_iter = 200;
  double rel_tol = 1e-10;
  double x_min = 0.1, x_max = 3.0;
  bool freeze_y0 = false;  // biexponential only
};

FitResult fit_monoexp(const std::vector<double>& t, const std::vector<double>& y, bool stretched,
                      const FitOptions& opt = {});
FitResult fit_biexp(const std::vector<double>& t, const std::vector<double>& y, const FitOptions& opt = {});

}  // namespace qsim
