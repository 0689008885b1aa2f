#include "qsim/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qsim/error.hpp"

namespace qsim {

double fidelity(const DensityState& rho, const DensityState& sigma) {
  rho.validate();
  sigma.validate();
  auto clamp_det = [](double d) {
    if (d < -1e-12) throw DataError("fidelity: density matrix is not positive semidefinite");
    return std::max(d, 0.0);
  };
  const double tr = rho.rho11 * sigma.rho11 + rho.rho22 * sigma.rho22 +
                    2.0 * (rho.rho12r * sigma.rho12r + rho.rho12i * sigma.rho12i);
  return tr + 2.0 * std::sqrt(clamp_det(rho.det()) * clamp_det(sigma.det()));
}

BlochPoint bloch_coordinates(const DensityState& r) {
  return {2.0 * r.rho12r, -2.0 * r.rho12i, r.rho11 - r.rho22, r.purity()};
}

double FitResult::eval(double t) const {
  switch (model) {
    case FitModel::Biexp:
      return y0 + a * std::exp(-t / T) + a_slow * std::exp(-t / T_slow);
    default:
      return y0 + a * std::exp(-std::pow(t / T, x));
  }
}

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Model with residual and analytic Jacobian over a parameter vector.
struct Problem {
  std::function<void(const Vec& p, Vec& f, Mat& J)> eval;
  std::function<void(Vec& p)> project;
};

struct LmOut {
  Vec p;
  double cost = INFINITY;
  bool converged = false;
  int iters = 0;
};

LmOut levenberg_marquardt(const Problem& pr, Vec p, const Eigen::VectorXd& y, const FitOptions& opt) {
  const Eigen::Index n = p.size();
  Vec f(y.size());
  Mat J(y.size(), n);
  pr.eval(p, f, J);
  Vec r = f - y;
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  LmOut out;
  for (int it = 1; it <= opt.max_iter; ++it) {
    out.iters = it;
    Mat A = J.transpose() * J;
    Vec g = J.transpose() * r;
    bool accepted = false;
    while (lambda < 1e20) {
      Mat Ad = A;
      for (Eigen::Index k = 0; k < n; ++k) Ad(k, k) += lambda * std::max(A(k, k), 1e-12);
      Vec step = Ad.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda *= 10;
        continue;
      }
      Vec pn = p + step;
      pr.project(pn);
      Vec fn(y.size());
      Mat Jn(y.size(), n);
      pr.eval(pn, fn, Jn);
      Vec rn = fn - y;
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn <= cost) {
        const Vec dp = pn - p;
        double rel = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) rel = std::max(rel, std::abs(dp[k]) / (std::abs(pn[k]) + 1e-12));
        p = pn;
        J = Jn;
        r = rn;
        const double prev = cost;
        cost = cn;
        lambda = std::max(lambda / 10, 1e-12);
        accepted = true;
        if (rel < opt.rel_tol || prev - cn <= 1e-30 * std::max(prev, 1e-300)) out.converged = true;
        break;
      }
      lambda *= 10;
    }
    if (!accepted) {
      out.converged = true;  // no descent direction left: stationary point
      break;
    }
    if (out.converged) break;
  }
  out.p = p;
  out.cost = cost;
  return out;
}

void check_series(const std::vector<double>& t, const std::vector<double>& y, std::size_t min_pts) {
  if (t.size() != y.size()) throw DataError("fit: abscissa and ordinate lengths differ");
  if (t.size() < min_pts) throw DataError("fit: too few points");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (!(t[k] > t[k - 1])) throw DataError("fit: abscissa must be strictly increasing");
  for (double v : y)
    if (!std::isfinite(v)) throw DataError("fit: non-finite ordinate");
}

// Time scale at which the curve has fallen to 1/e of its initial offset.
double e_fold_guess(const std::vector<double>& t, const std::vector<double>& y) {
  const double yend = y.back(), amp = y.front() - yend;
  for (std::size_t k = 1; k < y.size(); ++k)
    if (std::abs(y[k] - yend) <= std::abs(amp) / M_E) return std::max(t[k] - t.front(), 1e-12);
  return std::max((t.back() - t.front()) / 3.0, 1e-12);
}

std::vector<double> start_guesses(double T0) {
  std::vector<double> g;
  for (int k = 0; k < 4; ++k) g.push_back(T0 * std::pow(10.0, -1.0 + 2.0 * k / 3.0));
  return g;
}

// Linear least squares for y0, a given basis exp(-(t/T)^x).
std::pair<double, double> linear_init(const std::vector<double>& t, const std::vector<double>& y, double T, double x) {
  Mat B(t.size(), 2);
  Vec yy(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    B(k, 0) = 1.0;
    B(k, 1) = std::exp(-std::pow(t[k] / T, x));
    yy[k] = y[k];
  }
  Vec s = B.colPivHouseholderQr().solve(yy);
  return {s[0], s[1]};
}

bool flat(const std::vector<double>& y) {
  auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  return *hi - *lo <= 1e-14 * std::max(1.0, std::abs(*hi));
}

double mean(const std::vector<double>& y) {
  double s = 0;
  for (double v : y) s += v;
  return s / y.size();
}

}  // namespace

FitResult fit_monoexp(const std::vector<double>& t, const std::vector<double>& y, bool stretched,
                      const FitOptions& opt) {
  check_series(t, y, 4);
  FitResult best;
  best.model = stretched ? FitModel::MonoStretched : FitModel::MonoFixed;
  if (flat(y)) {
    best.y0 = mean(y);
    best.T = e_fold_guess(t, y);
    best.converged = true;
    best.degenerate = true;
    return best;
  }
  Vec yv = Eigen::Map<const Vec>(y.data(), y.size());
  // p = (y0, a, ln T[, x])
  Problem pr;
  pr.eval = [&](const Vec& p, Vec& f, Mat& J) {
    const double y0 = p[0], a = p[1], T = std::exp(p[2]), x = stretched ? p[3] : 1.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double s = t[k] / T;
      const double u = s > 0 ? std::pow(s, x) : 0.0;
      const double e = std::exp(-u);
      f[k] = y0 + a * e;
      J(k, 0) = 1.0;
      J(k, 1) = e;
      J(k, 2) = a * e * u * x;  // d/d lnT
      if (stretched) J(k, 3) = s > 0 ? -a * e * u * std::log(s) : 0.0;
    }
  };
  pr.project = [&](Vec& p) {
    if (stretched) p[3] = std::clamp(p[3], opt.x_min, opt.x_max);
    p[2] = std::clamp(p[2], -700.0, 700.0);
  };
  double best_cost = INFINITY;
  for (double T0 : start_guesses(e_fold_guess(t, y))) {
    auto [y0, a] = linear_init(t, y, T0, 1.0);
    Vec p(stretched ? 4 : 3);
    p[0] = y0;
    p[1] = a;
    p[2] = std::log(T0);
    if (stretched) p[3] = 1.0;
    auto o = levenberg_marquardt(pr, p, yv, opt);
    if (o.cost < best_cost) {
      best_cost = o.cost;
      best.y0 = o.p[0];
      best.a = o.p[1];
      best.T = std::exp(o.p[2]);
      best.x = stretched ? o.p[3] : 1.0;
      best.converged = o.converged;
      best.iterations = o.iters;
    }
  }
  best.residual = std::sqrt(best_cost);
  const double scale = std::max(1e-300, (yv.maxCoeff() - yv.minCoeff()));
  best.degenerate = std::abs(best.a) <= 1e-10 * std::max(scale, std::abs(best.y0));
  return best;
}

FitResult fit_biexp(const std::vector<double>& t, const std::vector<double>& y, const FitOptions& opt) {
  check_series(t, y, 6);
  FitResult best;
  best.model = FitModel::Biexp;
  if (flat(y)) {
    best.y0 = mean(y);
    best.T = best.T_slow = e_fold_guess(t, y);
    best.converged = true;
    best.degenerate = true;
    return best;
  }
  Vec yv = Eigen::Map<const Vec>(y.data(), y.size());
  const bool fy = opt.freeze_y0;
  const int off = fy ? 0 : 1;
  // p = ([y0,] af, ln Tf, as, ln Ts)
  Problem pr;
  pr.eval = [&](const Vec& p, Vec& f, Mat& J) {
    const double y0 = fy ? 0.0 : p[0];
    const double af = p[off], Tf = std::exp(p[off + 1]), as = p[off + 2], Ts = std::exp(p[off + 3]);
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double uf = t[k] / Tf, us = t[k] / Ts;
      const double ef = std::exp(-uf), es = std::exp(-us);
      f[k] = y0 + af * ef + as * es;
      if (!fy) J(k, 0) = 1.0;
      J(k, off) = ef;
      J(k, off + 1) = af * ef * uf;
      J(k, off + 2) = es;
      J(k, off + 3) = as * es * us;
    }
  };
  pr.project = [&](Vec& p) {
    p[off + 1] = std::clamp(p[off + 1], -700.0, 700.0);
    p[off + 3] = std::clamp(p[off + 3], -700.0, 700.0);
  };
  const auto g = start_guesses(e_fold_guess(t, y));
  const std::pair<int, int> pairs[4] = {{0, 2}, {1, 3}, {0, 3}, {1, 2}};
  double best_cost = INFINITY;
  for (auto [i, j] : pairs) {
    const double Tf = g[i], Ts = g[j];
    Mat B(t.size(), fy ? 2 : 3);
    for (std::size_t k = 0; k < t.size(); ++k) {
      int c = 0;
      if (!fy) B(k, c++) = 1.0;
      B(k, c++) = std::exp(-t[k] / Tf);
      B(k, c) = std::exp(-t[k] / Ts);
    }
    Vec lin = B.colPivHouseholderQr().solve(yv);
    Vec p(4 + off);
    if (!fy) p[0] = lin[0];
    p[off] = lin[off];
    p[off + 1] = std::log(Tf);
    p[off + 2] = lin[off + 1];
    p[off + 3] = std::log(Ts);
    auto o = levenberg_marquardt(pr, p, yv, opt);
    if (o.cost < best_cost) {
      best_cost = o.cost;
      best.y0 = fy ? 0.0 : o.p[0];
      best.a = o.p[off];
      best.T = std::exp(o.p[off + 1]);
      best.a_slow = o.p[off + 2];
      best.T_slow = std::exp(o.p[off + 3]);
      best.converged = o.converged;
      best.iterations = o.iters;
    }
  }
  if (best.T > best.T_slow) {
    std::swap(best.T, best.T_slow);
    std::swap(best.a, best.a_slow);
  }
  best.residual = std::sqrt(best_cost);
  const double scale = std::max(1e-300, yv.maxCoeff() - yv.minCoeff());
  best.degenerate = std::abs(best.T_slow - best.T) <= 1e-3 * best.T_slow || std::abs(best.a) <= 1e-6 * scale ||
                    std::abs(best.a_slow) <= 1e-6 * scale;
  return best;
}

}  // namespace qsim
