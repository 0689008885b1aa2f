#pragma once
#include <Eigen/Dense>
#include <complex>

#include "qsim/phonon_bath.hpp"

namespace qsim {

struct DensityState {
  double rho11 = 0.0, rho22 = 1.0, rho12r = 0.0, rho12i = 0.0;

  Eigen::Vector4d vec() const { return {rho11, rho22, rho12r, rho12i}; }
  static DensityState from_vec(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
  double trace() const { return rho11 + rho22; }
  double purity() const { return rho11 * rho11 + rho22 * rho22 + 2.0 * (rho12r * rho12r + rho12i * rho12i); }
  double det() const { return rho11 * rho22 - rho12r * rho12r - rho12i * rho12i; }
  Eigen::Matrix2cd matrix() const;
  void validate(double tol = 1e-10) const;
};

struct SystemMatrix {
  double A11 = 0.0, B11 = 0.0, D = 0.0;
  double delta = 0.0;  // rad/us
  double Q = 0.0, P = 0.0;
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
};

// Effective rates Ga, Ge, Gm in us^-1.
SystemMatrix system_matrix(double Ga, double Ge, double Gm, double delta, double Q, double P);
SystemMatrix system_matrix(const RateSet& rates, double delta, cplx omega_R);

// Analytic propagator built from one eigendecomposition, reusable for any dt.
class Propagator {
 public:
  explicit Propagator(const SystemMatrix& m, double cond_limit = 1e12);
  DensityState operator()(const DensityState& rho0, double dt) const;
  bool uses_fallback() const { return fallback_; }
  const Eigen::Vector4cd& eigenvalues() const { return lambda_; }
  double condition() const { return cond_; }

 private:
  SystemMatrix m_;
  Eigen::Vector4cd lambda_;
  Eigen::Matrix4cd V_;
  Eigen::PartialPivLU<Eigen::Matrix4cd> lu_;
  double cond_ = 1.0;
  bool fallback_ = false;
};

DensityState propagate(const DensityState& rho0, const SystemMatrix& m, double dt);

// Number of propagations that took the integrator path.
long propagator_fallback_count();

// Closed form for b1 = 0 and omega_MW = 0.
DensityState free_evolution(const DensityState& rho0, double Ga, double Ge, double Gm, double omega_pm, double dt);

// Fixed-step classic RK4 on d(rho)/dt = M rho.
DensityState numeric_oracle(const DensityState& rho0, const SystemMatrix& m, double dt, double step);

Eigen::Matrix2cd rotation_operator(cplx omega_R, double delta, double dt);
DensityState apply_rotation_unitary(const DensityState& rho0, const Eigen::Matrix2cd& R);

}  // namespace qsim
