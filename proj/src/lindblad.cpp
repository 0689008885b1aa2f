#include "qsim/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <atomic>
#include <cmath>

#include "qsim/error.hpp"

namespace qsim {

namespace {
std::atomic<long> g_fallbacks{0};
}

long propagator_fallback_count() { return g_fallbacks.load(); }

Eigen::Matrix2cd DensityState::matrix() const {
  Eigen::Matrix2cd m;
  m << rho11, cplx(rho12r, rho12i), cplx(rho12r, -rho12i), rho22;
  return m;
}

void DensityState::validate(double tol) const {
  if (!std::isfinite(rho11) || !std::isfinite(rho22) || !std::isfinite(rho12r) || !std::isfinite(rho12i))
    throw DataError("DensityState: non-finite entry");
  if (std::abs(trace() - 1.0) > 1e-9) throw DataError("DensityState: trace differs from 1");
  if (rho11 < -tol || rho22 < -tol || rho11 > 1 + tol || rho22 > 1 + tol)
    throw DataError("DensityState: population outside [0,1]");
  if (purity() > 1 + tol) throw DataError("DensityState: purity exceeds 1");
}

SystemMatrix system_matrix(double Ga, double Ge, double Gm, double delta, double Q, double P) {
  if (!(Ga >= 0.0 && Ge >= 0.0 && Gm >= 0.0)) throw ParameterError("system_matrix: rates must be non-negative");
  if (Ga == 0.0 && Ge == 0.0 && Gm == 0.0)
    throw ParameterError("system_matrix: at least one effective rate must be positive");
  SystemMatrix s;
  s.A11 = -(Ge + Gm / 2);
  s.B11 = Ga + Gm / 2;
  s.D = (Ga + Ge) / 2 + Gm;
  s.delta = delta;
  s.Q = Q;
  s.P = P;
  s.M << s.A11, s.B11, -Q, -P,
        -s.A11, -s.B11, Q, P,
         Q / 2, -Q / 2, -s.D, delta,
         P / 2, -P / 2, -delta, -s.D;
  return s;
}

SystemMatrix system_matrix(const RateSet& r, double delta, cplx omega_R) {
  r.validate();
  return system_matrix(r.Ga(), r.Ge(), r.Gm(), delta, omega_R.imag(), omega_R.real());
}

Propagator::Propagator(const SystemMatrix& m, double cond_limit) : m_(m) {
  Eigen::EigenSolver<Eigen::Matrix4d> es(m.M);
  if (es.info() != Eigen::Success) {
    fallback_ = true;
    return;
  }
  lambda_ = es.eigenvalues();
  V_ = es.eigenvectors();
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(V_);
  const auto& sv = svd.singularValues();
  cond_ = sv[3] > 0 ? sv[0] / sv[3] : INFINITY;
  if (!(cond_ <= cond_limit)) {
    fallback_ = true;
    return;
  }
  lu_.compute(V_);
}

DensityState Propagator::operator()(const DensityState& rho0, double dt) const {
  if (!(dt >= 0.0)) throw ParameterError("propagate: dt must be non-negative");
  if (dt == 0.0) return rho0;
  if (!fallback_) {
    Eigen::Vector4cd c = lu_.solve(rho0.vec().cast<cplx>());
    Eigen::Vector4cd e;
    for (int k = 0; k < 4; ++k) e[k] = std::exp(lambda_[k] * dt) * c[k];
    Eigen::Vector4cd r = V_ * e;
    // conjugate-pair structure makes the reconstruction real
    if (r.imag().cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, rho0.vec().cwiseAbs().maxCoeff()))
      return DensityState::from_vec(r.real());
  }
  ++g_fallbacks;
  const double norm = m_.M.cwiseAbs().rowwise().sum().maxCoeff();
  const double step = std::min(dt, 0.01 / std::max(norm, 1e-300));
  return numeric_oracle(rho0, m_, dt, step);
}

DensityState propagate(const DensityState& rho0, const SystemMatrix& m, double dt) { return Propagator(m)(rho0, dt); }

DensityState free_evolution(const DensityState& rho0, double Ga, double Ge, double Gm, double omega_pm, double dt) {
  if (!(Ga >= 0.0 && Ge >= 0.0 && Gm >= 0.0)) throw ParameterError("free_evolution: rates must be non-negative");
  if (Ga == 0.0 && Ge == 0.0 && Gm == 0.0)
    throw ParameterError("free_evolution: at least one effective rate must be positive");
  if (!(dt >= 0.0)) throw ParameterError("free_evolution: dt must be non-negative");
  const double sum = Ga + Ge + Gm;
  const double tr = rho0.rho11 + rho0.rho22;
  const double p11 = tr * (Ga + Gm / 2) / sum, p22 = tr * (Ge + Gm / 2) / sum;
  const double l2 = std::exp(-sum * dt);
  const double D = (Ga + Ge) / 2 + Gm;
  const double damp = std::exp(-D * dt), cw = std::cos(omega_pm * dt), sw = std::sin(omega_pm * dt);
  DensityState r;
  r.rho11 = p11 + (rho0.rho11 - p11) * l2;
  r.rho22 = p22 + (rho0.rho22 - p22) * l2;
  r.rho12r = damp * (rho0.rho12r * cw + rho0.rho12i * sw);
  r.rho12i = damp * (rho0.rho12i * cw - rho0.rho12r * sw);
  return r;
}

DensityState numeric_oracle(const DensityState& rho0, const SystemMatrix& m, double dt, double step) {
  if (!(step > 0.0)) throw ParameterError("numeric_oracle: step must be positive");
  if (!(dt >= 0.0)) throw ParameterError("numeric_oracle: dt must be non-negative");
  Eigen::Vector4d y = rho0.vec();
  const long n = static_cast<long>(std::ceil(dt / step - 1e-12));
  if (n == 0) return rho0;
  const double h = dt / static_cast<double>(n);
  const Eigen::Matrix4d& M = m.M;
  for (long k = 0; k < n; ++k) {
    Eigen::Vector4d k1 = M * y;
    Eigen::Vector4d k2 = M * (y + 0.5 * h * k1);
    Eigen::Vector4d k3 = M * (y + 0.5 * h * k2);
    Eigen::Vector4d k4 = M * (y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return DensityState::from_vec(y);
}

Eigen::Matrix2cd rotation_operator(cplx omega_R, double delta, double dt) {
  const double og = std::sqrt(std::norm(omega_R) + delta * delta);
  Eigen::Matrix2cd R = Eigen::Matrix2cd::Identity();
  if (og == 0.0 || dt == 0.0) return R;
  const double half = 0.5 * og * dt;
  const double c = std::cos(half), s = std::sin(half) / og;
  const cplx mi(0.0, -1.0);
  R(0, 0) = c + mi * s * delta;
  R(1, 1) = c - mi * s * delta;
  R(0, 1) = mi * s * std::conj(omega_R);
  R(1, 0) = mi * s * omega_R;
  return R;
}

DensityState apply_rotation_unitary(const DensityState& rho0, const Eigen::Matrix2cd& R) {
  if ((R * R.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    throw StructuralError("apply_rotation_unitary: operator is not unitary");
  Eigen::Matrix2cd r = R * rho0.matrix() * R.adjoint();
  return {r(0, 0).real(), r(1, 1).real(), r(0, 1).real(), r(0, 1).imag()};
}

}  // namespace qsim
