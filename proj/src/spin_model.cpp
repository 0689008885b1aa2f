#include "qsim/spin_model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "qsim/error.hpp"
#include "qsim/units.hpp"

namespace qsim {

namespace {

bool is_half_integer(double v) {
  double twice = 2.0 * v;
  return v >= 0.0 && std::abs(twice - std::round(twice)) < 1e-12;
}

int multiplicity(double j) { return static_cast<int>(std::lround(2.0 * j)) + 1; }

CMat poly_in_jz(const std::vector<double>& coeff, const CMat& jz) {
  // coeff[n] multiplies Jz^n
  const auto d = jz.rows();
  CMat out = CMat::Zero(d, d);
  CMat pw = CMat::Identity(d, d);
  for (double c : coeff) {
    out += c * pw;
    pw = pw * jz;
  }
  return out;
}

std::vector<double> stevens_poly(int k, int q, double X) {
  switch (k) {
    case 2:
      switch (q) {
        case 0: return {-X, 0, 3};
        case 1: return {0, 1};
        case 2: return {1};
      }
      break;
    case 4:
      switch (q) {
        case 0: return {3 * X * X - 6 * X, 0, -(30 * X - 25), 0, 35};
        case 1: return {0, -(3 * X + 1), 0, 7};
        case 2: return {-X - 5, 0, 7};
        case 3: return {0, 1};
        case 4: return {1};
      }
      break;
    case 6:
      switch (q) {
        case 0:
          return {-5 * X * X * X + 40 * X * X - 60 * X, 0, 105 * X * X - 525 * X + 294, 0,
                  -(315 * X - 735), 0, 231};
        case 1: return {0, 5 * X * X - 10 * X + 12, 0, -(30 * X - 15), 0, 33};
        case 2: return {X * X + 10 * X + 102, 0, -(18 * X + 123), 0, 33};
        case 3: return {0, -(3 * X + 59), 0, 11};
        case 4: return {-X - 38, 0, 11};
        case 5: return {0, 1};
        case 6: return {1};
      }
      break;
  }
  throw ParameterError("stevens_operator: unsupported (k,q)");
}

}  // namespace

void SpinSystem::validate() const {
  if (!is_half_integer(J) || J < 0.5) throw ParameterError("SpinSystem: J must be a positive half-integer");
  if (!is_half_integer(I)) throw ParameterError("SpinSystem: I must be a non-negative half-integer");
  for (double gi : g)
    if (!(gi > 0.0)) throw ParameterError("SpinSystem: g factors must be positive");
  for (const auto& [kq, v] : cfp) {
    auto [k, q] = kq;
    if ((k != 2 && k != 4 && k != 6) || std::abs(q) > k)
      throw ParameterError("SpinSystem: invalid crystal-field index");
    if (J == 0.5 && v != 0.0) throw ParameterError("SpinSystem: crystal-field terms must vanish for J=1/2");
  }
}

AngularMomentum angular_momentum(double j) {
  const int d = multiplicity(j);
  AngularMomentum a;
  a.z = CMat::Zero(d, d);
  a.plus = CMat::Zero(d, d);
  for (int r = 0; r < d; ++r) {
    double m = j - r;
    a.z(r, r) = m;
    if (r > 0) a.plus(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  a.minus = a.plus.adjoint();
  a.x = 0.5 * (a.plus + a.minus);
  a.y = cplx(0, -0.5) * (a.plus - a.minus);
  return a;
}

CMat stevens_operator(int k, int q, double J) {
  if ((k != 2 && k != 4 && k != 6) || std::abs(q) > k)
    throw ParameterError("stevens_operator: invalid (k,q) = (" + std::to_string(k) + "," + std::to_string(q) + ")");
  if (!is_half_integer(J) || J < 0.5) throw ParameterError("stevens_operator: invalid J");
  const int d = multiplicity(J);
  if (d <= k) return CMat::Zero(d, d);  // rank-k tensor vanishes for 2J < k

  auto a = angular_momentum(J);
  const double X = J * (J + 1);
  const int aq = std::abs(q);
  CMat F = poly_in_jz(stevens_poly(k, aq, X), a.z);
  if (q == 0) return F;

  CMat jp = CMat::Identity(d, d), jm = CMat::Identity(d, d);
  for (int n = 0; n < aq; ++n) {
    jp = jp * a.plus;
    jm = jm * a.minus;
  }
  if (q > 0) {
    CMat s = jp + jm;
    return 0.25 * (F * s + s * F);
  }
  CMat s = jp - jm;
  return cplx(0, -0.25) * (F * s + s * F);
}

CMat build_hamiltonian(const SpinSystem& sys, const Vec3& B) {
  sys.validate();
  const int dj = multiplicity(sys.J), di = multiplicity(sys.I);
  auto aj = angular_momentum(sys.J);
  CMat eye_i = CMat::Identity(di, di), eye_j = CMat::Identity(dj, dj);

  auto kron = [](const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
  };

  CMat el = CMat::Zero(dj, dj);
  for (const auto& [kq, v] : sys.cfp)
    if (v != 0.0) el += v * stevens_operator(kq.first, kq.second, sys.J);
  const CMat* J3[3] = {&aj.x, &aj.y, &aj.z};
  for (int a = 0; a < 3; ++a) el += units::mu_B_cm_per_mT * sys.g[a] * B[a] * *J3[a];

  CMat H = kron(el, eye_i);
  if (di > 1) {
    auto ai = angular_momentum(sys.I);
    const CMat* I3[3] = {&ai.x, &ai.y, &ai.z};
    for (int a = 0; a < 3; ++a)
      if (sys.A[a] != 0.0) H += sys.A[a] * kron(*J3[a], *I3[a]);
    if (sys.P != 0.0) H += sys.P * kron(eye_j, ai.z * ai.z);
  }
  return 0.5 * (H + H.adjoint());
}

EigenScheme diagonalize(const CMat& H) {
  if (H.rows() != H.cols()) throw StructuralError("diagonalize: matrix is not square");
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw StructuralError("diagonalize: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  if (es.info() != Eigen::Success) throw NumericalError("diagonalize: eigensolver failed");
  EigenScheme s{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index c = 0; c < s.vectors.cols(); ++c) {
    Eigen::Index best = 0;
    double mag = -1.0;
    for (Eigen::Index r = 0; r < s.vectors.rows(); ++r) {
      double m = std::abs(s.vectors(r, c));
      if (m > mag + 1e-12) {
        mag = m;
        best = r;
      }
    }
    cplx ph = std::conj(s.vectors(best, c)) / mag;
    s.vectors.col(c) *= ph;
    s.vectors(best, c) = mag;
  }
  return s;
}

double QubitFrame::gap_GHz() const { return units::cm_to_GHz(gap_cm()); }
double QubitFrame::omega_rad_us() const { return units::cm_to_rad_us(gap_cm()); }

namespace {

void check_frame(const std::vector<double>& E, int ig, int ie, double tol) {
  const int dim = static_cast<int>(E.size());
  if (ig >= ie) throw ParameterError("qubit_frame: ig must be smaller than ie");
  if (ig < 1 || ie > dim) throw ParameterError("qubit_frame: level index out of range");
  const double um = E[ig - 1], up = E[ie - 1];
  if (!(up > um)) throw DegeneracyError("qubit_frame: u+ must lie strictly above u-");
  for (int c = 0; c < dim; ++c) {
    if (c == ig - 1 || c == ie - 1) continue;
    if (std::abs(E[c] - um) < tol || std::abs(E[c] - up) < tol)
      throw DegeneracyError("qubit_frame: qubit level " + std::to_string(c + 1) + " is degenerate");
  }
}

}  // namespace

QubitFrame qubit_frame(const EigenScheme& scheme, const SpinSystem& sys, int ig, int ie, double tol) {
  std::vector<double> E(scheme.energies.data(), scheme.energies.data() + scheme.dim());
  check_frame(E, ig, ie, tol);
  const int dj = multiplicity(sys.J), di = multiplicity(sys.I);
  if (dj * di != scheme.dim()) throw ParameterError("qubit_frame: dimension does not match the spin system");

  auto aj = angular_momentum(sys.J);
  CMat eye_i = CMat::Identity(di, di);
  std::array<CMat, 3> Jfull;
  const CMat* J3[3] = {&aj.x, &aj.y, &aj.z};
  for (int a = 0; a < 3; ++a) {
    Jfull[a] = CMat::Zero(dj * di, dj * di);
    for (int r = 0; r < dj; ++r)
      for (int c = 0; c < dj; ++c) Jfull[a].block(r * di, c * di, di, di) = (*J3[a])(r, c) * eye_i;
  }

  QubitFrame f;
  f.ig = ig;
  f.ie = ie;
  f.energies = E;
  f.u_minus = E[ig - 1];
  f.u_plus = E[ie - 1];
  const auto& V = scheme.vectors;
  auto vm = V.col(ig - 1), vp = V.col(ie - 1);
  std::array<Eigen::VectorXcd, 3> Jvm, Jvp;
  for (int a = 0; a < 3; ++a) {
    Jvm[a] = Jfull[a] * vm;
    Jvp[a] = Jfull[a] * vp;
    f.N[a] = vp.dot(Jvm[a]);
  }
  for (int c = 0; c < scheme.dim(); ++c) {
    CVec3 em, ep;
    for (int a = 0; a < 3; ++a) {
      em[a] = V.col(c).dot(Jvm[a]);
      ep[a] = V.col(c).dot(Jvp[a]);
    }
    f.elems_minus.push_back(em);
    f.elems_plus.push_back(ep);
  }
  return f;
}

QubitFrame qubit_frame_from_data(std::vector<double> energies, int ig, int ie, const CVec3& N, double tol) {
  check_frame(energies, ig, ie, tol);
  QubitFrame f;
  f.ig = ig;
  f.ie = ie;
  f.u_minus = energies[ig - 1];
  f.u_plus = energies[ie - 1];
  f.energies = std::move(energies);
  f.N = N;
  return f;
}

CVec3 transition_dipole(const CVec3& N, double g_I) { return units::mu_B_J_T * g_I * N; }

cplx rabi_frequency(const CVec3& mu, const Vec3& B1) {
  cplx s = mu[0] * B1[0] + mu[1] * B1[1] + mu[2] * B1[2];
  return s * 1e-3 / units::hbar_J_s * 1e-6;
}

cplx rabi_frequency_from_N(const CVec3& N, double g_I, const Vec3& B1) {
  cplx s = N[0] * B1[0] + N[1] * B1[1] + N[2] * B1[2];
  return units::two_pi * units::mu_B_MHz_per_mT * g_I * s;
}

}  // namespace qsim
