#pragma once
#include <Eigen/Dense>
#include <array>
#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace qsim {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using CMat = Eigen::MatrixXcd;

struct SpinSystem {
  double J = 0.5;
  double I = 0.0;
  std::array<double, 3> g{2.0, 2.0, 2.0};
  std::map<std::pair<int, int>, double> cfp;  // (k,q) -> B_k^q, cm^-1
  std::array<double, 3> A{0.0, 0.0, 0.0};     // cm^-1
  double P = 0.0;                             // cm^-1
  double g_I = 2.0;

  void validate() const;
};

// Angular momentum matrices in the |m> basis, m descending.
struct AngularMomentum {
  CMat x, y, z, plus, minus;
};
AngularMomentum angular_momentum(double j);

CMat stevens_operator(int k, int q, double J);

// H in cm^-1 for a static field B in mT.
CMat build_hamiltonian(const SpinSystem& sys, const Vec3& B_mT);

struct EigenScheme {
  Eigen::VectorXd energies;
  CMat vectors;  // columns
  int dim() const { return static_cast<int>(energies.size()); }
};

EigenScheme diagonalize(const CMat& H);

inline constexpr double kDegeneracyTol = 1e-8;

struct QubitFrame {
  int ig = 1, ie = 2;  // 1-based
  double u_minus = 0.0, u_plus = 0.0;
  CVec3 N = CVec3::Zero();  // <u+|J|u->
  std::vector<double> energies;
  // <c|J_gamma|u-> and <c|J_gamma|u+> for every eigenstate c.
  std::vector<CVec3> elems_minus, elems_plus;

  double gap_cm() const { return u_plus - u_minus; }
  double gap_GHz() const;
  double omega_rad_us() const;
};

QubitFrame qubit_frame(const EigenScheme& scheme, const SpinSystem& sys, int ig, int ie,
                       double degeneracy_tol = kDegeneracyTol);

// Frame from tabulated energies and N (ddata path).
QubitFrame qubit_frame_from_data(std::vector<double> energies, int ig, int ie, const CVec3& N,
                                 double degeneracy_tol = kDegeneracyTol);

// mu_+- in J/T.
CVec3 transition_dipole(const CVec3& N, double g_I);

// Omega_R = mu.B1/hbar in rad/us, B1 in mT.
cplx rabi_frequency(const CVec3& mu_J_T, const Vec3& B1_mT);
cplx rabi_frequency_from_N(const CVec3& N, double g_I, const Vec3& B1_mT);

}  // namespace qsim
