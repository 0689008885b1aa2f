#pragma once
#include <complex>
#include <vector>

#include "qsim/spin_model.hpp"

namespace qsim {

struct VibrationMode {
  double nu = 0.0;     // cm^-1
  double mass = 0.0;   // c.a.m.u.
  double sigma = 0.0;  // cm^-1
};

// Spin-phonon coupling elements; units cm^-1 per Angstrom of normal coordinate
// (cm^-1 per Angstrom^2 for second order, cm^-2 per Angstrom^2 for real-process products).
struct CouplingData {
  int n_modes = 0;
  std::vector<cplx> first_order;  // <u+|H_i|u->
  // Unordered pairs i' >= i, row-major upper triangle; <u-|H_ii'|u+>.
  std::vector<cplx> virtual_upper;
  // Real-process products per ordered pair (i,i') and intermediate state.
  // Index: [i][i'][c], c running over the window's states in ascending energy.
  std::vector<std::vector<std::vector<cplx>>> direct, stokes, spont;

  cplx virtual_element(int i, int ip) const;
  static std::size_t upper_index(int n, int i, int ip);
};

// Intermediate-state windows (0-based eigenstate indices, ascending energy).
struct IntermediateWindows {
  std::vector<int> direct, stokes, spont;
};
IntermediateWindows intermediate_windows(const QubitFrame& frame);

struct RateSet {
  double gamma_ab = 0.0, gamma_em = 0.0, gamma_mag = 0.0;
  double gamma_ab_add = 0.0, gamma_em_add = 0.0, gamma_mag_add = 0.0;

  double Ga() const { return gamma_ab + gamma_ab_add; }
  double Ge() const { return gamma_em + gamma_em_add; }
  double Gm() const { return gamma_mag + gamma_mag_add; }
  void validate() const;
};

double bose_occupation(double nu_cm, double T);
// Gaussian envelope in cm (frequencies in cm^-1).
double gaussian_lineshape(double nu_target, double nu_center, double sigma);
// Converts (2pi/hbar^2) |amplitude[cm^-1]|^2 * lineshape[cm] into us^-1.
double rate_prefactor();
// hbar/(2 m omega) in Angstrom^2 for nu in cm^-1 and m in c.a.m.u.
double zero_point_amplitude_sq(double nu_cm, double mass_amu);

struct ModeContribution {
  int i = 0, ip = -1;  // ip < 0 for one-phonon entries
  double value = 0.0;
};

struct OnePhononResult {
  double gamma_ab = 0.0, gamma_em = 0.0;
  std::vector<ModeContribution> per_mode_ab, per_mode_em;
};

OnePhononResult one_phonon_rates(const QubitFrame& frame, const std::vector<VibrationMode>& modes,
                                 const CouplingData& coupling, double T, double sfgw);

enum class TwoPhononProcess { RDirect, LDirect, Stokes, AntiStokes, RSpont, LSpont };
inline constexpr int kTwoPhononProcesses = 6;

struct TwoPhononResult {
  double rate[kTwoPhononProcesses] = {0, 0, 0, 0, 0, 0};
  std::vector<ModeContribution> per_pair[kTwoPhononProcesses];
  int skipped_denominators = 0;

  double gamma_ab() const;
  double gamma_em() const;
};

inline constexpr double kDenominatorFloor = 1e-9;  // cm^-1

TwoPhononResult two_phonon_rates(const QubitFrame& frame, const std::vector<VibrationMode>& modes,
                                 const CouplingData& coupling, double T, double sfgw);

// gabe < 0 selects detailed balance for the additive absorption rate.
RateSet effective_rates(double gamma_ab, double gamma_em, double gamma_mag, double gamma_em_add,
                        double gabe, double gamma_mag_add, double gap_cm, double T);

// Percentage contributions above threshold, sorted descending.
std::vector<ModeContribution> mode_contributions(const std::vector<ModeContribution>& parts, double threshold_pct);

}  // namespace qsim
