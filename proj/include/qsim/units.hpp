#pragma once

namespace qsim::units {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double c_cm_s = 29979245800.0;
inline constexpr double hc_J_cm = 1.9864459e-23;
inline constexpr double h_J_s = hc_J_cm / c_cm_s;
inline constexpr double hbar_J_s = h_J_s / two_pi;
inline constexpr double k_B = 1.380649e-23;
inline constexpr double hc_over_k = 1.4388;  // K cm
inline constexpr double amu_kg = 1.66053906660e-27;

// Bohr magneton over h.
inline constexpr double mu_B_MHz_per_mT = 13.996245;
inline constexpr double mu_B_cm_per_mT = mu_B_MHz_per_mT * 1e6 / c_cm_s;
inline constexpr double mu_B_J_T = mu_B_MHz_per_mT * 1e9 * h_J_s;

inline constexpr double MHz_to_cm(double f) { return f * 1e6 / c_cm_s; }
inline constexpr double cm_to_GHz(double e) { return e * c_cm_s * 1e-9; }
inline constexpr double GHz_to_cm(double f) { return f * 1e9 / c_cm_s; }
// Energy gap in cm^-1 to angular frequency in rad/us.
inline constexpr double cm_to_rad_us(double e) { return two_pi * e * c_cm_s * 1e-6; }
inline constexpr double GHz_to_rad_us(double f) { return two_pi * f * 1e3; }
inline constexpr double deg_to_rad(double d) { return d * pi / 180.0; }

}  // namespace qsim::units
