#include "qsim/phonon_bath.hpp"

#include <algorithm>
#include <cmath>

#include "qsim/error.hpp"
#include "qsim/units.hpp"

namespace qsim {

std::size_t CouplingData::upper_index(int n, int i, int ip) {
  // offset of row i in the packed upper triangle, then column ip
  return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i - 1) / 2 + (ip - i);
}

cplx CouplingData::virtual_element(int i, int ip) const {
  if (ip < i) std::swap(i, ip);
  return virtual_upper.at(upper_index(n_modes, i, ip));
}

IntermediateWindows intermediate_windows(const QubitFrame& f) {
  IntermediateWindows w;
  for (int c = 0; c < static_cast<int>(f.energies.size()); ++c) {
    if (c == f.ig - 1 || c == f.ie - 1) continue;
    const double e = f.energies[c];
    if (e >= f.u_minus && e <= f.u_plus) w.direct.push_back(c);
    if (e >= f.u_plus) w.stokes.push_back(c);
    if (e <= f.u_minus) w.spont.push_back(c);
  }
  return w;
}

void RateSet::validate() const {
  for (double r : {gamma_ab, gamma_em, gamma_mag, gamma_ab_add, gamma_em_add, gamma_mag_add})
    if (!(r >= 0.0)) throw ParameterError("RateSet: rates must be non-negative");
}

double bose_occupation(double nu, double T) {
  if (!(T > 0.0)) throw ParameterError("bose_occupation: temperature must be positive");
  if (!(nu > 0.0)) throw ParameterError("bose_occupation: frequency must be positive");
  return 1.0 / std::expm1(units::hc_over_k * nu / T);
}

double gaussian_lineshape(double nu_t, double nu_c, double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("gaussian_lineshape: width must be positive");
  const double z = (nu_t - nu_c) / sigma;
  return 1.0 / units::two_pi / (sigma * std::sqrt(units::two_pi)) * std::exp(-0.5 * z * z);
}

double rate_prefactor() {
  const double hbar2 = units::hbar_J_s * units::hbar_J_s;
  return units::two_pi / hbar2 * units::hc_J_cm * units::hc_J_cm / units::c_cm_s * 1e-6;
}

double zero_point_amplitude_sq(double nu, double mass) {
  const double omega = units::two_pi * units::c_cm_s * nu;
  return units::hbar_J_s / (2.0 * mass * units::amu_kg * omega) * 1e20;
}

namespace {

void check_modes(const std::vector<VibrationMode>& modes, const CouplingData& cd, double sfgw) {
  if (!(sfgw > 0.0)) throw ParameterError("sfgw must be positive");
  if (cd.n_modes != static_cast<int>(modes.size())) throw DataError("coupling data and mode list disagree in size");
  for (const auto& m : modes)
    if (!(m.nu > 0.0 && m.mass > 0.0 && m.sigma > 0.0)) throw DataError("vibration mode entries must be positive");
}

}  // namespace

OnePhononResult one_phonon_rates(const QubitFrame& frame, const std::vector<VibrationMode>& modes,
                                 const CouplingData& cd, double T, double sfgw) {
  OnePhononResult r;
  if (modes.empty()) return r;
  check_modes(modes, cd, sfgw);
  const double nu_pm = frame.gap_cm(), pref = rate_prefactor();
  for (int i = 0; i < cd.n_modes; ++i) {
    const auto& m = modes[i];
    const double n = bose_occupation(m.nu, T);
    const double base = pref * zero_point_amplitude_sq(m.nu, m.mass) * std::norm(cd.first_order[i]) *
                        gaussian_lineshape(nu_pm, m.nu, m.sigma * sfgw);
    const double ab = base * n, em = base * (n + 1.0);
    r.gamma_ab += ab;
    r.gamma_em += em;
    r.per_mode_ab.push_back({i, -1, ab});
    r.per_mode_em.push_back({i, -1, em});
  }
  return r;
}

double TwoPhononResult::gamma_ab() const {
  return rate[int(TwoPhononProcess::RDirect)] + rate[int(TwoPhononProcess::Stokes)] + rate[int(TwoPhononProcess::RSpont)];
}

double TwoPhononResult::gamma_em() const {
  return rate[int(TwoPhononProcess::LDirect)] + rate[int(TwoPhononProcess::AntiStokes)] + rate[int(TwoPhononProcess::LSpont)];
}

TwoPhononResult two_phonon_rates(const QubitFrame& frame, const std::vector<VibrationMode>& modes,
                                 const CouplingData& cd, double T, double sfgw) {
  TwoPhononResult r;
  if (modes.empty()) return r;
  check_modes(modes, cd, sfgw);
  const auto win = intermediate_windows(frame);
  const int R = cd.n_modes;
  const double nu_pm = frame.gap_cm(), um = frame.u_minus, up = frame.u_plus, pref = rate_prefactor();

  std::vector<double> occ(R), zp(R);
  for (int i = 0; i < R; ++i) {
    occ[i] = bose_occupation(modes[i].nu, T);
    zp[i] = zero_point_amplitude_sq(modes[i].nu, modes[i].mass);
  }

  struct Spec {
    TwoPhononProcess kind;
    bool gain_i, gain_ip, conj;
    const std::vector<int>* window;
    const std::vector<std::vector<std::vector<cplx>>>* data;
    double level;      // u- or u+
    double sign_nu_i;  // sign of hbar*omega_i in the denominator
    double res_i, res_ip;
  };
  const Spec specs[kTwoPhononProcesses] = {
      {TwoPhononProcess::RDirect, false, false, false, &win.direct, &cd.direct, um, +1, -1, -1},
      {TwoPhononProcess::LDirect, true, true, true, &win.direct, &cd.direct, up, -1, -1, -1},
      {TwoPhononProcess::Stokes, false, true, false, &win.stokes, &cd.stokes, um, +1, -1, +1},
      {TwoPhononProcess::AntiStokes, false, true, true, &win.stokes, &cd.stokes, up, +1, +1, -1},
      {TwoPhononProcess::RSpont, true, false, false, &win.spont, &cd.spont, um, -1, +1, -1},
      {TwoPhononProcess::LSpont, true, false, true, &win.spont, &cd.spont, up, -1, -1, +1},
  };

  for (const auto& s : specs) {
    auto& total = r.rate[int(s.kind)];
    for (int i = 0; i < R; ++i) {
      for (int ip = 0; ip < R; ++ip) {
        const double qi = std::sqrt(zp[i] * (s.gain_i ? occ[i] + 1.0 : occ[i]));
        const double qip = std::sqrt(zp[ip] * (s.gain_ip ? occ[ip] + 1.0 : occ[ip]));
        cplx v = cd.virtual_element(i, ip);
        if (s.conj) v = std::conj(v);
        cplx amp = 0.5 * v;
        const auto& prods = (*s.data)[i][ip];
        for (std::size_t k = 0; k < s.window->size(); ++k) {
          const double ec = frame.energies[(*s.window)[k]];
          const double den = s.level - ec + s.sign_nu_i * modes[i].nu;
          if (std::abs(den) < kDenominatorFloor) {
            ++r.skipped_denominators;
            continue;
          }
          cplx p = prods[k];
          if (s.conj) p = std::conj(p);
          amp += p / den;
        }
        amp *= qi * qip;
        const double mismatch = nu_pm + s.res_i * modes[i].nu + s.res_ip * modes[ip].nu;
        const double val =
            pref * std::norm(amp) * gaussian_lineshape(mismatch, 0.0, (modes[i].sigma + modes[ip].sigma) * sfgw);
        total += val;
        r.per_pair[int(s.kind)].push_back({i, ip, val});
      }
    }
  }
  return r;
}

RateSet effective_rates(double gamma_ab, double gamma_em, double gamma_mag, double gamma_em_add, double gabe,
                        double gamma_mag_add, double gap_cm, double T) {
  RateSet rs;
  rs.gamma_ab = gamma_ab;
  rs.gamma_em = gamma_em;
  rs.gamma_mag = gamma_mag;
  rs.gamma_em_add = gamma_em_add;
  rs.gamma_mag_add = gamma_mag_add;
  if (gabe == -1.0) {
    if (!(T > 0.0)) throw ParameterError("effective_rates: detailed balance needs a positive temperature");
    rs.gamma_ab_add = gamma_em_add * std::exp(-units::hc_over_k * gap_cm / T);
  } else if (gabe >= 0.0) {
    rs.gamma_ab_add = gabe;
  } else {
    throw ParameterError("effective_rates: gabe must be -1 or non-negative");
  }
  rs.validate();
  return rs;
}

std::vector<ModeContribution> mode_contributions(const std::vector<ModeContribution>& parts, double threshold) {
  if (!(threshold > 0.0)) throw ParameterError("mode_contributions: threshold must be positive");
  double total = 0.0;
  for (const auto& p : parts) total += p.value;
  std::vector<ModeContribution> out;
  if (total <= 0.0) return out;
  for (const auto& p : parts) {
    const double pct = 100.0 * p.value / total;
    if (pct > threshold) out.push_back({p.i, p.ip, pct});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
  return out;
}

}  // namespace qsim
