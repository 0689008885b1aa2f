#include "fixtures.hpp"

#include <cmath>

#include "qsim/units.hpp"

namespace fixtures {

std::vector<double> toy_energies() { return {0.0, 0.12, 0.3, 0.41, 0.52, 0.6, 0.95}; }

CVec3 toy_N() { return {cplx(0.5, 0.0), cplx(0.0, 0.5), cplx(0.0, 0.0)}; }

QubitFrame toy_frame() { return qubit_frame_from_data(toy_energies(), 3, 6, toy_N()); }

RunConfig toy_gate_config() {
  RunConfig c;
  c.id = 7;
  c.ig = 3;
  c.ie = 6;
  c.nm = 0;
  c.temp = 5.0;
  c.geme = 0.0;
  c.gabe = 0.0;
  c.tmage = 1e-10;
  c.gfi = kToyGI;
  c.bcm = kToyB1;
  c.firr = kToyFirr;
  c.alp = 0.0;
  c.nang = 1;
  c.ro11 = 0.0;
  c.ro22 = 1.0;
  return c;
}

RunConfig toy_relax_config() {
  RunConfig c = toy_gate_config();
  c.geme = 1.0;
  c.gabe = -1.0;
  c.tmage = 1.0;
  return c;
}

Simulation toy_simulation(const RunConfig& cfg, std::vector<GateStep> steps) {
  Simulation s;
  s.cfg = cfg;
  s.cfg.nsa = static_cast<int>(steps.size());
  FieldBlock b;
  b.B = 0.0;
  DirectionBlock d;
  d.dir.theta = 0.0;
  d.dir.phi = 0.0;
  d.dir.weight = 1.0;
  d.dir.gamma_mag = 0.0;
  d.energies = toy_energies();
  d.N = toy_N();
  b.dirs.push_back(d);
  s.blocks.push_back(b);
  s.steps = std::move(steps);
  return s;
}

RateSet floor_rates() {
  RateSet r;
  r.gamma_mag_add = 1e-10;
  return r;
}

RateSet toy_relax_rates() {
  return effective_rates(0.0, 0.0, 0.0, 1.0, -1.0, 1.0, 0.3, 5.0);
}

QubitContext toy_context(const RateSet& rates, double firr) {
  DriveConfig d;
  d.b1_mag = kToyB1;
  d.f_mw = firr;
  return make_context(toy_frame(), rates, d, 0.0, 0.0, kToyGI);
}

GateStep rot(double dt, double eps_deg) { return {kFixedRotation, dt, units::deg_to_rad(eps_deg)}; }
GateStep free_fixed(double dt) { return {kFixedFree, dt, 0.0}; }
GateStep free_var() { return {kVariableFree, 0.0, 0.0}; }
GateStep rot_var(double eps_deg) { return {kVariableRotation, 0.0, units::deg_to_rad(eps_deg)}; }

std::vector<GateGolden> gate_goldens() {
  const double r2 = 0.35346, i2 = -0.35365;
  return {
      {"X", {rot(kPi, 0)}, {1.0, 0.0, 0.00001, 0.00018}},
      {"Y", {rot(kPi, 90)}, {1.0, 0.0, 0.00018, -0.00001}},
      {"H(pi/2)", {rot(kHalfPi, 90)}, {0.5, 0.5, 0.00009, 0.5}},
      {"H(0)", {rot(kHalfPi, 0)}, {0.5, 0.5, -0.5, 0.00009}},
      {"H(pi)", {rot(kHalfPi, 180)}, {0.5, 0.5, 0.5, -0.00009}},
      {"S", {rot(kHalfPi, 180), free_fixed(0.0278e-3)}, {0.5, 0.5, -0.00017, -0.5}},
      {"T", {rot(kHalfPi, 180), free_fixed(0.0139e-3)}, {0.5, 0.5, r2, i2}},
  };
}

SpinSystem vodmit2() {
  SpinSystem s;
  s.J = 0.5;
  s.I = 3.5;
  s.g = {1.986, 1.988, 1.970};
  s.A = {units::MHz_to_cm(138), units::MHz_to_cm(128), units::MHz_to_cm(413)};
  return s;
}

SpinSystem cumnt2() {
  SpinSystem s;
  s.J = 0.5;
  s.I = 1.5;
  s.g = {2.0215, 2.0215, 2.0898};
  s.A = {units::MHz_to_cm(118), units::MHz_to_cm(118), units::MHz_to_cm(495.4)};
  return s;
}

}  // namespace fixtures
