#pragma once
#include <vector>

#include "qsim/io.hpp"
#include "qsim/sequence.hpp"
#include "qsim/workflow.hpp"

namespace fixtures {

using namespace qsim;

// Seven-level toy scheme, qubit pair 3 <-> 6 at 0.3 / 0.6 cm^-1.
std::vector<double> toy_energies();
CVec3 toy_N();
QubitFrame toy_frame();

inline constexpr double kToyB1 = 1.5;         // mT
inline constexpr double kToyFirr = 8.99377;   // GHz
inline constexpr double kToyGI = 2.0;
inline constexpr double kPi = 23.816e-3;      // us
inline constexpr double kHalfPi = 11.908e-3;  // us

RunConfig toy_gate_config();
RunConfig toy_relax_config();
Simulation toy_simulation(const RunConfig& cfg, std::vector<GateStep> steps);
QubitContext toy_context(const RateSet& rates, double firr = kToyFirr);
RateSet floor_rates();
RateSet toy_relax_rates();

GateStep rot(double dt_us, double eps_deg);
GateStep free_fixed(double dt_us);
GateStep free_var();
GateStep rot_var(double eps_deg = 0.0);

struct GateGolden {
  const char* name;
  std::vector<GateStep> steps;
  DensityState expected;
};
// Final density matrices quoted for the toy gate runs, starting from |u->.
std::vector<GateGolden> gate_goldens();

// Published spin-Hamiltonian parameter sets.
SpinSystem vodmit2();
SpinSystem cumnt2();

}  // namespace fixtures
