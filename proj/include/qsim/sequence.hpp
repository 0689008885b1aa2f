#pragma once
#include <vector>

#include "qsim/field_geometry.hpp"
#include "qsim/lindblad.hpp"
#include "qsim/phonon_bath.hpp"
#include "qsim/spin_model.hpp"

namespace qsim {

enum StepCode : int { kVariableFree = 0, kFixedFree = 1, kFixedRotation = 2, kVariableRotation = 3 };

struct GateStep {
  int code = kFixedFree;
  double duration = 0.0;  // us, codes 1/2
  double epsilon = 0.0;   // rad, codes 2/3
};

struct SweepConfig {
  double t_start = 0.0, t_end = 1.0;
  int n_points = 2;
  void validate() const;
};

// Everything a sequence needs for one static-field direction.
struct QubitContext {
  double omega_pm = 0.0;  // rad/us
  CVec3 N = CVec3::Zero();
  double g_I = 2.0;
  RateSet rates;
  DriveConfig drive;
  double theta = 0.0, phi = 0.0;
};

QubitContext make_context(const QubitFrame& frame, const RateSet& rates, const DriveConfig& drive, double theta,
                          double phi, double g_I);

struct RunResult {
  DensityState final_state;
  std::vector<DensityState> trace;  // state after each step
};

int variable_step_count(const std::vector<GateStep>& steps);

// Per-step propagators built once and reused across tau values.
class CompiledSequence {
 public:
  CompiledSequence(std::vector<GateStep> steps, const QubitContext& ctx, double epsilon_offset = 0.0);
  RunResult run(const DensityState& rho0, double tau) const;
  const std::vector<GateStep>& steps() const { return steps_; }

 private:
  std::vector<GateStep> steps_;
  QubitContext ctx_;
  std::vector<Propagator> props_;  // one per step, rotations only
  std::vector<int> prop_index_;
};

RunResult run_sequence(const std::vector<GateStep>& steps, const DensityState& rho0, const QubitContext& ctx,
                       double tau, double epsilon_offset = 0.0);

double mz(const DensityState& rho);
double mxy_abs(const DensityState& rho);

std::vector<double> tau_grid(const SweepConfig& sweep);

struct SweepRow {
  double time = 0.0, mz = 0.0, mxy = 0.0;
};

std::vector<SweepRow> sweep_tau(const std::vector<GateStep>& steps, const DensityState& rho0, const QubitContext& ctx,
                                const SweepConfig& sweep, int threads = 1, double epsilon_offset = 0.0,
                                std::vector<std::vector<DensityState>>* traces = nullptr);

// curves[i][j]: curve of direction i at epsilon_j = 2 pi j / L.
std::vector<double> powder_average(const std::vector<std::vector<std::vector<double>>>& curves,
                                   const std::vector<FieldDirection>& dirs);

// Sweeps every (direction, epsilon_j) pair and returns the averaged Mz and |Mxy| rows.
std::vector<SweepRow> powder_sweep(const std::vector<GateStep>& steps, const DensityState& rho0,
                                   const std::vector<QubitContext>& contexts, const std::vector<FieldDirection>& dirs,
                                   const SweepConfig& sweep, int nang, int threads = 1);

}  // namespace qsim
