#pragma once
#include <string>
#include <vector>

#include "qsim/io.hpp"

namespace qsim {

struct DirectionRates {
  OnePhononResult one;
  TwoPhononResult two;
  RateSet rates;
  QubitFrame frame;
  double delta = 0.0;      // rad/us
  cplx omega_R = 0.0;      // rad/us at epsilon = 0
  double omega_g = 0.0;    // rad/us
};

struct Simulation {
  RunConfig cfg;
  std::vector<FieldBlock> blocks;
  std::vector<VibrationMode> modes;
  std::vector<GateStep> steps;
};

DirectionRates direction_rates(const Simulation& sim, const DirectionBlock& d);

struct BlockResult {
  std::vector<DirectionRates> rates;
  std::vector<SweepRow> rows;
  // per direction, per sweep point, per step (only with traces)
  std::vector<std::vector<std::vector<DensityState>>> traces;
};

std::vector<BlockResult> run_simulation(const Simulation& sim, int threads, bool keep_traces);

void write_rates_report(std::ostream& out, const Simulation& sim, const std::vector<BlockResult>& res);

}  // namespace qsim
