#include "qsim/sequence.hpp"

#include <cmath>
#include <utility>

#include "qsim/error.hpp"
#include "qsim/parallel.hpp"
#include "qsim/units.hpp"

namespace qsim {

void SweepConfig::validate() const {
  if (!(t_start >= 0.0)) throw ParameterError("sweep: esta must be non-negative");
  if (!(t_end > t_start)) throw ParameterError("sweep: eend must exceed esta");
  if (n_points < 2) throw ParameterError("sweep: npe must be at least 2");
}

QubitContext make_context(const QubitFrame& frame, const RateSet& rates, const DriveConfig& drive, double theta,
                          double phi, double g_I) {
  QubitContext c;
  c.omega_pm = frame.omega_rad_us();
  c.N = frame.N;
  c.g_I = g_I;
  c.rates = rates;
  c.drive = drive;
  c.theta = theta;
  c.phi = phi;
  return c;
}

int variable_step_count(const std::vector<GateStep>& steps) {
  int m = 0;
  for (const auto& s : steps)
    if (s.code == kVariableFree || s.code == kVariableRotation) ++m;
  return m;
}

namespace {

bool is_rotation(int code) { return code == kFixedRotation || code == kVariableRotation; }

void check_step(const GateStep& s) {
  if (s.code < 0 || s.code > 3) throw ParameterError("gate step: unknown code " + std::to_string(s.code));
  if ((s.code == kFixedFree || s.code == kFixedRotation) && !(s.duration >= 0.0))
    throw ParameterError("gate step: fixed duration must be non-negative");
}

}  // namespace

CompiledSequence::CompiledSequence(std::vector<GateStep> steps, const QubitContext& ctx, double eps_offset)
    : steps_(std::move(steps)), ctx_(ctx) {
  if (steps_.empty()) throw ParameterError("run_sequence: empty gate sequence");
  ctx_.rates.validate();
  if (ctx_.rates.Ga() == 0.0 && ctx_.rates.Ge() == 0.0 && ctx_.rates.Gm() == 0.0)
    throw ParameterError("run_sequence: at least one effective rate must be positive");
  const double delta = ctx_.omega_pm - units::GHz_to_rad_us(ctx_.drive.f_mw);
  for (const auto& s : steps_) {
    check_step(s);
    if (!is_rotation(s.code)) {
      prop_index_.push_back(-1);
      continue;
    }
    DriveConfig d = ctx_.drive;
    d.epsilon = s.epsilon + eps_offset;
    const Vec3 b1 = b1_vector(d, ctx_.theta, ctx_.phi);
    const cplx omega_R = rabi_frequency_from_N(ctx_.N, ctx_.g_I, b1);
    props_.emplace_back(system_matrix(ctx_.rates, delta, omega_R));
    prop_index_.push_back(static_cast<int>(props_.size()) - 1);
  }
}

RunResult CompiledSequence::run(const DensityState& rho0, double tau) const {
  RunResult r;
  DensityState rho = rho0;
  const auto& rt = ctx_.rates;
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    const auto& s = steps_[k];
    const bool variable = s.code == kVariableFree || s.code == kVariableRotation;
    const double dt = variable ? tau : s.duration;
    if (prop_index_[k] < 0)
      rho = free_evolution(rho, rt.Ga(), rt.Ge(), rt.Gm(), ctx_.omega_pm, dt);
    else
      rho = props_[prop_index_[k]](rho, dt);
    r.trace.push_back(rho);
  }
  r.final_state = rho;
  return r;
}

RunResult run_sequence(const std::vector<GateStep>& steps, const DensityState& rho0, const QubitContext& ctx,
                       double tau, double eps_offset) {
  return CompiledSequence(steps, ctx, eps_offset).run(rho0, tau);
}

double mz(const DensityState& r) { return r.rho22 - r.rho11; }
double mxy_abs(const DensityState& r) { return 2.0 * std::hypot(r.rho12r, r.rho12i); }

std::vector<double> tau_grid(const SweepConfig& s) {
  s.validate();
  std::vector<double> g(s.n_points);
  const double inc = (s.t_end - s.t_start) / s.n_points;
  for (int j = 0; j < s.n_points; ++j) g[j] = s.t_start + j * inc;
  return g;
}

std::vector<SweepRow> sweep_tau(const std::vector<GateStep>& steps, const DensityState& rho0, const QubitContext& ctx,
                                const SweepConfig& sweep, int threads, double eps_offset,
                                std::vector<std::vector<DensityState>>* traces) {
  const CompiledSequence seq(steps, ctx, eps_offset);
  const int m = variable_step_count(steps);
  std::vector<double> taus;
  if (m == 0) {
    taus = {0.0};
  } else {
    taus = tau_grid(sweep);
  }
  std::vector<SweepRow> rows(taus.size());
  if (traces) traces->assign(taus.size(), {});
  double fixed_total = 0.0;
  for (const auto& s : steps)
    if (s.code == kFixedFree || s.code == kFixedRotation) fixed_total += s.duration;
  parallel_for(taus.size(), threads, [&](std::size_t j) {
    auto res = seq.run(rho0, taus[j]);
    rows[j] = {m == 0 ? fixed_total : m * taus[j], mz(res.final_state), mxy_abs(res.final_state)};
    if (traces) (*traces)[j] = std::move(res.trace);
  });
  return rows;
}

std::vector<double> powder_average(const std::vector<std::vector<std::vector<double>>>& curves,
                                   const std::vector<FieldDirection>& dirs) {
  if (curves.size() != dirs.size() || dirs.empty()) throw DataError("powder_average: direction count mismatch");
  double wsum = 0.0;
  for (const auto& d : dirs) {
    if (!(d.weight >= 0.0)) throw DataError("powder_average: negative weight");
    wsum += d.weight;
  }
  if (std::abs(wsum - 1.0) > 1e-9) throw DataError("powder_average: weights do not sum to one");
  const std::size_t len = curves.front().empty() ? 0 : curves.front().front().size();
  std::vector<double> out(len, 0.0);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const auto& per_eps = curves[i];
    if (per_eps.empty()) throw DataError("powder_average: no epsilon samples");
    const double w = dirs[i].weight / static_cast<double>(per_eps.size());
    for (const auto& c : per_eps) {
      if (c.size() != len) throw DataError("powder_average: curve length mismatch");
      for (std::size_t t = 0; t < len; ++t) out[t] += w * c[t];
    }
  }
  return out;
}

std::vector<SweepRow> powder_sweep(const std::vector<GateStep>& steps, const DensityState& rho0,
                                   const std::vector<QubitContext>& contexts, const std::vector<FieldDirection>& dirs,
                                   const SweepConfig& sweep, int nang, int threads) {
  if (nang < 1) throw ParameterError("powder_sweep: nang must be at least 1");
  if (contexts.size() != dirs.size()) throw DataError("powder_sweep: direction count mismatch");
  const std::size_t nd = dirs.size(), L = static_cast<std::size_t>(nang);
  std::vector<std::vector<SweepRow>> runs(nd * L);
  parallel_for(nd * L, threads, [&](std::size_t k) {
    const std::size_t i = k / L, j = k % L;
    const double eps = units::two_pi * static_cast<double>(j) / static_cast<double>(L);
    runs[k] = sweep_tau(steps, rho0, contexts[i], sweep, 1, eps);
  });
  std::vector<std::vector<std::vector<double>>> cz(nd), cxy(nd);
  for (std::size_t i = 0; i < nd; ++i)
    for (std::size_t j = 0; j < L; ++j) {
      const auto& rr = runs[i * L + j];
      std::vector<double> z, x;
      for (const auto& row : rr) {
        z.push_back(row.mz);
        x.push_back(row.mxy);
      }
      cz[i].push_back(std::move(z));
      cxy[i].push_back(std::move(x));
    }
  const auto az = powder_average(cz, dirs), axy = powder_average(cxy, dirs);
  std::vector<SweepRow> out = runs.front();
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t].mz = az[t];
    out[t].mxy = axy[t];
  }
  return out;
}

}  // namespace qsim
