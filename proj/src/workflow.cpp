#include "qsim/workflow.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>

#include "qsim/error.hpp"
#include "qsim/parallel.hpp"
#include "qsim/units.hpp"

namespace qsim {

DirectionRates direction_rates(const Simulation& sim, const DirectionBlock& d) {
  const auto& c = sim.cfg;
  DirectionRates r;
  r.frame = qubit_frame_from_data(d.energies, c.ig, c.ie, d.N);
  if (c.nm > 0) {
    r.one = one_phonon_rates(r.frame, sim.modes, d.coupling, c.temp, c.sfgw);
    r.two = two_phonon_rates(r.frame, sim.modes, d.coupling, c.temp, c.sfgw);
  }
  r.rates = effective_rates(r.one.gamma_ab + r.two.gamma_ab(), r.one.gamma_em + r.two.gamma_em(), d.dir.gamma_mag,
                            c.geme, c.gabe, c.tmage, r.frame.gap_cm(), c.temp);
  r.delta = r.frame.omega_rad_us() - units::GHz_to_rad_us(c.firr);
  r.omega_R = rabi_frequency_from_N(d.N, c.gfi, b1_vector(c.drive(), d.dir.theta, d.dir.phi));
  r.omega_g = std::sqrt(std::norm(r.omega_R) + r.delta * r.delta);
  return r;
}

std::vector<BlockResult> run_simulation(const Simulation& sim, int threads, bool keep_traces) {
  const auto& c = sim.cfg;
  std::vector<BlockResult> out;
  for (const auto& b : sim.blocks) {
    BlockResult br;
    std::vector<QubitContext> ctx;
    std::vector<FieldDirection> dirs;
    for (const auto& d : b.dirs) {
      br.rates.push_back(direction_rates(sim, d));
      ctx.push_back(make_context(br.rates.back().frame, br.rates.back().rates, c.drive(), d.dir.theta, d.dir.phi, c.gfi));
      dirs.push_back(d.dir);
    }
    if (keep_traces) {
      // traces are reported at the epsilon origin of every direction
      br.traces.resize(ctx.size());
      for (std::size_t i = 0; i < ctx.size(); ++i)
        sweep_tau(sim.steps, c.initial_state(), ctx[i], c.sweep(), threads, 0.0, &br.traces[i]);
    }
    br.rows = powder_sweep(sim.steps, c.initial_state(), ctx, dirs, c.sweep(), c.nang, threads);
    out.push_back(std::move(br));
  }
  return out;
}

void write_rates_report(std::ostream& out, const Simulation& sim, const std::vector<BlockResult>& res) {
  const auto& c = sim.cfg;
  static const char* names[kTwoPhononProcesses] = {"R-Direct", "L-Direct", "Stokes", "anti-Stokes", "R-Spont", "L-Spont"};
  for (std::size_t b = 0; b < res.size(); ++b) {
    fmt::print(out, "mf: {}  |B| = {:.6g} mT\n", b + 1, sim.blocks[b].B);
    for (std::size_t i = 0; i < res[b].rates.size(); ++i) {
      const auto& r = res[b].rates[i];
      const auto& d = sim.blocks[b].dirs[i].dir;
      fmt::print(out, "  direction {}: theta = {:.6f} deg, phi = {:.6f} deg, weight = {:.8g}\n", i + 1,
                 d.theta * 180 / units::pi, d.phi * 180 / units::pi, d.weight);
      fmt::print(out, "    gap = {:.9g} GHz ({:.9g} cm^-1)\n", r.frame.gap_GHz(), r.frame.gap_cm());
      fmt::print(out, "    Gab = {:.6e} us^-1  Gem = {:.6e} us^-1  Gmag = {:.6e} us^-1\n", r.rates.gamma_ab,
                 r.rates.gamma_em, r.rates.gamma_mag);
      fmt::print(out, "    Gab,add = {:.6e}  Gem,add = {:.6e}  Gmag,add = {:.6e} us^-1\n", r.rates.gamma_ab_add,
                 r.rates.gamma_em_add, r.rates.gamma_mag_add);
      fmt::print(out, "    Ga = {:.6e}  Ge = {:.6e}  Gm = {:.6e} us^-1\n", r.rates.Ga(), r.rates.Ge(), r.rates.Gm());
      fmt::print(out, "    delta/2pi = {:.6f} MHz  |Omega_R|/2pi = {:.6f} MHz  Omega_g/2pi = {:.6f} MHz\n",
                 r.delta / units::two_pi, std::abs(r.omega_R) / units::two_pi, r.omega_g / units::two_pi);
      if (c.nm > 0) {
        fmt::print(out, "    one-phonon: Gab = {:.6e}  Gem = {:.6e}\n", r.one.gamma_ab, r.one.gamma_em);
        for (const auto& m : mode_contributions(r.one.per_mode_ab, c.top))
          fmt::print(out, "      mode {:4d}  {:6.2f} %\n", m.i + 1, m.value);
        fmt::print(out, "    two-phonon: Gab = {:.6e}  Gem = {:.6e}  skipped denominators = {}\n", r.two.gamma_ab(),
                   r.two.gamma_em(), r.two.skipped_denominators);
        for (int p = 0; p < kTwoPhononProcesses; ++p) {
          fmt::print(out, "      {:<12s} {:.6e}\n", names[p], r.two.rate[p]);
          for (const auto& m : mode_contributions(r.two.per_pair[p], c.ttp))
            fmt::print(out, "        pair ({:d},{:d})  {:6.2f} %\n", m.i + 1, m.ip + 1, m.value);
        }
      }
    }
  }
}

}  // namespace qsim
