#include "cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qsim/analysis.hpp"
#include "qsim/error.hpp"
#include "qsim/lindblad.hpp"
#include "qsim/units.hpp"
#include "qsim/workflow.hpp"

namespace qsim {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw DataError("cannot write " + p.string());
  return f;
}

Simulation load_simulation(const std::string& config, const std::string& ddata, const std::string& mdata,
                           const std::string& adata, bool need_steps, std::ostream& err) {
  Simulation sim;
  sim.cfg = load_config(config);
  if (ddata.empty()) throw DataError("--ddata is required");
  sim.blocks = load_ddata(ddata, sim.cfg);
  if (sim.cfg.nm > 0) {
    if (mdata.empty()) throw DataError("--mdata is required when nm > 0");
    std::vector<std::string> warnings;
    sim.modes = load_mdata(mdata, sim.cfg.nm, &warnings);
    for (const auto& w : warnings) fmt::print(err, "warning: {}\n", w);
  }
  if (need_steps) {
    if (adata.empty()) throw DataError("--adata is required");
    sim.steps = load_adata(adata, sim.cfg.nsa);
  }
  return sim;
}

void write_trace(std::ostream& log, const Simulation& sim, const BlockResult& br) {
  const auto m = variable_step_count(sim.steps);
  const auto taus = m == 0 ? std::vector<double>{0.0} : tau_grid(sim.cfg.sweep());
  for (std::size_t i = 0; i < br.traces.size(); ++i)
    for (std::size_t j = 0; j < br.traces[i].size(); ++j) {
      fmt::print(log, "  direction {} tau = {:.10g} us\n", i + 1, taus[j]);
      for (std::size_t k = 0; k < br.traces[i][j].size(); ++k) {
        const auto& s = br.traces[i][j][k];
        fmt::print(log, "    step {:3d} code {}: ro11={:.5f} ro22={:.5f} ro12r={:.5f} ro12i={:.5f}\n", k + 1,
                   sim.steps[k].code, s.rho11, s.rho22, s.rho12r, s.rho12i);
      }
    }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single spin-qubit Lindblad simulator"};
  app.require_subcommand(1);
  unsigned seed = 0;
  app.add_option("--seed", seed, "Random seed (randomized checks only)");

  std::string config, ddata, mdata, adata, outdir = ".";
  bool trace = false;
  int threads = 1;
  auto add_inputs = [&](CLI::App* s, bool steps) {
    s->add_option("--config", config, "key = value run configuration")->required();
    s->add_option("--ddata", ddata, "Energies, transition elements and couplings")->required();
    s->add_option("--mdata", mdata, "Vibration modes (nm > 0)");
    if (steps) s->add_option("--adata", adata, "Gate sequence")->required();
    s->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* rates = app.add_subcommand("rates", "Print relaxation rates, detuning and Rabi frequency per direction");
  add_inputs(rates, false);

  auto* run = app.add_subcommand("run", "Run the gate sequence and write run.log, mz.csv and mxy.csv");
  add_inputs(run, true);
  run->add_flag("--trace", trace, "Write per-step states to run.log");
  run->add_option("--out", outdir, "Output directory");

  std::string model = "monoexp-fixed", fit_input;
  bool freeze_y0 = false;
  auto* fit = app.add_subcommand("fit", "Fit a decay model to a two-column curve");
  fit->add_option("--model", model, "monoexp-fixed | monoexp-stretched | biexp")
      ->check(CLI::IsMember({"monoexp-fixed", "monoexp-stretched", "biexp"}));
  fit->add_flag("--freeze-y0", freeze_y0, "Keep y0 = 0 (biexp)");
  fit->add_option("input", fit_input, "Curve file")->required();

  std::string rho_file, sigma_file;
  auto* fid = app.add_subcommand("fidelity", "Fidelity between two serialized states");
  fid->add_option("rho", rho_file)->required();
  fid->add_option("sigma", sigma_file)->required();

  std::vector<std::string> curves;
  std::string weights_file, avg_out = "average.csv";
  int nang = 1;
  auto* avg = app.add_subcommand("average", "Weighted average of per-direction curve files");
  avg->add_option("curves", curves, "Curve files, nang consecutive files per direction")->required();
  avg->add_option("--weights", weights_file, "One weight per direction (default uniform)");
  avg->add_option("--nang", nang, "Epsilon samples per direction")->check(CLI::PositiveNumber);
  avg->add_option("--out", avg_out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n{}", e.what(), app.help());
    return 1;
  }

  try {
    if (*rates) {
      auto sim = load_simulation(config, ddata, mdata, adata, false, err);
      std::vector<BlockResult> res;
      for (const auto& b : sim.blocks) {
        BlockResult br;
        for (const auto& d : b.dirs) br.rates.push_back(direction_rates(sim, d));
        res.push_back(std::move(br));
      }
      write_rates_report(out, sim, res);
    } else if (*run) {
      auto sim = load_simulation(config, ddata, mdata, adata, true, err);
      auto res = run_simulation(sim, threads, trace);
      fs::create_directories(outdir);
      auto log = open_out(fs::path(outdir) / "run.log");
      write_rates_report(log, sim, res);
      fmt::print(log, "steps: {}  variable steps m = {}\n", sim.steps.size(), variable_step_count(sim.steps));
      for (std::size_t b = 0; b < res.size(); ++b) {
        if (trace) write_trace(log, sim, res[b]);
        std::vector<double> t, z, x;
        for (const auto& r : res[b].rows) {
          t.push_back(r.time);
          z.push_back(r.mz);
          x.push_back(r.mxy);
        }
        const std::string suffix = b == 0 ? "" : fmt::format("_b{}", b + 1);
        auto fz = open_out(fs::path(outdir) / ("mz" + suffix + ".csv"));
        write_curve_csv(fz, t, z);
        auto fx = open_out(fs::path(outdir) / ("mxy" + suffix + ".csv"));
        write_curve_csv(fx, t, x);
        if (res[b].rows.size() == 1) {
          const auto& r = res[b].rows.front();
          fmt::print(out, "Mz = {:.5f}  |Mxy| = {:.5f}\n", r.mz, r.mxy);
        }
      }
      if (auto n = propagator_fallback_count(); n > 0)
        fmt::print(log, "notice: {} propagation(s) used the integrator fallback\n", n);
      fmt::print(out, "wrote {} sweep point(s) to {}\n", res.front().rows.size(), outdir);
    } else if (*fit) {
      std::ifstream f(fit_input);
      if (!f) throw DataError("cannot open " + fit_input);
      std::vector<double> t, y;
      read_curve_csv(f, t, y, fit_input);
      FitOptions opt;
      opt.freeze_y0 = freeze_y0;
      FitResult r = model == "biexp" ? fit_biexp(t, y, opt) : fit_monoexp(t, y, model == "monoexp-stretched", opt);
      if (model == "biexp")
        fmt::print(out, "y0 = {:.8g}\na_fast = {:.8g}\nT_fast = {:.8g}\na_slow = {:.8g}\nT_slow = {:.8g}\n", r.y0, r.a,
                   r.T, r.a_slow, r.T_slow);
      else
        fmt::print(out, "y0 = {:.8g}\na = {:.8g}\nT = {:.8g}\nx = {:.8g}\n", r.y0, r.a, r.T, r.x);
      fmt::print(out, "residual = {:.6e}\niterations = {}\nconverged = {}\n", r.residual, r.iterations, r.converged);
      if (r.degenerate) fmt::print(out, "warning: fit is degenerate\n");
      if (!r.converged) {
        fmt::print(err, "error: fit did not converge\n");
        return 2;
      }
    } else if (*fid) {
      std::ifstream a(rho_file), b(sigma_file);
      if (!a) throw DataError("cannot open " + rho_file);
      if (!b) throw DataError("cannot open " + sigma_file);
      const auto rho = parse_state(a, rho_file), sigma = parse_state(b, sigma_file);
      fmt::print(out, "{:.10f}\n", fidelity(rho, sigma));
    } else if (*avg) {
      if (curves.size() % static_cast<std::size_t>(nang) != 0)
        throw DataError("number of curve files is not a multiple of nang");
      const std::size_t nd = curves.size() / nang;
      std::vector<FieldDirection> dirs(nd);
      if (!weights_file.empty()) {
        std::ifstream wf(weights_file);
        if (!wf) throw DataError("cannot open " + weights_file);
        std::size_t k = 0;
        for (std::string tok; wf >> tok; ++k) {
          if (k >= nd) throw DataError("more weights than directions");
          dirs[k].weight = parse_number(tok);
        }
        if (k != nd) throw DataError("fewer weights than directions");
      } else {
        for (auto& d : dirs) d.weight = 1.0 / nd;
      }
      std::vector<std::vector<std::vector<double>>> data(nd);
      std::vector<double> t_ref;
      for (std::size_t k = 0; k < curves.size(); ++k) {
        std::ifstream f(curves[k]);
        if (!f) throw DataError("cannot open " + curves[k]);
        std::vector<double> t, y;
        read_curve_csv(f, t, y, curves[k]);
        if (k == 0) t_ref = t;
        if (t != t_ref) throw DataError(curves[k] + ": abscissa differs from " + curves[0]);
        data[k / nang].push_back(std::move(y));
      }
      auto av = powder_average(data, dirs);
      auto f = open_out(avg_out);
      write_curve_csv(f, t_ref, av);
      fmt::print(out, "wrote {} points to {}\n", av.size(), avg_out);
    }
  } catch (const NumericalError& e) {
    fmt::print(err, "numerical error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace qsim
