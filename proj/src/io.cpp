#include "qsim/io.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "qsim/error.hpp"
#include "qsim/units.hpp"

namespace qsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open " + path);
  return f;
}

// Non-empty lines with their 1-based line numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  bool next(std::vector<std::string>& toks) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      auto t = split_ws(line);
      if (!t.empty()) {
        toks = std::move(t);
        return true;
      }
    }
    return false;
  }

  std::vector<double> numbers(std::size_t count, const std::string& what) {
    std::vector<std::string> toks;
    if (!next(toks)) throw DataError(fmt::format("{}: unexpected end of file while reading {}", name_, what));
    if (toks.size() != count)
      throw DataError(fmt::format("{}:{}: {} expects {} values, found {}", name_, lineno_, what, count, toks.size()));
    std::vector<double> v;
    for (const auto& t : toks) {
      try {
        v.push_back(parse_number(t));
      } catch (const DataError&) {
        throw DataError(fmt::format("{}:{}: invalid number '{}' in {}", name_, lineno_, t, what));
      }
    }
    return v;
  }

  std::vector<cplx> complexes(std::size_t count, const std::string& what) {
    auto v = numbers(2 * count, what);
    std::vector<cplx> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = {v[2 * k], v[2 * k + 1]};
    return out;
  }

  bool at_end() {
    std::string line;
    auto pos = in_.tellg();
    while (std::getline(in_, line))
      if (!trim(line).empty()) {
        in_.clear();
        in_.seekg(pos);
        return false;
      }
    return true;
  }

  int line() const { return lineno_; }
  const std::string& name() const { return name_; }

 private:
  std::istream& in_;
  std::string name_;
  int lineno_ = 0;
};

}  // namespace

double parse_number(const std::string& token) {
  std::string s = token;
  for (auto& ch : s)
    if (ch == 'D' || ch == 'd') ch = 'e';
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  double v = 0.0;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v)) throw DataError("invalid number '" + token + "'");
  return v;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw DataError("config: " + m); };
  if (id < 2) fail("id must be at least 2");
  if (!(ig >= 1 && ig < ie && ie <= id)) fail("need 1 <= ig < ie <= id");
  if (nm < 0) fail("nm must be non-negative");
  if (ic < 1 || nd < 1) fail("ic and nd must be at least 1");
  if (!(temp > 0.0)) fail("temp must be positive");
  if (!(sfgw > 0.0)) fail("sfgw must be positive");
  if (!(top > 0.0 && ttp > 0.0)) fail("top and ttp must be positive");
  if (!(geme >= 0.0)) fail("geme must be non-negative");
  if (!(gabe == -1.0 || gabe >= 0.0)) fail("gabe must be -1 or non-negative");
  if (!(tmage >= 0.0)) fail("tmage must be non-negative");
  if (!(bcm >= 0.0)) fail("bcm must be non-negative");
  if (!(firr >= 0.0)) fail("firr must be non-negative");
  if (nang < 1) fail("nang must be at least 1");
  if (!(esta >= 0.0 && eend > esta)) fail("need 0 <= esta < eend");
  if (npe < 2) fail("npe must be at least 2");
  if (std::abs(ro11 + ro22 - 1.0) > 1e-9) fail("ro11 + ro22 must equal 1");
  if (nsa < 1) fail("nsa must be at least 1");
  initial_state().validate();
}

DriveConfig RunConfig::drive() const {
  DriveConfig d;
  d.b1_mag = bcm;
  d.f_mw = firr;
  d.alpha = units::deg_to_rad(alp);
  return d;
}

RunConfig parse_config(std::istream& in, const std::string& name) {
  RunConfig c;
  std::map<std::string, std::function<void(double)>> setters;
  auto as_int = [](double v, const std::string& key) {
    if (v != std::floor(v)) throw DataError("config: " + key + " must be an integer");
    return static_cast<int>(v);
  };
  auto I = [&](const char* k, int& ref) { setters[k] = [&ref, k, as_int](double v) { ref = as_int(v, k); }; };
  auto D = [&](const char* k, double& ref) { setters[k] = [&ref](double v) { ref = v; }; };
  I("id", c.id); I("ig", c.ig); I("ie", c.ie); I("nm", c.nm); I("ic", c.ic); I("nd", c.nd);
  D("temp", c.temp); D("sfgw", c.sfgw); D("top", c.top); D("ttp", c.ttp);
  D("geme", c.geme); D("gabe", c.gabe); D("tmage", c.tmage); D("gfi", c.gfi);
  D("bcm", c.bcm); D("firr", c.firr); D("alp", c.alp); I("nang", c.nang);
  D("esta", c.esta); D("eend", c.eend); I("npe", c.npe);
  D("ro11", c.ro11); D("ro22", c.ro22); D("ro12r", c.ro12r); D("ro12i", c.ro12i); I("nsa", c.nsa);

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError(fmt::format("{}:{}: expected key = value", name, lineno));
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) throw DataError(fmt::format("{}:{}: unknown key '{}'", name, lineno, key));
    try {
      it->second(parse_number(val));
    } catch (const DataError& e) {
      throw DataError(fmt::format("{}:{}: {}", name, lineno, e.what()));
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  auto f = open_or_throw(path);
  return parse_config(f, path);
}

void write_config(std::ostream& out, const RunConfig& c) {
  auto w = [&](const char* k, double v) { fmt::print(out, "{} = {}\n", k, v); };
  w("id", c.id); w("ig", c.ig); w("ie", c.ie); w("nm", c.nm); w("ic", c.ic); w("nd", c.nd);
  w("temp", c.temp); w("sfgw", c.sfgw); w("top", c.top); w("ttp", c.ttp);
  w("geme", c.geme); w("gabe", c.gabe); w("tmage", c.tmage); w("gfi", c.gfi);
  w("bcm", c.bcm); w("firr", c.firr); w("alp", c.alp); w("nang", c.nang);
  w("esta", c.esta); w("eend", c.eend); w("npe", c.npe);
  w("ro11", c.ro11); w("ro22", c.ro22); w("ro12r", c.ro12r); w("ro12i", c.ro12i); w("nsa", c.nsa);
}

std::vector<FieldBlock> parse_ddata(std::istream& in, int dim, int nm, int ic, int nd, int ig, int ie,
                                    const std::string& name) {
  LineReader rd(in, name);
  std::vector<FieldBlock> blocks;
  for (int b = 0; b < ic; ++b) {
    FieldBlock fb;
    fb.B = rd.numbers(1, fmt::format("field value of block {}", b + 1))[0];
    double wsum = 0.0;
    for (int d = 0; d < nd; ++d) {
      const std::string where = fmt::format("block {} direction {}", b + 1, d + 1);
      DirectionBlock db;
      auto hdr = rd.numbers(4, where + " header");
      db.dir.phi = units::deg_to_rad(hdr[0]);
      db.dir.theta = units::deg_to_rad(hdr[1]);
      db.dir.weight = hdr[2];
      db.dir.gamma_mag = hdr[3];
      if (db.dir.weight < 0.0) throw DataError(fmt::format("{}:{}: negative weight in {}", name, rd.line(), where));
      if (db.dir.gamma_mag < 0.0)
        throw DataError(fmt::format("{}:{}: negative magnetic rate in {}", name, rd.line(), where));
      wsum += db.dir.weight;
      db.energies = rd.numbers(dim, where + " energies");
      auto re = rd.numbers(3, where + " Re<u+|J|u->");
      auto im = rd.numbers(3, where + " Im<u+|J|u->");
      for (int a = 0; a < 3; ++a) db.N[a] = {re[a], im[a]};
      db.coupling.n_modes = nm;
      if (nm > 0) {
        QubitFrame f;
        try {
          f = qubit_frame_from_data(db.energies, ig, ie, db.N);
        } catch (const std::exception& e) {
          throw DataError(fmt::format("{}: {}: {}", name, where, e.what()));
        }
        const auto win = intermediate_windows(f);
        db.coupling.first_order = rd.complexes(nm, where + " one-phonon elements");
        auto resize = [&](auto& v) { v.assign(nm, std::vector<std::vector<cplx>>(nm)); };
        resize(db.coupling.direct);
        resize(db.coupling.stokes);
        resize(db.coupling.spont);
        for (int i = 0; i < nm; ++i) {
          auto vv = rd.complexes(nm - i, fmt::format("{} mode {} virtual elements", where, i + 1));
          db.coupling.virtual_upper.insert(db.coupling.virtual_upper.end(), vv.begin(), vv.end());
          auto group = [&](const std::vector<int>& w, auto& dst, const char* label) {
            for (std::size_t c = 0; c < w.size(); ++c) {
              auto row = rd.complexes(nm, fmt::format("{} mode {} {} state {}", where, i + 1, label, w[c] + 1));
              for (int ip = 0; ip < nm; ++ip) dst[i][ip].push_back(row[ip]);
            }
          };
          group(win.direct, db.coupling.direct, "Direct");
          group(win.stokes, db.coupling.stokes, "Stokes");
          group(win.spont, db.coupling.spont, "Spont");
        }
      }
      fb.dirs.push_back(std::move(db));
    }
    if (std::abs(wsum - 1.0) > 1e-6)
      throw DataError(fmt::format("{}: weights of block {} sum to {} instead of 1", name, b + 1, wsum));
    for (auto& d : fb.dirs) d.dir.weight /= wsum;
    blocks.push_back(std::move(fb));
  }
  if (!rd.at_end()) throw DataError(fmt::format("{}: trailing data after {} block(s)", name, ic));
  return blocks;
}

std::vector<FieldBlock> load_ddata(const std::string& path, const RunConfig& c) {
  auto f = open_or_throw(path);
  return parse_ddata(f, c.id, c.nm, c.ic, c.nd, c.ig, c.ie, path);
}

void write_ddata(std::ostream& out, const std::vector<FieldBlock>& blocks, int ig, int ie) {
  auto num = [&](double v) { fmt::print(out, " {:.17g}", v); };
  auto cline = [&](const std::vector<cplx>& v) {
    for (const auto& z : v) {
      num(z.real());
      num(z.imag());
    }
    out << '\n';
  };
  for (const auto& b : blocks) {
    num(b.B);
    out << '\n';
    for (const auto& d : b.dirs) {
      num(d.dir.phi * 180.0 / units::pi);
      num(d.dir.theta * 180.0 / units::pi);
      num(d.dir.weight);
      num(d.dir.gamma_mag);
      out << '\n';
      for (double e : d.energies) num(e);
      out << '\n';
      for (int a = 0; a < 3; ++a) num(d.N[a].real());
      out << '\n';
      for (int a = 0; a < 3; ++a) num(d.N[a].imag());
      out << '\n';
      const int nm = d.coupling.n_modes;
      if (nm == 0) continue;
      cline(d.coupling.first_order);
      const auto win = intermediate_windows(qubit_frame_from_data(d.energies, ig, ie, d.N));
      for (int i = 0; i < nm; ++i) {
        std::vector<cplx> vv;
        for (int ip = i; ip < nm; ++ip) vv.push_back(d.coupling.virtual_element(i, ip));
        cline(vv);
        auto group = [&](std::size_t n, const auto& src) {
          for (std::size_t c = 0; c < n; ++c) {
            std::vector<cplx> row;
            for (int ip = 0; ip < nm; ++ip) row.push_back(src[i][ip][c]);
            cline(row);
          }
        };
        group(win.direct.size(), d.coupling.direct);
        group(win.stokes.size(), d.coupling.stokes);
        group(win.spont.size(), d.coupling.spont);
      }
    }
  }
}

std::vector<VibrationMode> parse_mdata(std::istream& in, int nm, std::vector<std::string>* warnings,
                                       const std::string& name) {
  if (nm <= 0) throw DataError(name + ": mode data requested with nm = 0");
  LineReader rd(in, name);
  std::vector<VibrationMode> modes;
  for (int i = 0; i < nm; ++i) {
    auto v = rd.numbers(3, fmt::format("mode {}", i + 1));
    if (!(v[0] > 0.0 && v[1] > 0.0 && v[2] > 0.0))
      throw DataError(fmt::format("{}:{}: mode entries must be positive", name, rd.line()));
    if (!modes.empty() && v[0] < modes.back().nu && warnings)
      warnings->push_back(fmt::format("{}:{}: frequencies are not ascending", name, rd.line()));
    modes.push_back({v[0], v[1], v[2]});
  }
  if (!rd.at_end()) throw DataError(fmt::format("{}: more than nm = {} rows", name, nm));
  return modes;
}

std::vector<VibrationMode> load_mdata(const std::string& path, int nm, std::vector<std::string>* warnings) {
  auto f = open_or_throw(path);
  return parse_mdata(f, nm, warnings, path);
}

std::vector<GateStep> parse_adata(std::istream& in, int nsa, const std::string& name) {
  LineReader rd(in, name);
  std::vector<GateStep> steps;
  std::vector<std::string> toks;
  for (int k = 0; k < nsa; ++k) {
    if (!rd.next(toks)) throw DataError(fmt::format("{}: expected {} steps, found {}", name, nsa, k));
    if (toks.size() != 3) throw DataError(fmt::format("{}:{}: a step needs three columns", name, rd.line()));
    auto num = [&](const std::string& t, const char* what) {
      try {
        return parse_number(t);
      } catch (const DataError&) {
        throw DataError(fmt::format("{}:{}: invalid {} '{}'", name, rd.line(), what, t));
      }
    };
    GateStep s;
    const double code = num(toks[0], "step code");
    if (code != 0 && code != 1 && code != 2 && code != 3)
      throw DataError(fmt::format("{}:{}: unknown step code '{}'", name, rd.line(), toks[0]));
    s.code = static_cast<int>(code);
    if (s.code == kFixedFree || s.code == kFixedRotation) {
      s.duration = num(toks[1], "duration");
      if (s.duration < 0.0) throw DataError(fmt::format("{}:{}: negative duration", name, rd.line()));
    }
    if (s.code == kFixedRotation || s.code == kVariableRotation) s.epsilon = units::deg_to_rad(num(toks[2], "angle"));
    steps.push_back(s);
  }
  if (!rd.at_end()) throw DataError(fmt::format("{}: more than nsa = {} steps", name, nsa));
  return steps;
}

std::vector<GateStep> load_adata(const std::string& path, int nsa) {
  auto f = open_or_throw(path);
  return parse_adata(f, nsa, path);
}

void write_curve_csv(std::ostream& out, const std::vector<double>& t, const std::vector<double>& y) {
  out << "time_us,magnetization\n";
  for (std::size_t k = 0; k < t.size(); ++k) fmt::print(out, "{:.10g},{:.10g}\n", t[k], y[k]);
}

void read_curve_csv(std::istream& in, std::vector<double>& t, std::vector<double>& y, const std::string& name) {
  t.clear();
  y.clear();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::replace(line.begin(), line.end(), ',', ' ');
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() != 2) throw DataError(fmt::format("{}:{}: expected two columns", name, lineno));
    try {
      const double a = parse_number(toks[0]), b = parse_number(toks[1]);
      t.push_back(a);
      y.push_back(b);
    } catch (const DataError&) {
      if (t.empty() && lineno == 1) continue;  // header
      throw DataError(fmt::format("{}:{}: invalid number", name, lineno));
    }
  }
}

DensityState parse_state(std::istream& in, const std::string& name) {
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::replace(all.begin(), all.end(), ',', ' ');
  auto toks = split_ws(all);
  if (toks.size() != 4) throw DataError(name + ": a state needs four numbers (ro11 ro22 ro12r ro12i)");
  DensityState s{parse_number(toks[0]), parse_number(toks[1]), parse_number(toks[2]), parse_number(toks[3])};
  s.validate();
  return s;
}

}  // namespace qsim
