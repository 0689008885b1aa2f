#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "qsim/error.hpp"
#include "qsim/io.hpp"
#include "qsim/units.hpp"

using namespace qsim;

namespace {

const std::string kData = QSIM_TEST_DATA;

// Random block set with coupling data on the five-level toy layout.
std::vector<FieldBlock> random_blocks(int nm, int nd, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  auto z = [&] { return cplx(u(rng), u(rng)); };
  const std::vector<double> E{-0.8, 0.0, 0.13, 0.3, 1.1};
  FieldBlock fb;
  fb.B = 335.7;
  for (int d = 0; d < nd; ++d) {
    DirectionBlock db;
    db.dir = {0.3 + 0.1 * d, 1.1 + 0.2 * d, 1.0 / nd, 0.01 * d};
    db.energies = E;
    db.N = CVec3(z(), z(), z());
    auto& c = db.coupling;
    c.n_modes = nm;
    for (int i = 0; i < nm; ++i) c.first_order.push_back(z());
    for (int k = 0; k < nm * (nm + 1) / 2; ++k) c.virtual_upper.push_back(z());
    auto fill = [&](auto& v) {
      v.assign(nm, std::vector<std::vector<cplx>>(nm, std::vector<cplx>(1)));
      for (auto& a : v)
        for (auto& b : a) b[0] = z();
    };
    fill(c.direct);
    fill(c.stokes);
    fill(c.spont);
    fb.dirs.push_back(db);
  }
  return {fb};
}

}  // namespace

TEST_CASE("number parsing") {
  CHECK(parse_number("1.5") == 1.5);
  CHECK(parse_number("2.5D-3") == 2.5e-3);
  CHECK(parse_number("+4e2") == 400.0);
  CHECK_THROWS_AS(parse_number("1,5"), DataError);
  CHECK_THROWS_AS(parse_number("abc"), DataError);
  CHECK_THROWS_AS(parse_number("nan"), DataError);
}

TEST_CASE("config parsing and round trip") {
  auto c = load_config(kData + "/toy_gate.cfg");
  CHECK(c.id == 7);
  CHECK(c.ie == 6);
  CHECK(c.firr == 8.99377);
  CHECK(c.tmage == 1e-10);
  std::stringstream ss;
  write_config(ss, c);
  auto d = parse_config(ss);
  CHECK(d.firr == c.firr);
  CHECK(d.tmage == c.tmage);
  CHECK(d.ig == c.ig);

  std::istringstream bad("id = 7\nfoo = 1\n");
  CHECK_THROWS_WITH_AS(parse_config(bad, "x.cfg"), doctest::Contains("x.cfg:2"), DataError);
  std::istringstream noeq("id 7\n");
  CHECK_THROWS_AS(parse_config(noeq), DataError);
  std::istringstream frac("id = 7.5\n");
  CHECK_THROWS_AS(parse_config(frac), DataError);
  std::istringstream tr("ro11 = 0.4\nro22 = 0.4\n");
  CHECK_THROWS_AS(parse_config(tr), DataError);
  std::istringstream gb("gabe = -2\n");
  CHECK_THROWS_AS(parse_config(gb), DataError);
}

TEST_CASE("minimal ddata") {
  auto cfg = load_config(kData + "/toy_gate.cfg");
  auto b = load_ddata(kData + "/toy.ddata", cfg);
  REQUIRE(b.size() == 1);
  REQUIRE(b[0].dirs.size() == 1);
  const auto& d = b[0].dirs[0];
  CHECK(d.energies.size() == 7);
  CHECK(d.N[1] == cplx(0, 0.5));
  CHECK(d.coupling.n_modes == 0);
  CHECK(units::cm_to_GHz(d.energies[5] - d.energies[2]) == doctest::Approx(8.99377).epsilon(1e-6));
}

TEST_CASE("ddata errors") {
  std::istringstream trunc("0\n0 0 1 0\n0 0.1 0.3\n0.5 0 0\n0 0.5 0\n");
  CHECK_THROWS_WITH_AS(parse_ddata(trunc, 7, 0, 1, 1, 3, 6), doctest::Contains("direction 1 energies"), DataError);
  std::istringstream weights("0\n0 0 0.7 0\n0 1\n0.5 0 0\n0 0.5 0\n");
  CHECK_THROWS_AS(parse_ddata(weights, 2, 0, 1, 1, 1, 2), DataError);
  std::istringstream extra("0\n0 0 1 0\n0 1\n0.5 0 0\n0 0.5 0\n1 2\n");
  CHECK_THROWS_AS(parse_ddata(extra, 2, 0, 1, 1, 1, 2), DataError);
  std::istringstream missing_modes("0\n0 0 1 0\n0 1\n0.5 0 0\n0 0.5 0\n");
  CHECK_THROWS_AS(parse_ddata(missing_modes, 2, 1, 1, 1, 1, 2), DataError);
}

TEST_CASE("ddata angles are degrees and weights are renormalized") {
  std::istringstream in("0\n90 45 0.5000004 0.2\n0 1\n0.5 0 0\n0 0.5 0\n0 0 0.5 0\n0 1\n0.5 0 0\n0 0.5 0\n");
  auto b = parse_ddata(in, 2, 0, 1, 2, 1, 2);
  CHECK(b[0].dirs[0].dir.phi == doctest::Approx(units::pi / 2));
  CHECK(b[0].dirs[0].dir.theta == doctest::Approx(units::pi / 4));
  CHECK(b[0].dirs[0].dir.gamma_mag == 0.2);
  CHECK(b[0].dirs[0].dir.weight + b[0].dirs[1].dir.weight == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ddata round trip with coupling data") {
  std::mt19937 rng(31);
  for (int nm : {1, 3}) {
    auto blocks = random_blocks(nm, 2, rng);
    std::stringstream ss;
    write_ddata(ss, blocks, 2, 4);
    auto back = parse_ddata(ss, 5, nm, 1, 2, 2, 4);
    REQUIRE(back.size() == 1);
    for (int d = 0; d < 2; ++d) {
      const auto &a = blocks[0].dirs[d], &b = back[0].dirs[d];
      CHECK(a.energies == b.energies);
      CHECK(a.N == b.N);
      CHECK(a.dir.theta == doctest::Approx(b.dir.theta).epsilon(1e-15));
      CHECK(a.dir.weight == b.dir.weight);
      CHECK(a.coupling.first_order == b.coupling.first_order);
      CHECK(a.coupling.virtual_upper == b.coupling.virtual_upper);
      CHECK(a.coupling.direct == b.coupling.direct);
      CHECK(a.coupling.stokes == b.coupling.stokes);
      CHECK(a.coupling.spont == b.coupling.spont);
    }
  }
}

TEST_CASE("ddata line count follows the intermediate windows") {
  std::mt19937 rng(5);
  auto blocks = random_blocks(2, 1, rng);
  std::stringstream ss;
  write_ddata(ss, blocks, 2, 4);
  int lines = 0;
  for (std::string l; std::getline(ss, l);) ++lines;
  // field, header, energies, 2 N lines, one-phonon line, then per mode: virtual + 3 windows of one state
  CHECK(lines == 1 + 1 + 1 + 2 + 1 + 2 * (1 + 3));
  // Dropping the last row must be reported.
  std::string txt = ss.str();
  txt.erase(txt.find_last_of('\n', txt.size() - 2) + 1);
  std::istringstream cut(txt);
  CHECK_THROWS_WITH_AS(parse_ddata(cut, 5, 2, 1, 1, 2, 4), doctest::Contains("Spont"), DataError);
}

TEST_CASE("mdata") {
  std::istringstream in("10 20 1\n30 25 2\n25 40 3\n");
  std::vector<std::string> warn;
  auto m = parse_mdata(in, 3, &warn);
  CHECK(m.size() == 3);
  CHECK(m[2].nu == 25);
  CHECK(warn.size() == 1);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_mdata(empty, 2), DataError);
  std::istringstream neg("10 -1 1\n");
  CHECK_THROWS_AS(parse_mdata(neg, 1), DataError);
}

TEST_CASE("adata") {
  std::istringstream in("2 23.816e-3 0.0\n0 dummy dummy\n3 dummy 90\n1 0.5 whatever\n");
  auto s = parse_adata(in, 4);
  REQUIRE(s.size() == 4);
  CHECK(s[0].code == kFixedRotation);
  CHECK(s[0].duration == 23.816e-3);
  CHECK(s[1].code == kVariableFree);
  CHECK(s[2].epsilon == doctest::Approx(units::pi / 2));
  CHECK(s[3].duration == 0.5);
  std::istringstream code("7 1 1\n");
  CHECK_THROWS_AS(parse_adata(code, 1), DataError);
  std::istringstream few("2 1 0\n");
  CHECK_THROWS_AS(parse_adata(few, 2), DataError);
  std::istringstream many("2 1 0\n1 1 0\n");
  CHECK_THROWS_AS(parse_adata(many, 1), DataError);
}

TEST_CASE("curve csv round trip") {
  std::vector<double> t{0, 0.1, 0.2}, y{1, 0.123456789012, -3e-7};
  std::stringstream ss;
  write_curve_csv(ss, t, y);
  CHECK(ss.str().rfind("time_us,magnetization\n", 0) == 0);
  std::vector<double> t2, y2;
  read_curve_csv(ss, t2, y2);
  CHECK(t2 == t);
  CHECK(y2[1] == doctest::Approx(y[1]).epsilon(1e-9));
  std::istringstream bad("time_us,magnetization\n0,1\n0.1,x\n");
  CHECK_THROWS_AS(read_curve_csv(bad, t2, y2), DataError);
}

TEST_CASE("state parsing") {
  std::istringstream in("0.5 0.5\n0.5 0\n");
  auto s = parse_state(in);
  CHECK(s.rho12r == 0.5);
  std::istringstream bad("0.5 0.6 0 0");
  CHECK_THROWS_AS(parse_state(bad), DataError);
}
