#include <doctest.h>

#include <cmath>
#include <random>

#include "qsim/analysis.hpp"
#include "qsim/error.hpp"
#include "qsim/lindblad.hpp"

using namespace qsim;

namespace {

DensityState random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0, 1), a(0, 6.283185307179586);
  double r = std::cbrt(u(rng)), th = std::acos(2 * u(rng) - 1), ph = a(rng);
  double x = r * std::sin(th) * std::cos(ph), y = r * std::sin(th) * std::sin(ph), z = r * std::cos(th);
  return {0.5 * (1 + z), 0.5 * (1 - z), 0.5 * x, -0.5 * y};
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = a + (b - a) * k / (n - 1);
  return t;
}

}  // namespace

TEST_CASE("fidelity examples") {
  DensityState up{1, 0, 0, 0}, dn{0, 1, 0, 0}, mixed{0.5, 0.5, 0, 0}, plus{0.5, 0.5, 0.5, 0};
  CHECK(fidelity(up, up) == doctest::Approx(1.0));
  CHECK(fidelity(up, dn) == doctest::Approx(0.0));
  CHECK(fidelity(mixed, plus) == doctest::Approx(0.5));
  CHECK(fidelity(mixed, up) == doctest::Approx(0.5));
  CHECK_THROWS_AS(fidelity({0.7, 0.7, 0, 0}, up), DataError);
}

TEST_CASE("fidelity symmetry, bounds and self-overlap") {
  std::mt19937 rng(4);
  for (int k = 0; k < 500; ++k) {
    auto a = random_state(rng), b = random_state(rng);
    double f = fidelity(a, b);
    CHECK(f == doctest::Approx(fidelity(b, a)).epsilon(1e-14));
    CHECK(f >= 0.0);
    CHECK(f <= 1 + 1e-10);
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bloch coordinates") {
  auto p = bloch_coordinates({1, 0, 0, 0});
  CHECK(p.z == 1.0);
  auto e = bloch_coordinates({0.5, 0.5, 0.5, 0});
  CHECK(std::abs(e.x) == 1.0);
  CHECK(e.purity == doctest::Approx(1.0));
  auto m = bloch_coordinates({0.5, 0.5, 0, 0});
  CHECK(std::hypot(m.x, m.y, m.z) == 0.0);
  CHECK(m.purity == doctest::Approx(0.5));
  auto y = bloch_coordinates({0.5, 0.5, 0, 0.5});
  CHECK(y.y == -1.0);
}

TEST_CASE("monoexponential fit recovers synthetic truth") {
  auto t = linspace(0, 10, 200);
  std::vector<double> y;
  for (double v : t) y.push_back(0.1 + 0.9 * std::exp(-v / 2.0));
  auto f = fit_monoexp(t, y, false);
  CHECK(f.converged);
  CHECK(f.T == doctest::Approx(2.0).epsilon(5e-4));
  CHECK(f.y0 == doctest::Approx(0.1).epsilon(1e-8));
  CHECK(f.x == 1.0);

  std::vector<double> ys;
  for (double v : t) ys.push_back(0.05 + 0.8 * std::exp(-std::pow(v / 1.7, 0.65)));
  auto s = fit_monoexp(t, ys, true);
  CHECK(s.converged);
  CHECK(s.T == doctest::Approx(1.7).epsilon(1e-6));
  CHECK(s.x == doctest::Approx(0.65).epsilon(1e-6));
}

TEST_CASE("refitting the model prediction is a fixed point") {
  auto t = linspace(0, 6, 80);
  std::vector<double> y;
  std::mt19937 rng(1);
  std::normal_distribution<double> noise(0, 0.01);
  for (double v : t) y.push_back(0.2 + 0.7 * std::exp(-std::pow(v / 1.3, 0.8)) + noise(rng));
  auto f = fit_monoexp(t, y, true);
  REQUIRE(f.converged);
  std::vector<double> pred;
  for (double v : t) pred.push_back(f.eval(v));
  auto g = fit_monoexp(t, pred, true);
  CHECK(g.T == doctest::Approx(f.T).epsilon(1e-8));
  CHECK(g.x == doctest::Approx(f.x).epsilon(1e-8));
  CHECK(g.a == doctest::Approx(f.a).epsilon(1e-8));
}

TEST_CASE("flat data is flagged") {
  auto t = linspace(0, 5, 30);
  std::vector<double> y(t.size(), 0.4);
  auto f = fit_monoexp(t, y, false);
  CHECK(std::abs(f.a) <= 1e-10);
  CHECK(f.degenerate);
}

TEST_CASE("fit input validation") {
  CHECK_THROWS_AS(fit_monoexp({0, 1, 2}, {1, 0.5, 0.2}, false), DataError);
  CHECK_THROWS_AS(fit_monoexp({0, 1, 1, 2}, {1, 0.5, 0.4, 0.2}, false), DataError);
  CHECK_THROWS_AS(fit_biexp({0, 1, 2, 3, 4}, {1, 0.5, 0.2, 0.1, 0}, {}), DataError);
}

TEST_CASE("biexponential fit") {
  auto t = linspace(0, 40, 300);
  std::vector<double> y;
  for (double v : t) y.push_back(0.6 * std::exp(-v / 1.0) + 0.4 * std::exp(-v / 10.0));
  FitOptions o;
  o.freeze_y0 = true;
  auto f = fit_biexp(t, y, o);
  CHECK(f.converged);
  CHECK(f.T == doctest::Approx(1.0).epsilon(0.01));
  CHECK(f.T_slow == doctest::Approx(10.0).epsilon(0.01));
  CHECK(f.y0 == 0.0);

  std::vector<double> single;
  for (double v : t) single.push_back(std::exp(-v / 3.0));
  auto d = fit_biexp(t, single, o);
  CHECK(d.degenerate);

  std::vector<double> st;
  for (double v : t) st.push_back(std::exp(-std::pow(v / 4.0, 0.6)));
  auto b = fit_biexp(t, st, o);
  CHECK(b.T < 4.0);
  CHECK(b.T_slow > 4.0);
}

TEST_CASE("free evolution rate recovered by the fit") {
  double ga = 0.3, ge = 0.9, gm = 0.4;
  auto t = linspace(0, 5, 120);
  std::vector<double> y;
  for (double v : t) {
    auto r = free_evolution({1, 0, 0, 0}, ga, ge, gm, 50.0, v);
    y.push_back(r.rho22 - r.rho11);
  }
  auto f = fit_monoexp(t, y, false);
  CHECK(1.0 / f.T == doctest::Approx(ga + ge + gm).epsilon(1e-3));
}
