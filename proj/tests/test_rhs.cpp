#include <doctest.h>

#include <cmath>

#include "carasolve/errors.hpp"
#include "carasolve/random.hpp"
#include "carasolve/rhs.hpp"

using namespace carasolve;

TEST_CASE("builtin grande_sign values") {
  Rhs f = builtin_rhs("grande_sign");
  CHECK(f.eval(0.0, 0.0) == 1.0);  // value at the switch itself
  CHECK(f.eval(0.0, -2.5) == 1.0);
  CHECK(f.eval(0.0, 1e-300) == -1.0);
  CHECK(f.props.y_usc);
  CHECK(f.props.y_quasicontinuous);
  CHECK_FALSE(f.props.y_increasing);
  CHECK(f.phi(0.3) == 1.0);
}

TEST_CASE("builtin grande_sin values") {
  Rhs f = builtin_rhs("grande_sin");
  CHECK(f.eval(0.0, 0.0) == 1.0);
  CHECK(f.eval(0.0, -1.0) == 1.0);
  for (int k = 1; k <= 5; ++k) {
    double y = 2.0 / (4.0 * k + 1.0);  // sine at pi/2 + 2*pi*k
    CHECK(f.eval(0.0, y) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(f.props.y_darboux);
  CHECK_FALSE(f.props.y_increasing);
}

TEST_CASE("builtin floor and friends") {
  Rhs fl = builtin_rhs("floor");
  CHECK(fl.eval(0.0, 1.999) == 1.0);
  CHECK(fl.eval(0.0, 2.0) == 2.0);
  CHECK(fl.eval(0.0, -0.5) == -1.0);
  CHECK(fl.eval(0.0, 100.0) == 8.0);  // clamp
  CHECK(fl.props.y_increasing);

  Rhs sq = builtin_rhs("sqrt_plus");
  CHECK(sq.eval(0.0, 4.0) == 4.0);
  CHECK(sq.eval(0.0, -3.0) == 0.0);
  CHECK(sq.valid_y_hi == doctest::Approx(4.0));

  Rhs c = builtin_rhs("const", {7.0});
  CHECK(c.eval(1.0, -5.0) == 7.0);
  CHECK(c.phi(0.0) == 7.0);

  Rhs lin = builtin_rhs("linear");
  CHECK(lin.eval(0.5, 0.25) == 0.25);
  CHECK(lin.phi(0.0) == doctest::Approx(2.0));

  CHECK_THROWS_AS(builtin_rhs("no_such_rhs"), ConfigError);
}

TEST_CASE("range of the counterexample sections stays in [-1, 1]") {
  Rng rng(2024);
  for (const char* name : {"grande_sign", "grande_sin"}) {
    Rhs f = builtin_rhs(name);
    for (int i = 0; i < 10000; ++i) {
      double v = f.eval(rng.uniform(-3.0, 3.0), rng.uniform(-50.0, 50.0));
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("domination |f| <= phi on the declared y-range") {
  Rng rng(7);
  struct Window {
    const char* name;
    double x_lo, x_hi, y_lo, y_hi;
  };
  const Window windows[] = {
      {"grande_sign", 0.0, 1.0, -20.0, 20.0}, {"grande_sin", 0.0, 1.0, -20.0, 20.0},
      {"const", 0.0, 1.0, -20.0, 20.0},       {"floor", 0.0, 1.0, -20.0, 20.0},
      {"sqrt_plus", 0.0, 1.0, -20.0, 4.0},    {"linear", 0.0, 1.0, -2.0, 2.0},
  };
  for (const auto& w : windows) {
    Rhs f = builtin_rhs(w.name);
    for (int i = 0; i < 10000; ++i) {
      double x = rng.uniform(w.x_lo, w.x_hi);
      double y = rng.uniform(w.y_lo, w.y_hi);
      CHECK(std::fabs(f.eval(x, y)) <= f.phi(x) + 1e-12);
    }
  }
}

TEST_CASE("increasing flag soundness on random ordered pairs") {
  Rng rng(11);
  for (const char* name : {"const", "floor", "sqrt_plus", "linear"}) {
    Rhs f = builtin_rhs(name);
    REQUIRE(f.props.y_increasing);
    for (int i = 0; i < 10000; ++i) {
      double x = rng.uniform(0.0, 1.0);
      double y1 = rng.uniform(-6.0, 6.0);
      double y2 = rng.uniform(-6.0, 6.0);
      if (y1 > y2) std::swap(y1, y2);
      CHECK(f.eval(x, y1) <= f.eval(x, y2));
    }
  }
}

TEST_CASE("dyadic dense sampler") {
  auto pts = dyadic_points(0.0, 1.0, 100);
  REQUIRE(pts.size() >= 100);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i] > 0.0);
    CHECK(pts[i] < 1.0);
    if (i > 0) CHECK(pts[i] > pts[i - 1]);
    // Every point is k/2^L for the chosen level: scaling by 2^52 must be integral.
    double scaled = std::ldexp(pts[i], 52);
    CHECK(scaled == std::floor(scaled));
  }
  // Tiny interval far from zero still resolves.
  auto tiny = dyadic_points(0.70001, 0.70002, 50);
  CHECK(tiny.size() >= 50);
}

TEST_CASE("section probe: grande_sign") {
  Rhs f = builtin_rhs("grande_sign");
  auto report = probe_section_properties(f, 0.0, {-1.0, -0.5, 0.0, 0.5, 1.0}, 1e-9);
  CHECK(report.usc.empty());
  CHECK(report.domination.empty());
  REQUIRE_FALSE(report.monotonicity.empty());
  // Direct evaluation: f(0.5) = -1 < f(0) = 1.
  CHECK(report.monotonicity.front().y == 0.0);
  CHECK(report.monotonicity.front().witness == 0.5);
}

TEST_CASE("section probe: constant is clean") {
  Rhs f = builtin_rhs("const", {5.0});
  auto report = probe_section_properties(f, 0.0, {-1.0, 0.0, 1.0}, 1e-9);
  CHECK(report.clean());
}

TEST_CASE("section probe: lsc-but-not-usc switch flagged from below") {
  // f = +1 for y >= 0, -1 for y < 0: usc fails on the left of 0, i.e. at
  // nearby points y < 0 whose neighborhoods reach across the switch.
  Rhs f = builtin_rhs("grande_sign");
  f.eval = [](double, double y) { return y >= 0.0 ? 1.0 : -1.0; };
  auto report = probe_section_properties(f, 0.0, {-1.0, -0.01, 0.5, 1.0}, 1e-9);
  REQUIRE_FALSE(report.usc.empty());
  bool found_left_flag = false;
  for (const auto& v : report.usc) {
    if (v.y < 0.0 && v.witness >= 0.0) found_left_flag = true;
  }
  CHECK(found_left_flag);
}

TEST_CASE("probe precondition checks") {
  Rhs f = builtin_rhs("const");
  CHECK_THROWS_AS(probe_section_properties(f, 0.0, {0.0, 1.0}, 1e-9), PreconditionError);
  CHECK_THROWS_AS(probe_section_properties(f, 0.0, {0.0, 0.5, 1.0}, 0.0), PreconditionError);
}

TEST_CASE("make_problem validation") {
  CHECK_THROWS_AS(make_problem(builtin_rhs("const"), 1.0, 0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(make_problem(builtin_rhs("const"), 0.0, 1.0, std::nan("")), ConfigError);
}
