#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "pxlap/modular.hpp"

using namespace pxlap;

TEST_CASE("modular matches the independent trapezoid sum") {
  for (GridPtr g : {Grid::line(1.0, 33), Grid::rectangle(1.0, 2.0, 9, 11)}) {
    Discretization disc(g);
    ExponentField e =
        ExponentField::from_function(g, [](double x, double y) { return 2.0 + x + 0.5 * y; });
    std::mt19937_64 rng(5);
    ScalarField u = testing::random_field(g, rng, 2.0);
    CHECK(modular(disc, u, e) ==
          doctest::Approx(testing::oracle_modular(*g, u.values, e)).epsilon(1e-13));
  }
}

TEST_CASE("modular of a polynomial approaches the integral") {
  // u = x(1-x), e = 2: int u^2 = 1/30
  auto rho = [](int nodes) {
    GridPtr g = Grid::line(1.0, nodes);
    Discretization disc(g);
    ScalarField u = ScalarField::from_function(g, [](double x, double) { return x * (1 - x); });
    return modular(disc, u, ExponentField::constant(g, 2.0));
  };
  const double exact = 1.0 / 30.0;
  const double c = rho(65), f = rho(129);
  CHECK(c == doctest::Approx(exact).epsilon(1e-3));
  CHECK(std::fabs(f - exact) < std::fabs(c - exact));
}

TEST_CASE("luxemburg norm reduces to the classical norm at constant exponents") {
  GridPtr g = Grid::line(1.0, 65);
  Discretization disc(g);
  std::mt19937_64 rng(17);
  ScalarField u = testing::random_field(g, rng);
  for (double e : {2.0, 4.0, 6.0}) {
    ExponentField ef = ExponentField::constant(g, e);
    CHECK(luxemburg_norm(disc, u, ef) ==
          doctest::Approx(std::pow(modular(disc, u, ef), 1.0 / e)).epsilon(1e-9));
  }
  CHECK(luxemburg_norm(disc, ScalarField(g), ExponentField::constant(g, 2.0)) == 0.0);
}

TEST_CASE("luxemburg norm agrees with the bisection oracle") {
  GridPtr g = Grid::line(1.0, 65);
  Discretization disc(g);
  ExponentField e =
      ExponentField::from_function(g, [](double x, double) { return 1.5 + 0.3 * x; });
  std::mt19937_64 rng(23);
  for (int k = 0; k < 50; ++k) {
    ScalarField u = testing::random_field(g, rng, std::pow(10.0, (k % 7) - 3));
    const double lib = luxemburg_norm(disc, u, e);
    const double oracle = testing::oracle_luxemburg(*g, u.values, e);
    CHECK(lib == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("luxemburg properties: homogeneity, unit modular, brackets") {
  GridPtr g = Grid::rectangle(1.0, 1.0, 17, 17);
  Discretization disc(g);
  ExponentField e = ExponentField::from_function(
      g, [](double x, double y) { return 2.0 + 0.5 * x + 0.25 * y; });
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> logt(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    ScalarField u = testing::random_field(g, rng);
    const double norm = luxemburg_norm(disc, u, e);
    REQUIRE(norm > 0.0);

    const double t = std::pow(10.0, logt(rng));
    ScalarField tu = u;
    tu *= t;
    CHECK(luxemburg_norm(disc, tu, e) == doctest::Approx(t * norm).epsilon(1e-9));

    ScalarField unit = u;
    unit *= 1.0 / norm;
    CHECK(modular(disc, unit, e) == doctest::Approx(1.0).epsilon(1e-8));

    // norm-modular bracket: rho^(1/e-) and rho^(1/e+) straddle the norm
    const double rho = modular(disc, u, e);
    const double lo = std::min(std::pow(rho, 1.0 / e.inf()), std::pow(rho, 1.0 / e.sup()));
    const double hi = std::max(std::pow(rho, 1.0 / e.inf()), std::pow(rho, 1.0 / e.sup()));
    CHECK(norm >= lo * (1.0 - 1e-12));
    CHECK(norm <= hi * (1.0 + 1e-12));
  }
}

TEST_CASE("gradient modular and norm are consistent at p = 2") {
  GridPtr g = Grid::rectangle(1.0, 1.0, 17, 17);
  Discretization disc(g);
  ExponentField p2 = ExponentField::constant(g, 2.0);
  std::mt19937_64 rng(31);
  ScalarField u = testing::random_field(g, rng);
  CHECK(gradient_luxemburg_norm(disc, u, p2) ==
        doctest::Approx(std::sqrt(gradient_modular(disc, u, p2))).epsilon(1e-9));
}

TEST_CASE("holder inequality holds for random pairs") {
  GridPtr g = Grid::line(1.0, 65);
  Discretization disc(g);
  ExponentField p =
      ExponentField::from_function(g, [](double x, double) { return 1.5 + 0.3 * x; });
  std::mt19937_64 rng(37);
  for (int k = 0; k < 200; ++k) {
    ScalarField f = testing::random_field(g, rng, std::pow(10.0, (k % 5) - 2));
    ScalarField h = testing::random_field(g, rng);
    const HolderCheck chk = holder_check(disc, f, h, p);
    CHECK(chk.ok);
    CHECK(chk.lhs <= chk.rhs);
  }
}

TEST_CASE("holder violation is detected with a broken conjugate") {
  // shrinking the dual exponent toward 1 deflates the rhs; a spiky pair then
  // lands above it, which is exactly what the checker must flag
  GridPtr g = Grid::line(1.0, 65);
  Discretization disc(g);
  ExponentField p = ExponentField::constant(g, 2.0);
  ExponentField broken = ExponentField::from_function(g, [](double, double) { return 1.05; });

  ScalarField f(g), h(g);
  f.values[32] = 1e4;
  h.values[32] = 1e4;
  const HolderCheck good = holder_check(disc, f, h, p);
  CHECK(good.ok);
  const HolderCheck bad = holder_check(disc, f, h, p, &broken);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("poincare ratio of the 1d ground state") {
  GridPtr g = Grid::line(1.0, 129);
  Discretization disc(g);
  ScalarField u = ScalarField::from_function(
      g, [](double x, double) { return std::sin(3.14159265358979324 * x); });
  const double ratio = poincare_ratio(disc, u, ExponentField::constant(g, 2.0));
  CHECK(ratio == doctest::Approx(1.0 / 3.14159265358979324).epsilon(0.02));
}
