#include "fdcluster/core.hpp"

#include <cmath>

#include "doctest.h"
#include "fdcluster/rng.hpp"
#include "test_helpers.hpp"

using namespace fdc;
using test::constant_curve;
using test::midgrid;
using test::theta_curve;

namespace {

// Independent oracle: the inner product written as a plain double loop.
double grid_summation(const MultiCurve& a, const MultiCurve& b) {
  double sum = 0.0;
  for (int l = 0; l < a.components(); ++l)
    for (int j = 0; j < a.points(); ++j) sum += a.value(l, j) * b.value(l, j);
  return sum * a.grid()->weight();
}

}  // namespace

TEST_CASE("grid construction and validation") {
  const Grid g(0.0, 1.0, 150);
  CHECK(g.size() == 150);
  CHECK(g.weight() == doctest::Approx(1.0 / 149).epsilon(1e-14));
  CHECK(g.point(0) == 0.0);
  CHECK(g.point(149) == 1.0);

  const Grid m = Grid::midpoint(0.0, 1.0, 150);
  CHECK(m.weight() == doctest::Approx(1.0 / 150).epsilon(1e-14));
  CHECK(m.point(0) == doctest::Approx(1.0 / 300).epsilon(1e-14));
  CHECK(m.point(149) == doctest::Approx(1.0 - 1.0 / 300).epsilon(1e-14));

  CHECK_THROWS_AS(Grid(0.0, 1.0, 1), ArgumentError);
  CHECK_THROWS_AS(Grid(1.0, 0.0, 10), ArgumentError);
  CHECK_THROWS_AS(Grid::from_points({0.0, 0.1, 0.5, 1.0}), ArgumentError);
  CHECK_THROWS_AS(Grid::from_points({0.0, 0.1, 0.1, 0.2}), ArgumentError);
  const Grid fp = Grid::from_points({1.0, 1.5, 2.0, 2.5});
  CHECK(fp.weight() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("inner product on the simulation grid") {
  const auto grid = midgrid(150);
  const MultiCurve t1 = theta_curve(1, grid);
  const MultiCurve t2 = theta_curve(2, grid);
  const MultiCurve t3 = theta_curve(3, grid);

  CHECK(inner_product(t1, t1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(inner_product(t2, t3)) < 1e-12);

  const MultiCurve c3 = constant_curve(3.0, grid);
  const MultiCurve c1 = constant_curve(1.0, grid);
  CHECK(inner_product(c3, c1) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("inner product equals explicit grid summation") {
  Rng rng(11);
  const auto grid = midgrid(37);
  for (int rep = 0; rep < 10; ++rep) {
    const MultiCurve a = test::random_curve(rng, grid, 2);
    const MultiCurve b = test::random_curve(rng, grid, 2);
    const double expected = grid_summation(a, b);
    CHECK(inner_product(a, b) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("inner product symmetry and bilinearity") {
  Rng rng(7);
  const auto grid = midgrid(40);
  for (int rep = 0; rep < 200; ++rep) {
    const MultiCurve a = test::random_curve(rng, grid);
    const MultiCurve b = test::random_curve(rng, grid);
    const MultiCurve c = test::random_curve(rng, grid);
    CHECK(inner_product(a, b) == inner_product(b, a));
    const double alpha = rng.normal();
    const double beta = rng.normal();
    const MultiCurve combo =
        MultiCurve(alpha * a.stacked() + beta * c.stacked(), 1, grid);
    const double lhs = inner_product(combo, b);
    const double rhs = alpha * inner_product(a, b) + beta * inner_product(c, b);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("l2 distance basics") {
  const auto grid = midgrid(150);
  const MultiCurve t1 = theta_curve(1, grid);
  const MultiCurve t2 = theta_curve(2, grid);
  const MultiCurve zero = constant_curve(0.0, grid);

  CHECK(l2_distance(t1, t1) == 0.0);
  CHECK(l2_distance(t1, zero) == doctest::Approx(1.0).epsilon(1e-12));

  // ||(t1 + t2) - t1|| = ||t2||, checked against the summation oracle
  const MultiCurve sum = MultiCurve(t1.stacked() + t2.stacked(), 1, grid);
  const double expected = std::sqrt(grid_summation(t2, t2));
  CHECK(l2_distance(sum, t1) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(l2_distance(sum, t1) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("l2 distance satisfies the triangle inequality") {
  Rng rng(23);
  const auto grid = midgrid(25);
  for (int rep = 0; rep < 1000; ++rep) {
    const MultiCurve a = test::random_curve(rng, grid);
    const MultiCurve b = test::random_curve(rng, grid);
    const MultiCurve c = test::random_curve(rng, grid);
    const double ac = l2_distance(a, c);
    const double ab = l2_distance(a, b);
    const double bc = l2_distance(b, c);
    CHECK(ac <= ab + bc + 1e-10 * (ab + bc));
  }
}

TEST_CASE("sample mean") {
  const auto grid = midgrid(20);
  const MultiCurve c = constant_curve(2.5, grid);
  const FunctionalSample same({c, c, c});
  CHECK((sample_mean(same).stacked() - c.stacked()).cwiseAbs().maxCoeff() == 0.0);

  const MultiCurve neg = MultiCurve(-c.stacked(), 1, grid);
  const FunctionalSample pair({c, neg});
  CHECK(sample_mean(pair).stacked().cwiseAbs().maxCoeff() == 0.0);

  const FunctionalSample three(
      {constant_curve(1.0, grid), constant_curve(2.0, grid), constant_curve(6.0, grid)});
  const MultiCurve mean = sample_mean(three);
  CHECK(mean.value(0, 0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(mean.value(0, 19) == doctest::Approx(3.0).epsilon(1e-15));

  const MultiCurve sub = sample_mean(three, {0, 2});
  CHECK(sub.value(0, 3) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK_THROWS_AS(sample_mean(three, {}), ArgumentError);
  CHECK_THROWS_AS(sample_mean(three, {7}), ArgumentError);
}

TEST_CASE("dimension errors") {
  const auto g1 = midgrid(10);
  const auto g2 = midgrid(12);
  const MultiCurve a = constant_curve(1.0, g1);
  const MultiCurve b = constant_curve(1.0, g2);
  CHECK_THROWS_AS(inner_product(a, b), DimensionError);
  CHECK_THROWS_AS(l2_distance(a, b), DimensionError);
  const MultiCurve two = constant_curve(1.0, g1, 2);
  CHECK_THROWS_AS(inner_product(a, two), DimensionError);
  CHECK_THROWS_AS(FunctionalSample({a, b}), DimensionError);
  CHECK_THROWS_AS(FunctionalSample({a}), ArgumentError);  // n >= 2
}
