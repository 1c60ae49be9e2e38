#include "fdcluster/metrics.hpp"

#include <Eigen/QR>
#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace fdc;
using test::constant_curve;
using test::midgrid;
using test::theta_curve;

namespace {

std::shared_ptr<const Spectrum> spectrum_of(const FunctionalSample& s) {
  return std::make_shared<const Spectrum>(eigendecompose(estimate_covariance(s)));
}

// Sample {s*theta_1, -s*theta_1} whose covariance has the single eigenpair
// (2 s^2, theta_1).
std::shared_ptr<const Spectrum> single_eigenpair_spectrum(double lambda,
                                                          const GridPtr& grid) {
  const double s = std::sqrt(lambda / 2.0);
  const MultiCurve t1 = theta_curve(1, grid);
  const MultiCurve a(s * t1.stacked(), 1, grid);
  const MultiCurve b(-s * t1.stacked(), 1, grid);
  return spectrum_of(FunctionalSample({a, b}));
}

// Explicit evaluation of the empirical d_p with a fully materialized
// orthonormal complement basis, following the two-sum form: regularized
// Mahalanobis contributions over the retained eigenspace plus p times the
// squared projections onto a complement basis.
double dp_explicit_complement(const MultiCurve& a, const MultiCurve& b,
                              const Spectrum& sp, double p) {
  const Eigen::Index dim = sp.basis().rows();
  const int r = sp.rank();
  const MultiCurve diff(a.stacked() - b.stacked(), a.components(), a.grid());

  double total = 0.0;
  for (int k = 0; k < r; ++k) {
    const double dmk = mahalanobis_component(diff, k, sp);
    total += dmk * dmk * regularizing_weight(sp.eigenvalue(k), p);
  }

  // complement columns of a full QR of the retained basis
  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(dim, dim);
  if (r > 0) padded.leftCols(r) = sp.basis();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(padded);
  const Eigen::MatrixXd q = qr.householderQ();
  const double sqrt_w = std::sqrt(sp.weight());
  for (Eigen::Index k = r; k < dim; ++k) {
    // complement eigenfunction q_k / sqrt(dt); <diff, phi> = sqrt(dt) q_k . d
    const double coeff = sqrt_w * q.col(k).dot(diff.stacked());
    total += p * coeff * coeff;
  }
  return std::sqrt(total);
}

}  // namespace

TEST_CASE("regularizing weight") {
  CHECK(regularizing_weight(0.0, 3.0) == 0.0);
  CHECK(regularizing_weight(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(regularizing_weight(1.0, 1e15) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(regularizing_weight(1.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(regularizing_weight(1.0, -2.0), ArgumentError);
  CHECK_THROWS_AS(regularizing_weight(-1.0, 1.0), ArgumentError);
  // nondecreasing in both arguments
  CHECK(regularizing_weight(1.0, 2.0) >= regularizing_weight(1.0, 1.0));
  CHECK(regularizing_weight(2.0, 1.0) >= regularizing_weight(1.0, 1.0));
}

TEST_CASE("Mahalanobis component") {
  const auto grid = midgrid(60);
  const auto sp = single_eigenpair_spectrum(4.0, grid);
  REQUIRE(sp->rank() == 1);
  REQUIRE(sp->eigenvalue(0) == doctest::Approx(4.0).epsilon(1e-12));

  const MultiCurve zero = constant_curve(0.0, grid);
  CHECK(mahalanobis_component(zero, 0, *sp) == 0.0);

  const MultiCurve phi = sp->eigenfunction(0);
  CHECK(mahalanobis_component(phi, 0, *sp) == doctest::Approx(0.5).epsilon(1e-12));

  const MultiCurve orth = theta_curve(2, grid);
  CHECK(mahalanobis_component(orth, 0, *sp) <= 1e-8);

  CHECK_THROWS_AS(mahalanobis_component(phi, 1, *sp), ArgumentError);
}

TEST_CASE("d_p on a single-eigenpair spectrum") {
  const auto grid = midgrid(60);
  const auto sp = single_eigenpair_spectrum(1.0, grid);
  const MetricSpec spec = MetricSpec::dp(sp, 1.0);

  const MultiCurve phi = sp->eigenfunction(0);
  const MultiCurve zero = constant_curve(0.0, grid);
  CHECK(dp_distance(phi, phi, spec) == 0.0);
  // h_1(1) = 1/(1+1); the difference phi has no residual component
  CHECK(dp_distance(phi, zero, spec) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
}

TEST_CASE("d_p with an empty retained eigenspace is sqrt(p) times L2") {
  const auto grid = midgrid(30);
  const MultiCurve c = constant_curve(1.5, grid);
  const auto sp = spectrum_of(FunctionalSample({c, c, c}));  // zero covariance
  REQUIRE(sp->rank() == 0);
  const MetricSpec spec = MetricSpec::dp(sp, 4.0);
  Rng rng(5);
  const MultiCurve a = test::random_curve(rng, grid);
  const MultiCurve b = test::random_curve(rng, grid);
  CHECK(dp_distance(a, b, spec) ==
        doctest::Approx(2.0 * l2_distance(a, b)).epsilon(1e-12));
}

TEST_CASE("residual-trick d_p equals the explicit complement-basis form") {
  Rng rng(29);
  for (int rep = 0; rep < 25; ++rep) {
    const int components = rep % 2 == 0 ? 1 : 2;
    const int T = components == 1 ? 2 + static_cast<int>(rng.below(11)) : 3;
    const auto grid = midgrid(T);
    const int n = 2 + static_cast<int>(rng.below(5));
    const FunctionalSample s = test::random_sample(rng, grid, n, components);
    const auto sp = spectrum_of(s);
    const MultiCurve a = test::random_curve(rng, grid, components);
    const MultiCurve b = test::random_curve(rng, grid, components);
    for (const double log10p : {-2.0, 0.0, 3.0}) {
      const double p = std::pow(10.0, log10p);
      const double via_residual = dp_distance(a, b, MetricSpec::dp(sp, p));
      const double via_complement = dp_explicit_complement(a, b, *sp, p);
      CHECK(via_residual == doctest::Approx(via_complement).epsilon(1e-9));
    }
  }
}

TEST_CASE("d_p metric axioms") {
  Rng rng(41);
  const auto grid = midgrid(20);
  const FunctionalSample s = test::random_sample(rng, grid, 10);
  const auto sp = spectrum_of(s);
  const MetricSpec spec = MetricSpec::dp(sp, 10.0);

  for (int rep = 0; rep < 1000; ++rep) {
    const MultiCurve a = test::random_curve(rng, grid);
    const MultiCurve b = test::random_curve(rng, grid);
    const MultiCurve c = test::random_curve(rng, grid);
    const double ab = dp_distance(a, b, spec);
    const double ba = dp_distance(b, a, spec);
    CHECK(ab == ba);
    CHECK(ab >= 0.0);
    const double ac = dp_distance(a, c, spec);
    const double bc = dp_distance(b, c, spec);
    CHECK(ac <= ab + bc + 1e-10 * (ab + bc));
  }

  const MultiCurve a = test::random_curve(rng, grid);
  CHECK(dp_distance(a, a, spec) <= 1e-10);
  const MultiCurve shifted(a.stacked() + Eigen::VectorXd::Constant(20, 1e-3), 1, grid);
  CHECK(dp_distance(a, shifted, spec) > 1e-10);
}

TEST_CASE("d_p is nondecreasing in p and bounded by sqrt(p) L2") {
  Rng rng(43);
  const auto grid = midgrid(25);
  const FunctionalSample s = test::random_sample(rng, grid, 8);
  const auto sp = spectrum_of(s);
  const std::vector<double> grid_log10p{-6, -4, -2, 0, 2, 4, 6, 8};

  for (int rep = 0; rep < 50; ++rep) {
    const MultiCurve a = test::random_curve(rng, grid);
    const MultiCurve b = test::random_curve(rng, grid);
    double previous = 0.0;
    for (std::size_t i = 0; i < grid_log10p.size(); ++i) {
      const double p = std::pow(10.0, grid_log10p[i]);
      const double d = dp_distance(a, b, MetricSpec::dp(sp, p));
      if (i > 0) CHECK(d >= previous * (1.0 - 1e-12));
      CHECK(d <= std::sqrt(p) * l2_distance(a, b) * (1.0 + 1e-12));
      previous = d;
    }
  }
}

TEST_CASE("d_p limits in p") {
  Rng rng(47);
  const auto grid = midgrid(25);
  const FunctionalSample s = test::random_sample(rng, grid, 8);
  const auto sp = spectrum_of(s);

  const MultiCurve a = test::random_curve(rng, grid);
  const MultiCurve b = test::random_curve(rng, grid);

  // small p: d_p / sqrt(p) -> ||a - b||
  const double p_small = 1e-8;
  const double ratio = dp_distance(a, b, MetricSpec::dp(sp, p_small)) / std::sqrt(p_small);
  CHECK(ratio == doctest::Approx(l2_distance(a, b)).epsilon(1e-3));

  // large p on the retained span: d_p -> sqrt(sum_k c_k^2 / lambda_k)
  Eigen::VectorXd coeffs(sp->rank());
  for (int k = 0; k < sp->rank(); ++k) coeffs[k] = rng.normal();
  Eigen::VectorXd stacked = Eigen::VectorXd::Zero(25);
  for (int k = 0; k < sp->rank(); ++k)
    stacked += coeffs[k] * sp->eigenfunction(k).stacked();
  const MultiCurve in_span(stacked, 1, grid);
  const MultiCurve zero = constant_curve(0.0, grid);
  double expected = 0.0;
  const MultiCurve diff(in_span.stacked() - zero.stacked(), 1, grid);
  for (int k = 0; k < sp->rank(); ++k) {
    const double c = inner_product(diff, sp->eigenfunction(k));
    expected += c * c / sp->eigenvalue(k);
  }
  const double d_large = dp_distance(in_span, zero, MetricSpec::dp(sp, 1e12));
  CHECK(d_large == doctest::Approx(std::sqrt(expected)).epsilon(1e-4));
}

TEST_CASE("truncated Mahalanobis semi-distance") {
  const auto grid = midgrid(60);
  const auto sp = single_eigenpair_spectrum(1.0, grid);
  const MetricSpec spec = MetricSpec::truncated(sp, 1);

  const MultiCurve phi = sp->eigenfunction(0);
  const MultiCurve zero = constant_curve(0.0, grid);
  CHECK(truncated_mahalanobis(phi, phi, spec) == 0.0);
  CHECK(truncated_mahalanobis(phi, zero, spec) == doctest::Approx(1.0).epsilon(1e-10));

  // difference orthogonal to the first K components: semi-distance says 0
  const MultiCurve orth = theta_curve(4, grid);
  CHECK(truncated_mahalanobis(orth, zero, spec) <= 1e-8);
  CHECK(l2_distance(orth, zero) > 0.5);

  CHECK_THROWS_AS(MetricSpec::truncated(sp, 2), ArgumentError);  // K > rank
  CHECK_THROWS_AS(MetricSpec::truncated(sp, 0), ArgumentError);
}

TEST_CASE("distance dispatch") {
  const auto grid = midgrid(60);
  const auto sp = single_eigenpair_spectrum(1.0, grid);
  const MultiCurve phi = sp->eigenfunction(0);
  const MultiCurve zero = constant_curve(0.0, grid);

  CHECK(distance(phi, phi, MetricSpec::l2()) == 0.0);
  CHECK(distance(phi, zero, MetricSpec::dp(sp, 1.0)) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
  CHECK(distance(phi, zero, MetricSpec::truncated(sp, 1)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pairwise distances are symmetric and match single evaluations") {
  Rng rng(53);
  const auto grid = midgrid(15);
  const FunctionalSample s = test::random_sample(rng, grid, 12);
  const auto sp = spectrum_of(s);
  const MetricSpec spec = MetricSpec::dp(sp, 100.0);
  const Eigen::MatrixXd d1 = pairwise_distances(s, spec, 1);
  const Eigen::MatrixXd d4 = pairwise_distances(s, spec, 4);
  CHECK((d1 - d4).cwiseAbs().maxCoeff() == 0.0);
  CHECK((d1 - d1.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(d1(3, 7) == distance(s.curve(3), s.curve(7), spec));
  CHECK(d1.diagonal().cwiseAbs().maxCoeff() == 0.0);
}
