#include "fdcluster/metrics.hpp"

#include <cmath>

#include "fdcluster/parallel.hpp"

namespace fdc {

MetricSpec MetricSpec::dp(std::shared_ptr<const Spectrum> spectrum, double p) {
  if (!spectrum) throw ArgumentError("d_p requires a spectrum");
  if (!(p > 0.0)) throw ArgumentError("d_p requires p > 0");
  return MetricSpec(MetricKind::GeneralizedMahalanobis, std::move(spectrum), p, 0);
}

MetricSpec MetricSpec::dp_log10(std::shared_ptr<const Spectrum> spectrum, double log10p) {
  return dp(std::move(spectrum), std::pow(10.0, log10p));
}

MetricSpec MetricSpec::truncated(std::shared_ptr<const Spectrum> spectrum, int K) {
  if (!spectrum) throw ArgumentError("truncated Mahalanobis requires a spectrum");
  if (K < 1 || K > spectrum->rank())
    throw ArgumentError("truncation K must satisfy 1 <= K <= rank");
  return MetricSpec(MetricKind::TruncatedMahalanobis, std::move(spectrum), 0.0, K);
}

MetricSpec MetricSpec::l2() { return MetricSpec(MetricKind::L2, nullptr, 0.0, 0); }

double regularizing_weight(double lambda, double p) {
  if (!(p > 0.0)) throw ArgumentError("regularizing weight requires p > 0");
  if (lambda < 0.0) throw ArgumentError("regularizing weight requires lambda >= 0");
  return lambda / (lambda + 1.0 / p);
}

double mahalanobis_component(const MultiCurve& diff, int k, const Spectrum& spectrum) {
  if (k < 0 || k >= spectrum.rank())
    throw ArgumentError("Mahalanobis component index beyond rank");
  if (diff.components() != spectrum.components() || !(*diff.grid() == *spectrum.grid()))
    throw DimensionError("curve not on the spectrum's grid");
  const double coeff = std::sqrt(spectrum.weight()) *
                       spectrum.basis().col(k).dot(diff.stacked());
  return std::abs(coeff) / std::sqrt(spectrum.eigenvalue(k));
}

namespace {

void check_against_spectrum(const MultiCurve& a, const MultiCurve& b,
                            const Spectrum& spectrum) {
  if (!a.same_shape(b)) throw DimensionError("curves do not share grid and components");
  if (a.components() != spectrum.components() || !(*a.grid() == *spectrum.grid()))
    throw DimensionError("curves not on the spectrum's grid");
}

}  // namespace

double dp_distance(const MultiCurve& a, const MultiCurve& b, const MetricSpec& spec) {
  if (spec.kind() != MetricKind::GeneralizedMahalanobis)
    throw ArgumentError("metric spec is not d_p");
  const Spectrum& sp = *spec.spectrum();
  check_against_spectrum(a, b, sp);

  const Eigen::VectorXd diff = a.stacked() - b.stacked();
  const double dt = sp.weight();
  const double l2sq = dt * diff.squaredNorm();
  const double p = spec.p();
  const double inv_p = 1.0 / p;

  double regularized = 0.0;
  double projected = 0.0;
  if (sp.rank() > 0) {
    const Eigen::VectorXd coeffs =
        std::sqrt(dt) * (sp.basis().transpose() * diff);
    for (int k = 0; k < sp.rank(); ++k) {
      const double c2 = coeffs[k] * coeffs[k];
      // c^2/(lambda + 1/p) == d_{M,k}^2 * h_k(p)
      regularized += c2 / (sp.eigenvalue(k) + inv_p);
      projected += c2;
    }
  }
  const double residual = std::max(0.0, l2sq - projected);
  return std::sqrt(regularized + p * residual);
}

double truncated_mahalanobis(const MultiCurve& a, const MultiCurve& b,
                             const MetricSpec& spec) {
  if (spec.kind() != MetricKind::TruncatedMahalanobis)
    throw ArgumentError("metric spec is not d_M^K");
  const Spectrum& sp = *spec.spectrum();
  check_against_spectrum(a, b, sp);
  const int K = spec.truncation();
  if (K > sp.rank()) throw ArgumentError("truncation K exceeds rank");

  const Eigen::VectorXd diff = a.stacked() - b.stacked();
  const Eigen::VectorXd coeffs =
      std::sqrt(sp.weight()) * (sp.basis().leftCols(K).transpose() * diff);
  double sum = 0.0;
  for (int k = 0; k < K; ++k) sum += coeffs[k] * coeffs[k] / sp.eigenvalue(k);
  return std::sqrt(sum);
}

double distance(const MultiCurve& a, const MultiCurve& b, const MetricSpec& spec) {
  switch (spec.kind()) {
    case MetricKind::GeneralizedMahalanobis:
      return dp_distance(a, b, spec);
    case MetricKind::TruncatedMahalanobis:
      return truncated_mahalanobis(a, b, spec);
    case MetricKind::L2:
      return l2_distance(a, b);
  }
  throw ArgumentError("unknown metric kind");
}

Eigen::MatrixXd pairwise_distances(const FunctionalSample& s, const MetricSpec& spec,
                                   int jobs) {
  const int n = s.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t i) {
    for (int j = static_cast<int>(i) + 1; j < n; ++j)
      d(static_cast<Eigen::Index>(i), j) =
          distance(s.curve(static_cast<int>(i)), s.curve(j), spec);
  });
  // mirror the upper triangle after the parallel fill
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(j, i) = d(i, j);
  return d;
}

}  // namespace fdc
