#pragma once

#include <memory>

#include "fdcluster/spectral.hpp"

namespace fdc {

enum class MetricKind {
  GeneralizedMahalanobis,  // d_p, regularized over all components
  TruncatedMahalanobis,    // d_M^K, first K components only (semi-distance)
  L2,
};

/// A distance choice with its parameters, bound to a Spectrum when needed.
class MetricSpec {
 public:
  /// Generalized Mahalanobis d_p with regularization parameter p > 0.
  static MetricSpec dp(std::shared_ptr<const Spectrum> spectrum, double p);
  /// Convenience: p = 10^log10p.
  static MetricSpec dp_log10(std::shared_ptr<const Spectrum> spectrum, double log10p);
  /// Truncated Mahalanobis semi-distance over the first K components,
  /// 1 <= K <= spectrum->rank().
  static MetricSpec truncated(std::shared_ptr<const Spectrum> spectrum, int K);
  static MetricSpec l2();

  MetricKind kind() const { return kind_; }
  double p() const { return p_; }
  int truncation() const { return K_; }
  const std::shared_ptr<const Spectrum>& spectrum() const { return spectrum_; }

 private:
  MetricSpec(MetricKind kind, std::shared_ptr<const Spectrum> spectrum, double p, int K)
      : kind_(kind), spectrum_(std::move(spectrum)), p_(p), K_(K) {}
  MetricKind kind_;
  std::shared_ptr<const Spectrum> spectrum_;
  double p_;
  int K_;
};

/// Regularizing weight h(p) = lambda / (lambda + 1/p), in [0, 1).
double regularizing_weight(double lambda, double p);

/// Mahalanobis contribution along component k (0-based, k < rank):
/// |<diff, phi_k>| / sqrt(lambda_k).
double mahalanobis_component(const MultiCurve& diff, int k, const Spectrum& spectrum);

/// Empirical generalized Mahalanobis distance. The contribution of the
/// arbitrary complement basis beyond the retained eigenspace reduces to
/// p * (||a-b||^2 - sum_k <a-b, phi_k>^2), computed as a clamped residual
/// so no complement eigenfunctions are ever materialized.
double dp_distance(const MultiCurve& a, const MultiCurve& b, const MetricSpec& spec);

/// Truncated Mahalanobis semi-distance over the first K components.
double truncated_mahalanobis(const MultiCurve& a, const MultiCurve& b,
                             const MetricSpec& spec);

/// Dispatch over the three metric kinds.
double distance(const MultiCurve& a, const MultiCurve& b, const MetricSpec& spec);

/// Symmetric n x n distance matrix; rows are computed in parallel when
/// jobs > 1 (pure reads over a shared Spectrum).
Eigen::MatrixXd pairwise_distances(const FunctionalSample& s, const MetricSpec& spec,
                                   int jobs = 1);

}  // namespace fdc
