#pragma once

#include "fdcluster/core.hpp"

namespace fdc {

/// Discretized sample covariance of a functional sample: a (J*T) x (J*T)
/// symmetric matrix in component-major stacking, entry ((l1,j),(l2,m)) =
/// (n-1)^{-1} sum_i (X_{i,l1}(s_j) - mean)(X_{i,l2}(t_m) - mean).
struct CovarianceEstimate {
  Eigen::MatrixXd matrix;
  GridPtr grid;
  int components = 1;
  /// Number of curves behind the estimate (caps the spectral rank at n-1);
  /// 0 when unknown (hand-built estimates).
  int sample_size = 0;
};

/// Eigenstructure of the covariance operator on the quadrature-weighted
/// grid space. Eigenvalues are on operator scale (plain matrix eigenvalues
/// times dt); eigenfunctions are unit norm under inner_product. Entries
/// past `rank` are stored as exactly zero and their eigenfunctions are not
/// materialized.
class Spectrum {
 public:
  Spectrum(Eigen::VectorXd eigenvalues, Eigen::MatrixXd basis, int rank,
           GridPtr grid, int components);

  /// Nonincreasing, length total_dim, exact zeros past rank.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  double eigenvalue(int k) const { return eigenvalues_[k]; }
  int rank() const { return rank_; }
  int total_dim() const { return static_cast<int>(eigenvalues_.size()); }
  int components() const { return components_; }
  const GridPtr& grid() const { return grid_; }
  double weight() const { return grid_->weight(); }

  /// k-th eigenfunction (0-based, k < rank) as a curve.
  MultiCurve eigenfunction(int k) const;
  /// All retained eigenfunctions.
  std::vector<MultiCurve> eigenfunctions() const;

  /// Projection coefficients <x, phi_k> for k = 0..rank-1.
  Eigen::VectorXd project(const MultiCurve& x) const;

  /// Euclidean-orthonormal eigenvector matrix (total_dim x rank); column k
  /// equals eigenfunction k scaled by sqrt(dt).
  const Eigen::MatrixXd& basis() const { return basis_; }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd basis_;
  int rank_;
  GridPtr grid_;
  int components_;
};

/// Pooled sample covariance over all curves of the sample.
CovarianceEstimate estimate_covariance(const FunctionalSample& s);

/// Full dense symmetric eigendecomposition of the estimate, rescaled to
/// operator eigenvalues and inner_product-orthonormal eigenfunctions.
/// Eigenvalues are retained while above max(lambda) * 1e-12 (and positive),
/// capped at min(n-1, J*T) when the sample size is known.
Spectrum eigendecompose(const CovarianceEstimate& c);

}  // namespace fdc
