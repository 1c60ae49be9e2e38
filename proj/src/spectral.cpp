#include "fdcluster/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace fdc {

Spectrum::Spectrum(Eigen::VectorXd eigenvalues, Eigen::MatrixXd basis, int rank,
                   GridPtr grid, int components)
    : eigenvalues_(std::move(eigenvalues)),
      basis_(std::move(basis)),
      rank_(rank),
      grid_(std::move(grid)),
      components_(components) {}

MultiCurve Spectrum::eigenfunction(int k) const {
  if (k < 0 || k >= rank_) throw ArgumentError("eigenfunction index beyond rank");
  const double scale = 1.0 / std::sqrt(weight());
  return MultiCurve(scale * basis_.col(k), components_, grid_);
}

std::vector<MultiCurve> Spectrum::eigenfunctions() const {
  std::vector<MultiCurve> out;
  out.reserve(static_cast<std::size_t>(rank_));
  for (int k = 0; k < rank_; ++k) out.push_back(eigenfunction(k));
  return out;
}

Eigen::VectorXd Spectrum::project(const MultiCurve& x) const {
  if (x.components() != components_ || !(*x.grid() == *grid_))
    throw DimensionError("curve not on the spectrum's grid");
  // <x, phi_k> = dt * x . (u_k / sqrt(dt)) = sqrt(dt) * (U^T x)
  return std::sqrt(weight()) * (basis_.transpose() * x.stacked());
}

CovarianceEstimate estimate_covariance(const FunctionalSample& s) {
  const int n = s.size();
  if (n < 2) throw InsufficientSampleError("covariance estimation needs n >= 2 curves");
  const Eigen::Index dim = s.curve(0).stacked().size();
  Eigen::MatrixXd data(n, dim);
  for (int i = 0; i < n; ++i) data.row(i) = s.curve(i).stacked().transpose();
  const Eigen::RowVectorXd mean = data.colwise().mean();
  data.rowwise() -= mean;
  Eigen::MatrixXd cov = (data.transpose() * data) / static_cast<double>(n - 1);
  cov = 0.5 * (cov + cov.transpose()).eval();
  return CovarianceEstimate{std::move(cov), s.grid(), s.components(), n};
}

Spectrum eigendecompose(const CovarianceEstimate& c) {
  const Eigen::Index dim = c.matrix.rows();
  if (dim == 0 || c.matrix.cols() != dim)
    throw ArgumentError("covariance matrix must be square and nonempty");
  if (!c.grid) throw ArgumentError("covariance estimate requires a grid");
  if (dim != static_cast<Eigen::Index>(c.components) * c.grid->size())
    throw DimensionError("covariance dimension does not match components * grid size");

  const double scale = std::max(1.0, c.matrix.cwiseAbs().maxCoeff());
  const double asym = (c.matrix - c.matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw NumericError("covariance matrix is not symmetric within tolerance");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (c.matrix + c.matrix.transpose()));
  if (solver.info() != Eigen::Success)
    throw NumericError("symmetric eigendecomposition failed");

  // Eigen returns ascending order; flip to nonincreasing and rescale:
  // operator eigenvalue = dt * matrix eigenvalue, eigenfunction = u / sqrt(dt).
  const double dt = c.grid->weight();
  Eigen::VectorXd lambda(dim);
  Eigen::MatrixXd vectors(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    lambda[k] = dt * solver.eigenvalues()[dim - 1 - k];
    vectors.col(k) = solver.eigenvectors().col(dim - 1 - k);
  }

  const double lambda_max = lambda.size() ? lambda[0] : 0.0;
  const double threshold = lambda_max * 1e-12;
  int rank = 0;
  while (rank < dim && lambda[rank] > threshold && lambda[rank] > 0.0) ++rank;
  if (c.sample_size >= 2) rank = std::min(rank, c.sample_size - 1);

  for (Eigen::Index k = rank; k < dim; ++k) lambda[k] = 0.0;
  return Spectrum(std::move(lambda), vectors.leftCols(rank), rank, c.grid,
                  c.components);
}

}  // namespace fdc
