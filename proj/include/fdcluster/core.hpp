#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdc {

/// Shapes of two operands (grid, number of components) do not agree.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An argument violates an operation's precondition.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file; `line` is 1-based when known, 0 otherwise.
struct IngestionError : std::runtime_error {
  explicit IngestionError(const std::string& msg, std::size_t line = 0)
      : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
        line(line) {}
  std::size_t line;
};

/// Numerical input outside the tolerance a routine can handle.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Too few curves for the requested estimate.
struct InsufficientSampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Equispaced sampling grid t_1 < ... < t_T with a uniform quadrature
/// weight dt = (t_T - t_1)/(T - 1) attached to every point.
class Grid {
 public:
  /// Equispaced grid whose first/last sample points are t_min/t_max.
  Grid(double t_min, double t_max, int size);

  /// Grid at the T cell midpoints of [a, b]: t_j = a + (2j-1)(b-a)/(2T).
  /// Makes the rectangle rule exact for constants and keeps the discrete
  /// Fourier basis exactly orthonormal.
  static Grid midpoint(double a, double b, int size);

  /// Builds from explicit abscissae; non-equispaced points are rejected.
  static Grid from_points(const std::vector<double>& points);

  int size() const { return static_cast<int>(points_.size()); }
  double weight() const { return weight_; }
  double point(int j) const { return points_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& points() const { return points_; }
  double t_min() const { return points_.front(); }
  double t_max() const { return points_.back(); }

  bool operator==(const Grid& other) const {
    return points_ == other.points_ && weight_ == other.weight_;
  }

 private:
  Grid() = default;
  std::vector<double> points_;
  double weight_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

/// One statistical unit: J component functions sampled on a shared grid.
/// Values are held as a stacked vector [comp 0 over T points, comp 1, ...];
/// instances are immutable after construction.
class MultiCurve {
 public:
  /// From a J x T value matrix (row l = component l).
  MultiCurve(const Eigen::MatrixXd& values, GridPtr grid);

  /// From an already stacked vector of length components * grid->size().
  MultiCurve(Eigen::VectorXd stacked, int components, GridPtr grid);

  int components() const { return components_; }
  int points() const { return grid_->size(); }
  double value(int component, int j) const {
    return stacked_[static_cast<Eigen::Index>(component) * grid_->size() + j];
  }
  const Eigen::VectorXd& stacked() const { return stacked_; }
  Eigen::MatrixXd values() const;  // J x T copy
  const GridPtr& grid() const { return grid_; }

  /// Read-only view of one component over the grid.
  Eigen::VectorBlock<const Eigen::VectorXd> component(int l) const {
    return stacked_.segment(static_cast<Eigen::Index>(l) * grid_->size(), grid_->size());
  }

  bool same_shape(const MultiCurve& other) const;

 private:
  Eigen::VectorXd stacked_;
  int components_;
  GridPtr grid_;
};

/// n curves on one grid with one J, optionally carrying true group labels.
class FunctionalSample {
 public:
  FunctionalSample(std::vector<MultiCurve> curves,
                   std::vector<std::string> ids = {},
                   std::optional<std::vector<std::string>> labels = std::nullopt);

  int size() const { return static_cast<int>(curves_.size()); }
  int components() const { return curves_.front().components(); }
  const GridPtr& grid() const { return curves_.front().grid(); }
  const MultiCurve& curve(int i) const { return curves_[static_cast<std::size_t>(i)]; }
  const std::vector<MultiCurve>& curves() const { return curves_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::optional<std::vector<std::string>>& labels() const { return labels_; }

 private:
  std::vector<MultiCurve> curves_;
  std::vector<std::string> ids_;
  std::optional<std::vector<std::string>> labels_;
};

/// Discrete (L^2(I))^J scalar product: sum_{l,j} a_l(t_j) b_l(t_j) dt.
double inner_product(const MultiCurve& a, const MultiCurve& b);

/// L^2 distance ||a - b||; zero iff a = b on the grid.
double l2_distance(const MultiCurve& a, const MultiCurve& b);

/// Pointwise mean over all curves.
MultiCurve sample_mean(const FunctionalSample& s);

/// Pointwise mean over the curves selected by `subset` (0-based indices).
MultiCurve sample_mean(const FunctionalSample& s, const std::vector<int>& subset);

}  // namespace fdc
