#include "fdcluster/core.hpp"

#include <cmath>

namespace fdc {

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> pts(static_cast<std::size_t>(n));
  const double h = (b - a) / (n - 1);
  for (int j = 0; j < n; ++j) pts[static_cast<std::size_t>(j)] = a + h * j;
  pts.back() = b;
  return pts;
}

}  // namespace

Grid::Grid(double t_min, double t_max, int size) {
  if (size < 2) throw ArgumentError("grid needs at least 2 points");
  if (!(t_min < t_max)) throw ArgumentError("grid requires t_min < t_max");
  points_ = linspace(t_min, t_max, size);
  weight_ = (t_max - t_min) / (size - 1);
}

Grid Grid::midpoint(double a, double b, int size) {
  if (size < 2) throw ArgumentError("grid needs at least 2 points");
  if (!(a < b)) throw ArgumentError("grid requires a < b");
  const double h = (b - a) / size;
  return Grid(a + 0.5 * h, b - 0.5 * h, size);
}

Grid Grid::from_points(const std::vector<double>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 2) throw ArgumentError("grid needs at least 2 points");
  for (int j = 1; j < n; ++j) {
    if (!(points[static_cast<std::size_t>(j - 1)] < points[static_cast<std::size_t>(j)]))
      throw ArgumentError("grid points must be strictly increasing");
  }
  const double span = points.back() - points.front();
  const double h = span / (n - 1);
  for (int j = 0; j < n; ++j) {
    const double expected = points.front() + h * j;
    if (std::abs(points[static_cast<std::size_t>(j)] - expected) > 1e-9 * span)
      throw ArgumentError("non-equispaced grids are not supported");
  }
  Grid g;
  g.points_ = points;
  g.weight_ = h;
  return g;
}

MultiCurve::MultiCurve(const Eigen::MatrixXd& values, GridPtr grid)
    : components_(static_cast<int>(values.rows())), grid_(std::move(grid)) {
  if (!grid_) throw ArgumentError("curve requires a grid");
  if (components_ < 1) throw ArgumentError("curve needs at least one component");
  if (values.cols() != grid_->size())
    throw DimensionError("curve value columns do not match grid size");
  if (!values.allFinite()) throw ArgumentError("curve values must be finite");
  stacked_.resize(values.size());
  const int T = grid_->size();
  for (int l = 0; l < components_; ++l)
    stacked_.segment(static_cast<Eigen::Index>(l) * T, T) = values.row(l).transpose();
}

MultiCurve::MultiCurve(Eigen::VectorXd stacked, int components, GridPtr grid)
    : stacked_(std::move(stacked)), components_(components), grid_(std::move(grid)) {
  if (!grid_) throw ArgumentError("curve requires a grid");
  if (components_ < 1) throw ArgumentError("curve needs at least one component");
  if (stacked_.size() != static_cast<Eigen::Index>(components_) * grid_->size())
    throw DimensionError("stacked length does not match components * grid size");
  if (!stacked_.allFinite()) throw ArgumentError("curve values must be finite");
}

Eigen::MatrixXd MultiCurve::values() const {
  const int T = grid_->size();
  Eigen::MatrixXd m(components_, T);
  for (int l = 0; l < components_; ++l)
    m.row(l) = stacked_.segment(static_cast<Eigen::Index>(l) * T, T).transpose();
  return m;
}

bool MultiCurve::same_shape(const MultiCurve& other) const {
  if (components_ != other.components_) return false;
  if (grid_ == other.grid_) return true;
  return *grid_ == *other.grid_;
}

FunctionalSample::FunctionalSample(std::vector<MultiCurve> curves,
                                   std::vector<std::string> ids,
                                   std::optional<std::vector<std::string>> labels)
    : curves_(std::move(curves)), ids_(std::move(ids)), labels_(std::move(labels)) {
  if (curves_.size() < 2) throw ArgumentError("a functional sample needs n >= 2 curves");
  for (std::size_t i = 1; i < curves_.size(); ++i) {
    if (!curves_[0].same_shape(curves_[i]))
      throw DimensionError("all curves in a sample must share grid and components");
  }
  if (ids_.empty()) {
    ids_.reserve(curves_.size());
    for (std::size_t i = 0; i < curves_.size(); ++i)
      ids_.push_back("c" + std::to_string(i + 1));
  }
  if (ids_.size() != curves_.size())
    throw ArgumentError("ids length must equal the number of curves");
  if (labels_ && labels_->size() != curves_.size())
    throw ArgumentError("labels length must equal the number of curves");
}

namespace {

void check_same_shape(const MultiCurve& a, const MultiCurve& b) {
  if (!a.same_shape(b)) throw DimensionError("curves do not share grid and components");
}

}  // namespace

double inner_product(const MultiCurve& a, const MultiCurve& b) {
  check_same_shape(a, b);
  return a.grid()->weight() * a.stacked().dot(b.stacked());
}

double l2_distance(const MultiCurve& a, const MultiCurve& b) {
  check_same_shape(a, b);
  return std::sqrt(a.grid()->weight() * (a.stacked() - b.stacked()).squaredNorm());
}

MultiCurve sample_mean(const FunctionalSample& s) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(s.curve(0).stacked().size());
  for (int i = 0; i < s.size(); ++i) acc += s.curve(i).stacked();
  acc /= s.size();
  return MultiCurve(std::move(acc), s.components(), s.grid());
}

MultiCurve sample_mean(const FunctionalSample& s, const std::vector<int>& subset) {
  if (subset.empty()) throw ArgumentError("mean over an empty subset");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(s.curve(0).stacked().size());
  for (int i : subset) {
    if (i < 0 || i >= s.size()) throw ArgumentError("subset index out of range");
    acc += s.curve(i).stacked();
  }
  acc /= static_cast<double>(subset.size());
  return MultiCurve(std::move(acc), s.components(), s.grid());
}

}  // namespace fdc
