#include "fdcluster/simgen.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "fdcluster/rng.hpp"

namespace fdc {

ScenarioCase scenario_case_from_string(const std::string& name) {
  if (name == "i") return ScenarioCase::I;
  if (name == "ii") return ScenarioCase::II;
  if (name == "iii") return ScenarioCase::III;
  if (name == "iv") return ScenarioCase::IV;
  throw ArgumentError("unknown scenario case '" + name + "' (expected i, ii, iii or iv)");
}

std::string to_string(ScenarioCase c) {
  switch (c) {
    case ScenarioCase::I: return "i";
    case ScenarioCase::II: return "ii";
    case ScenarioCase::III: return "iii";
    case ScenarioCase::IV: return "iv";
  }
  return "?";
}

double rho(int k) {
  if (k < 1) throw ArgumentError("rho index must be >= 1");
  if (k <= 3) return 1.0 / (k + 1);
  return 1.0 / (static_cast<double>(k + 1) * (k + 1));
}

double theta(int k, double t) {
  if (k < 1) throw ArgumentError("theta index must be >= 1");
  if (k == 1) return 1.0;
  constexpr double sqrt2 = std::numbers::sqrt2;
  if (k % 2 == 0) return sqrt2 * std::sin(k * std::numbers::pi * t);
  return sqrt2 * std::cos((k - 1) * std::numbers::pi * t);
}

namespace {

bool micro_shift(ScenarioCase c) {
  return c == ScenarioCase::II || c == ScenarioCase::IV;
}

bool bivariate(ScenarioCase c) {
  return c == ScenarioCase::III || c == ScenarioCase::IV;
}

}  // namespace

FunctionalSample generate(const ScenarioSpec& spec) {
  if (spec.grid_size < 2) throw ArgumentError("scenario grid needs T >= 2");
  if (spec.n_components < 1) throw ArgumentError("scenario needs at least one component");
  if (micro_shift(spec.case_id) && spec.n_components < 4)
    throw ArgumentError("cases ii and iv shift components 4..K and need K >= 4");
  if (spec.n1 < 1 || spec.n2 < 1) throw ArgumentError("group sizes must be >= 1");

  const int T = spec.grid_size;
  const int K = spec.n_components;
  const int J = bivariate(spec.case_id) ? 2 : 1;
  auto grid = std::make_shared<const Grid>(Grid::midpoint(0.0, 1.0, T));

  Eigen::MatrixXd basis(K, T);  // sqrt(rho_k) theta_k(t_j)
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(T);
  const int shift_lo = micro_shift(spec.case_id) ? 4 : 1;
  const int shift_hi = micro_shift(spec.case_id) ? K : 3;
  for (int k = 1; k <= K; ++k) {
    const double amp = std::sqrt(rho(k));
    for (int j = 0; j < T; ++j)
      basis(k - 1, j) = amp * theta(k, grid->point(j));
    if (k >= shift_lo && k <= shift_hi) shift += basis.row(k - 1).transpose();
  }

  Eigen::MatrixXd means(J, T);  // group-1 mean per component
  for (int j = 0; j < T; ++j) {
    const double t = grid->point(j);
    means(0, j) = t * (1.0 - t);
    if (J == 2) means(1, j) = 4.0 * t * t * (1.0 - t);
  }

  Rng rng(spec.seed);
  const double chol_off = 0.5;                  // Sigma = [[1, .5], [.5, 1]]
  const double chol_diag = std::sqrt(0.75);     // lower factor [[1, 0], [.5, sqrt(.75)]]

  std::vector<MultiCurve> curves;
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  const int n = spec.n1 + spec.n2;
  curves.reserve(static_cast<std::size_t>(n));
  ids.reserve(static_cast<std::size_t>(n));
  labels.reserve(static_cast<std::size_t>(n));

  Eigen::MatrixXd scores(J, K);
  for (int i = 0; i < n; ++i) {
    const bool second_group = i >= spec.n1;
    for (int k = 0; k < K; ++k) {
      if (J == 1) {
        scores(0, k) = rng.normal();
      } else {
        const double e1 = rng.normal();
        const double e2 = rng.normal();
        scores(0, k) = e1;
        scores(1, k) = chol_off * e1 + chol_diag * e2;
      }
    }
    Eigen::VectorXd stacked(static_cast<Eigen::Index>(J) * T);
    for (int l = 0; l < J; ++l) {
      Eigen::VectorXd row = means.row(l).transpose();
      if (second_group) row += shift;  // mean shift applied to every component
      row += basis.transpose() * scores.row(l).transpose();
      stacked.segment(static_cast<Eigen::Index>(l) * T, T) = row;
    }
    curves.emplace_back(std::move(stacked), J, grid);
    const int member = second_group ? i - spec.n1 + 1 : i + 1;
    char id[16];
    std::snprintf(id, sizeof(id), "%s%03d", second_group ? "Y" : "X", member);
    ids.emplace_back(id);
    labels.emplace_back(second_group ? "Y" : "X");
  }
  return FunctionalSample(std::move(curves), std::move(ids), std::move(labels));
}

}  // namespace fdc
