#pragma once

#include <cstdint>
#include <string>

#include "fdcluster/core.hpp"

namespace fdc {

/// Simulation scenarios: (I, II) univariate, (III, IV) bivariate; the first
/// of each pair shifts the group means along the three leading basis
/// directions (macro-structure), the second along all remaining ones
/// (micro-structure).
enum class ScenarioCase { I, II, III, IV };

ScenarioCase scenario_case_from_string(const std::string& name);  // "i".."iv"
std::string to_string(ScenarioCase c);

struct ScenarioSpec {
  ScenarioCase case_id = ScenarioCase::I;
  int grid_size = 150;      // T, equispaced in [0,1]
  int n_components = 100;   // number of Karhunen-Loeve components
  int n1 = 50;
  int n2 = 50;
  std::uint64_t seed = 0;
};

/// Score variances: 1/(k+1) for k <= 3, 1/(k+1)^2 for k >= 4 (1-based).
double rho(int k);

/// Orthonormal basis of L^2([0,1]): 1, then sqrt(2) sin(k pi t) for even k
/// and sqrt(2) cos((k-1) pi t) for odd k >= 3 (1-based).
double theta(int k, double t);

/// Draws the two groups of the scenario as one labeled sample ("X"/"Y").
/// Curves are mean + sum_k z_k sqrt(rho_k) theta_k on the midpoint grid of
/// [0,1]; scores are i.i.d. standard normals (univariate cases) or bivariate
/// normals with unit variances and correlation 0.5 applied via the lower
/// Cholesky factor (multivariate cases). Deterministic given the seed.
FunctionalSample generate(const ScenarioSpec& spec);

}  // namespace fdc
