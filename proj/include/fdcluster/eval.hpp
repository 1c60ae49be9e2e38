#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdcluster/kmeans.hpp"

namespace fdc {

struct SilhouetteReport {
  std::vector<double> values;         // s_i per curve, in sample order
  std::vector<double> cluster_means;  // mean s_i per cluster, index l-1
  double overall_mean = 0.0;
  /// Curve indices in bar-plot order: by cluster, nonincreasing s_i within.
  std::vector<int> plot_order;
  int k = 0;
};

/// Silhouette values s_i = (b_i - a_i)/max(a_i, b_i) under the given metric;
/// members of singleton clusters get s_i = 0, as does a degenerate k = 1
/// clustering.
SilhouetteReport silhouette(const FunctionalSample& s, const std::vector<int>& labels,
                            const MetricSpec& metric, int jobs = 1);

struct ConfusionReport {
  /// Raw counts, rows = found clusters 1..k_found, columns = truth levels.
  std::vector<std::vector<int>> matrix;
  /// Truth level names in column order (lexicographic).
  std::vector<std::string> truth_levels;
  /// matching[row] = truth column assigned to that cluster, -1 if unmatched.
  std::vector<int> matching;
  double correct_rate = 0.0;
  int n = 0;
};

/// Contingency table of cluster labels against true groups, with the
/// label-to-truth assignment chosen by exhaustive permutation search
/// (k <= 8) to maximize the matched count.
ConfusionReport score(const std::vector<int>& labels,
                      const std::vector<std::string>& truth);

struct SweepPoint {
  double log10_p = 0.0;
  double misclassified_mean = 0.0;
  double misclassified_sd = 0.0;
};

struct SweepConfig {
  int replicates = 10;   // k-means reruns per grid point
  std::uint64_t seed = 0;
  int n_restarts = 1;    // restarts inside each rerun
  int max_iter = 200;
  int jobs = 1;
};

/// Misclassification of d_p k-means on one sample as a function of log10(p):
/// estimates the pooled spectrum once, then for every grid point reruns
/// k-means `replicates` times with substream seeds and scores against truth.
std::vector<SweepPoint> sweep_p(const FunctionalSample& s,
                                const std::vector<std::string>& truth, int k,
                                const std::vector<double>& log10p_grid,
                                const SweepConfig& config);

}  // namespace fdc
