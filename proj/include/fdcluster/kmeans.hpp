#pragma once

#include <cstdint>
#include <vector>

#include "fdcluster/metrics.hpp"

namespace fdc {

struct KMeansConfig {
  int k = 2;
  MetricSpec metric = MetricSpec::l2();
  int max_iter = 200;
  int n_restarts = 1;
  std::uint64_t seed = 0;
};

struct ClusteringResult {
  std::vector<int> labels;            // cluster index per curve, 1..k
  std::vector<MultiCurve> centroids;  // k curves, centroid l at index l-1
  double objective = 0.0;             // sum of squared distances to assigned centroids
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // objective after each centroid update
};

/// Nearest-centroid assignment; ties go to the lowest cluster index.
std::vector<int> assign(const FunctionalSample& s,
                        const std::vector<MultiCurve>& centroids,
                        const MetricSpec& metric);

/// Per-cluster pointwise means. For every implemented metric the squared
/// distance is a fixed positive-semidefinite quadratic form in the centroid,
/// so the arithmetic mean is the exact argmin of the centroid step.
std::vector<MultiCurve> update_centroids(const FunctionalSample& s,
                                         const std::vector<int>& labels, int k);

double objective(const FunctionalSample& s, const std::vector<int>& labels,
                 const std::vector<MultiCurve>& centroids, const MetricSpec& metric);

/// Functional k-means: centroids initialized as k distinct sample curves
/// drawn uniformly without replacement, then alternating assignment and
/// mean update until two subsequent assignments coincide or max_iter is
/// reached. Runs n_restarts times with substream seeds and returns the
/// lowest-objective result. Deterministic given seed.
ClusteringResult run_kmeans(const FunctionalSample& s, const KMeansConfig& config);

}  // namespace fdc
