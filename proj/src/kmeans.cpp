#include "fdcluster/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "fdcluster/rng.hpp"

namespace fdc {

std::vector<int> assign(const FunctionalSample& s,
                        const std::vector<MultiCurve>& centroids,
                        const MetricSpec& metric) {
  if (centroids.empty()) throw ArgumentError("assignment needs at least one centroid");
  for (const auto& c : centroids) {
    if (!c.same_shape(s.curve(0)))
      throw DimensionError("centroid not on the sample's grid");
  }
  std::vector<int> labels(static_cast<std::size_t>(s.size()));
  for (int i = 0; i < s.size(); ++i) {
    int best = 1;
    double best_d = distance(s.curve(i), centroids[0], metric);
    for (int l = 1; l < static_cast<int>(centroids.size()); ++l) {
      const double d = distance(s.curve(i), centroids[static_cast<std::size_t>(l)], metric);
      if (d < best_d) {
        best_d = d;
        best = l + 1;
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

std::vector<MultiCurve> update_centroids(const FunctionalSample& s,
                                         const std::vector<int>& labels, int k) {
  if (static_cast<int>(labels.size()) != s.size())
    throw ArgumentError("labels length does not match sample size");
  std::vector<std::vector<int>> members(static_cast<std::size_t>(k));
  for (int i = 0; i < s.size(); ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    if (l < 1 || l > k) throw ArgumentError("cluster label out of range");
    members[static_cast<std::size_t>(l - 1)].push_back(i);
  }
  std::vector<MultiCurve> centroids;
  centroids.reserve(static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) {
    if (members[static_cast<std::size_t>(l)].empty())
      throw ArgumentError("empty cluster reached the centroid update");
    centroids.push_back(sample_mean(s, members[static_cast<std::size_t>(l)]));
  }
  return centroids;
}

double objective(const FunctionalSample& s, const std::vector<int>& labels,
                 const std::vector<MultiCurve>& centroids, const MetricSpec& metric) {
  if (static_cast<int>(labels.size()) != s.size())
    throw ArgumentError("labels length does not match sample size");
  double total = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    if (l < 1 || l > static_cast<int>(centroids.size()))
      throw ArgumentError("cluster label out of range");
    const double d = distance(s.curve(i), centroids[static_cast<std::size_t>(l - 1)], metric);
    total += d * d;
  }
  return total;
}

namespace {

// Moves the worst-fitted curve (farthest from its own current centroid,
// lowest index on ties) into each empty cluster; donor clusters must keep
// at least one member.
void repair_empty_clusters(const FunctionalSample& s,
                           const std::vector<MultiCurve>& centroids,
                           const MetricSpec& metric, int k,
                           std::vector<int>& labels) {
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l - 1)];
  for (int l = 1; l <= k; ++l) {
    if (sizes[static_cast<std::size_t>(l - 1)] > 0) continue;
    int worst = -1;
    double worst_d = -1.0;
    for (int i = 0; i < s.size(); ++i) {
      const int cur = labels[static_cast<std::size_t>(i)];
      if (sizes[static_cast<std::size_t>(cur - 1)] < 2) continue;
      const double d =
          distance(s.curve(i), centroids[static_cast<std::size_t>(cur - 1)], metric);
      if (d > worst_d) {
        worst_d = d;
        worst = i;
      }
    }
    if (worst < 0) throw NumericError("cannot repair empty cluster");
    --sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(worst)] - 1)];
    labels[static_cast<std::size_t>(worst)] = l;
    ++sizes[static_cast<std::size_t>(l - 1)];
  }
}

ClusteringResult run_once(const FunctionalSample& s, const KMeansConfig& config,
                          std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<int> init = rng.sample_without_replacement(s.size(), config.k);
  std::vector<MultiCurve> centroids;
  centroids.reserve(static_cast<std::size_t>(config.k));
  for (int i : init) centroids.push_back(s.curve(i));

  ClusteringResult result;
  std::vector<int> previous;
  for (int m = 1; m <= config.max_iter; ++m) {
    std::vector<int> labels = assign(s, centroids, config.metric);
    repair_empty_clusters(s, centroids, config.metric, config.k, labels);
    result.iterations = m;
    if (labels == previous) {
      result.converged = true;
      result.labels = std::move(labels);
      break;
    }
    previous = labels;
    centroids = update_centroids(s, labels, config.k);
    result.objective_trace.push_back(objective(s, labels, centroids, config.metric));
    if (m == config.max_iter) result.labels = std::move(labels);
  }
  result.centroids = std::move(centroids);
  result.objective = objective(s, result.labels, result.centroids, config.metric);
  return result;
}

}  // namespace

ClusteringResult run_kmeans(const FunctionalSample& s, const KMeansConfig& config) {
  if (config.k < 1) throw ArgumentError("k must be at least 1");
  if (config.k > s.size()) throw ArgumentError("k cannot exceed the number of curves");
  if (config.max_iter < 1) throw ArgumentError("max_iter must be at least 1");
  if (config.n_restarts < 1) throw ArgumentError("n_restarts must be at least 1");
  if (config.metric.spectrum()) {
    const Spectrum& sp = *config.metric.spectrum();
    if (sp.components() != s.components() || !(*sp.grid() == *s.grid()))
      throw DimensionError("metric spectrum not on the sample's grid");
  }

  ClusteringResult best;
  bool have_best = false;
  for (int r = 0; r < config.n_restarts; ++r) {
    ClusteringResult candidate = run_once(s, config, stream_seed(config.seed, static_cast<std::uint64_t>(r)));
    if (!have_best || candidate.objective < best.objective) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  return best;
}

}  // namespace fdc
