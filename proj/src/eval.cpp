#include "fdcluster/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "fdcluster/parallel.hpp"
#include "fdcluster/rng.hpp"

namespace fdc {

SilhouetteReport silhouette(const FunctionalSample& s, const std::vector<int>& labels,
                            const MetricSpec& metric, int jobs) {
  const int n = s.size();
  if (static_cast<int>(labels.size()) != n)
    throw ArgumentError("labels length does not match sample size");
  int k = 0;
  for (int l : labels) {
    if (l < 1) throw ArgumentError("cluster labels must be >= 1");
    k = std::max(k, l);
  }

  SilhouetteReport report;
  report.k = k;
  report.values.assign(static_cast<std::size_t>(n), 0.0);

  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l - 1)];

  if (k >= 2) {
    const Eigen::MatrixXd d = pairwise_distances(s, metric, jobs);
    for (int i = 0; i < n; ++i) {
      const int own = labels[static_cast<std::size_t>(i)] - 1;
      if (sizes[static_cast<std::size_t>(own)] < 2) continue;  // singleton: s_i = 0
      Eigen::VectorXd sums = Eigen::VectorXd::Zero(k);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        sums[labels[static_cast<std::size_t>(j)] - 1] += d(i, j);
      }
      const double a = sums[own] / (sizes[static_cast<std::size_t>(own)] - 1);
      double b = std::numeric_limits<double>::infinity();
      for (int l = 0; l < k; ++l) {
        if (l == own || sizes[static_cast<std::size_t>(l)] == 0) continue;
        b = std::min(b, sums[l] / sizes[static_cast<std::size_t>(l)]);
      }
      if (!std::isfinite(b)) continue;  // no other nonempty cluster
      const double denom = std::max(a, b);
      report.values[static_cast<std::size_t>(i)] = denom > 0.0 ? (b - a) / denom : 0.0;
    }
  }

  report.cluster_means.assign(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < n; ++i)
    report.cluster_means[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)] - 1)] +=
        report.values[static_cast<std::size_t>(i)];
  for (int l = 0; l < k; ++l) {
    if (sizes[static_cast<std::size_t>(l)] > 0)
      report.cluster_means[static_cast<std::size_t>(l)] /= sizes[static_cast<std::size_t>(l)];
  }
  report.overall_mean =
      std::accumulate(report.values.begin(), report.values.end(), 0.0) / n;

  report.plot_order.resize(static_cast<std::size_t>(n));
  std::iota(report.plot_order.begin(), report.plot_order.end(), 0);
  std::sort(report.plot_order.begin(), report.plot_order.end(), [&](int i, int j) {
    const int li = labels[static_cast<std::size_t>(i)];
    const int lj = labels[static_cast<std::size_t>(j)];
    if (li != lj) return li < lj;
    const double si = report.values[static_cast<std::size_t>(i)];
    const double sj = report.values[static_cast<std::size_t>(j)];
    if (si != sj) return si > sj;
    return i < j;
  });
  return report;
}

ConfusionReport score(const std::vector<int>& labels,
                      const std::vector<std::string>& truth) {
  if (labels.size() != truth.size())
    throw ArgumentError("labels and truth must have the same length");
  if (labels.empty()) throw ArgumentError("cannot score an empty labeling");

  int k_found = 0;
  for (int l : labels) {
    if (l < 1) throw ArgumentError("cluster labels must be >= 1");
    k_found = std::max(k_found, l);
  }

  std::map<std::string, int> level_of;  // lexicographic column order
  for (const auto& t : truth) level_of.emplace(t, 0);
  int k_true = 0;
  for (auto& [name, idx] : level_of) idx = k_true++;

  if (k_found > 8 || k_true > 8)
    throw ArgumentError("score supports at most 8 clusters / truth levels");

  ConfusionReport report;
  report.n = static_cast<int>(labels.size());
  report.truth_levels.reserve(static_cast<std::size_t>(k_true));
  for (const auto& [name, idx] : level_of) report.truth_levels.push_back(name);
  report.matrix.assign(static_cast<std::size_t>(k_found),
                       std::vector<int>(static_cast<std::size_t>(k_true), 0));
  for (std::size_t i = 0; i < labels.size(); ++i)
    ++report.matrix[static_cast<std::size_t>(labels[i] - 1)]
                   [static_cast<std::size_t>(level_of[truth[i]])];

  // Exhaustive search over injective row->column assignments on the padded
  // square; first permutation achieving the maximum wins (deterministic).
  const int K = std::max(k_found, k_true);
  std::vector<int> perm(static_cast<std::size_t>(K));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  long best = -1;
  do {
    long matched = 0;
    for (int r = 0; r < k_found; ++r) {
      const int c = perm[static_cast<std::size_t>(r)];
      if (c < k_true) matched += report.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    if (matched > best) {
      best = matched;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  report.matching.resize(static_cast<std::size_t>(k_found));
  for (int r = 0; r < k_found; ++r) {
    const int c = best_perm[static_cast<std::size_t>(r)];
    report.matching[static_cast<std::size_t>(r)] = c < k_true ? c : -1;
  }
  report.correct_rate = static_cast<double>(best) / report.n;
  return report;
}

std::vector<SweepPoint> sweep_p(const FunctionalSample& s,
                                const std::vector<std::string>& truth, int k,
                                const std::vector<double>& log10p_grid,
                                const SweepConfig& config) {
  if (log10p_grid.empty()) throw ArgumentError("sweep needs a nonempty p grid");
  if (static_cast<int>(truth.size()) != s.size())
    throw ArgumentError("truth length does not match sample size");
  if (config.replicates < 1) throw ArgumentError("sweep needs at least one replicate");

  auto spectrum = std::make_shared<const Spectrum>(eigendecompose(estimate_covariance(s)));

  std::vector<SweepPoint> out(log10p_grid.size());
  for (std::size_t pi = 0; pi < log10p_grid.size(); ++pi) {
    const std::uint64_t point_seed = stream_seed(config.seed, static_cast<std::uint64_t>(pi));
    std::vector<double> rates(static_cast<std::size_t>(config.replicates));
    parallel_for(static_cast<std::size_t>(config.replicates), config.jobs,
                 [&](std::size_t rep) {
                   KMeansConfig kc;
                   kc.k = k;
                   kc.metric = MetricSpec::dp_log10(spectrum, log10p_grid[pi]);
                   kc.max_iter = config.max_iter;
                   kc.n_restarts = config.n_restarts;
                   kc.seed = stream_seed(point_seed, static_cast<std::uint64_t>(rep));
                   const ClusteringResult res = run_kmeans(s, kc);
                   rates[rep] = 1.0 - score(res.labels, truth).correct_rate;
                 });
    double mean = std::accumulate(rates.begin(), rates.end(), 0.0) / rates.size();
    double sd = 0.0;
    if (rates.size() > 1) {
      for (double r : rates) sd += (r - mean) * (r - mean);
      sd = std::sqrt(sd / (rates.size() - 1));
    }
    out[pi] = SweepPoint{log10p_grid[pi], mean, sd};
  }
  return out;
}

}  // namespace fdc
