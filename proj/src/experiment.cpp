#include "fdcluster/experiment.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "fdcluster/io.hpp"
#include "fdcluster/parallel.hpp"
#include "fdcluster/rng.hpp"

namespace fdc {

MetricChoice MetricChoice::parse(const std::string& text) {
  MetricChoice choice;
  if (text == "l2") {
    choice.kind = MetricKind::L2;
    return choice;
  }
  const std::size_t colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "dp") {
    if (arg.empty()) throw ArgumentError("metric 'dp' needs a log10(p) argument, e.g. dp:8");
    choice.kind = MetricKind::GeneralizedMahalanobis;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), choice.log10p);
    if (ec != std::errc{} || ptr != arg.data() + arg.size())
      throw ArgumentError("cannot parse log10(p) in metric '" + text + "'");
    return choice;
  }
  if (head == "truncated" || head == "tm") {
    if (arg.empty()) throw ArgumentError("metric 'truncated' needs a K argument, e.g. truncated:3");
    choice.kind = MetricKind::TruncatedMahalanobis;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), choice.K);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || choice.K < 1)
      throw ArgumentError("cannot parse K in metric '" + text + "'");
    return choice;
  }
  throw ArgumentError("unknown metric '" + text + "' (expected l2, dp:<log10p> or truncated:<K>)");
}

std::string MetricChoice::label() const {
  switch (kind) {
    case MetricKind::L2:
      return "l2";
    case MetricKind::GeneralizedMahalanobis:
      return "dp:" + io::format_double(log10p);
    case MetricKind::TruncatedMahalanobis:
      return "truncated:" + std::to_string(K);
  }
  return "?";
}

MetricSpec MetricChoice::bind(std::shared_ptr<const Spectrum> spectrum) const {
  switch (kind) {
    case MetricKind::L2:
      return MetricSpec::l2();
    case MetricKind::GeneralizedMahalanobis:
      return MetricSpec::dp_log10(std::move(spectrum), log10p);
    case MetricKind::TruncatedMahalanobis:
      return MetricSpec::truncated(std::move(spectrum), K);
  }
  throw ArgumentError("unknown metric kind");
}

std::vector<double> default_log10p_grid() {
  return {-6.0, -4.0, -2.0, 0.0, 2.0, 4.0, 6.0, 8.0};
}

namespace {

// Confusion counts after optimal matching, row i = cluster matched to truth
// level i. Requires as many clusters as truth levels (k-means never returns
// empty clusters).
std::vector<std::vector<int>> matched_counts(const ConfusionReport& report) {
  const std::size_t k_found = report.matrix.size();
  const std::size_t k_true = report.truth_levels.size();
  std::vector<std::vector<int>> matched(k_true, std::vector<int>(k_true, 0));
  for (std::size_t r = 0; r < k_found; ++r) {
    const int c = report.matching[r];
    if (c >= 0) matched[static_cast<std::size_t>(c)] = report.matrix[r];
  }
  return matched;
}

double sample_sd(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / (static_cast<double>(values.size()) - 1.0));
}

}  // namespace

std::vector<MetricAggregate> run_experiment(const ExperimentConfig& config,
                                            const std::vector<MetricChoice>& metrics) {
  if (metrics.empty()) throw ArgumentError("experiment needs at least one metric");
  if (config.replicates < 1) throw ArgumentError("experiment needs at least one replicate");

  const std::size_t M = static_cast<std::size_t>(config.replicates);
  const std::size_t n_metrics = metrics.size();
  // slot [m * M + rep]
  std::vector<std::vector<std::vector<int>>> counts(n_metrics * M);
  std::vector<double> rates(n_metrics * M, 0.0);

  parallel_for(M, config.jobs, [&](std::size_t rep) {
    const std::uint64_t rep_seed = stream_seed(config.seed, rep);
    ScenarioSpec scenario = config.scenario;
    scenario.seed = stream_seed(rep_seed, 0);
    const FunctionalSample sample = generate(scenario);
    const auto spectrum =
        std::make_shared<const Spectrum>(eigendecompose(estimate_covariance(sample)));
    for (std::size_t m = 0; m < n_metrics; ++m) {
      KMeansConfig kc;
      kc.k = config.k;
      kc.metric = metrics[m].bind(spectrum);
      kc.max_iter = config.max_iter;
      kc.n_restarts = config.n_restarts;
      kc.seed = stream_seed(rep_seed, 1 + m);
      const ClusteringResult result = run_kmeans(sample, kc);
      const ConfusionReport report = score(result.labels, *sample.labels());
      counts[m * M + rep] = matched_counts(report);
      rates[m * M + rep] = report.correct_rate;
    }
  });

  std::vector<MetricAggregate> aggregates(n_metrics);
  for (std::size_t m = 0; m < n_metrics; ++m) {
    MetricAggregate& agg = aggregates[m];
    agg.metric_label = metrics[m].label();
    const std::size_t k = counts[m * M].size();
    agg.mean_counts.assign(k, std::vector<double>(k, 0.0));
    agg.sd_diagonal.assign(k, 0.0);
    agg.replicate_rates.assign(rates.begin() + static_cast<std::ptrdiff_t>(m * M),
                               rates.begin() + static_cast<std::ptrdiff_t>((m + 1) * M));
    for (std::size_t rep = 0; rep < M; ++rep) {
      const auto& c = counts[m * M + rep];
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t col = 0; col < k; ++col) agg.mean_counts[r][col] += c[r][col];
    }
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t col = 0; col < k; ++col)
        agg.mean_counts[r][col] /= static_cast<double>(M);
    for (std::size_t r = 0; r < k; ++r) {
      std::vector<double> diag(M);
      for (std::size_t rep = 0; rep < M; ++rep)
        diag[rep] = counts[m * M + rep][r][r];
      agg.sd_diagonal[r] = sample_sd(diag, agg.mean_counts[r][r]);
    }
    agg.mean_correct_rate =
        std::accumulate(agg.replicate_rates.begin(), agg.replicate_rates.end(), 0.0) /
        static_cast<double>(M);
    agg.sd_correct_rate = sample_sd(agg.replicate_rates, agg.mean_correct_rate);
  }
  return aggregates;
}

std::vector<SweepPoint> sweep_scenario(const ExperimentConfig& config,
                                       const std::vector<double>& log10p_grid) {
  if (log10p_grid.empty()) throw ArgumentError("sweep needs a nonempty p grid");
  if (config.replicates < 1) throw ArgumentError("sweep needs at least one replicate");

  const std::size_t M = static_cast<std::size_t>(config.replicates);
  const std::size_t P = log10p_grid.size();
  std::vector<double> mis(P * M, 0.0);  // slot [pi * M + rep]

  parallel_for(M, config.jobs, [&](std::size_t rep) {
    const std::uint64_t rep_seed = stream_seed(config.seed, rep);
    ScenarioSpec scenario = config.scenario;
    scenario.seed = stream_seed(rep_seed, 0);
    const FunctionalSample sample = generate(scenario);
    const auto spectrum =
        std::make_shared<const Spectrum>(eigendecompose(estimate_covariance(sample)));
    for (std::size_t pi = 0; pi < P; ++pi) {
      KMeansConfig kc;
      kc.k = config.k;
      kc.metric = MetricSpec::dp_log10(spectrum, log10p_grid[pi]);
      kc.max_iter = config.max_iter;
      kc.n_restarts = config.n_restarts;
      kc.seed = stream_seed(rep_seed, 1 + pi);
      const ClusteringResult result = run_kmeans(sample, kc);
      mis[pi * M + rep] = 1.0 - score(result.labels, *sample.labels()).correct_rate;
    }
  });

  std::vector<SweepPoint> out(P);
  for (std::size_t pi = 0; pi < P; ++pi) {
    std::vector<double> column(mis.begin() + static_cast<std::ptrdiff_t>(pi * M),
                               mis.begin() + static_cast<std::ptrdiff_t>((pi + 1) * M));
    const double mean = std::accumulate(column.begin(), column.end(), 0.0) /
                        static_cast<double>(M);
    out[pi] = SweepPoint{log10p_grid[pi], mean, sample_sd(column, mean)};
  }
  return out;
}

}  // namespace fdc
