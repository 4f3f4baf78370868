#include "gbary/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "gbary/generators.hpp"
#include "gbary/rng.hpp"

namespace gbary {

void parallel_trials(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  const int n_threads = std::min(jobs, n);
  threads.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<FusionTrialRow> run_fusion_trials(const FusionParams& params, int jobs) {
  std::vector<std::vector<FusionTrialRow>> per_trial(params.trials);
  parallel_trials(params.trials, jobs, [&](int trial) {
    const std::uint64_t trial_seed = derive_seed(params.seed, trial);
    const std::vector<int> partition =
        balanced_partition(params.n_nodes, params.n_communities);
    const Graph base = generate_sbm(partition, params.p_in, params.p_out,
                                    derive_seed(trial_seed, 0));
    const auto rows =
        fusion_experiment(base, partition, params.n_graphs, params.n_perturb,
                          params.kinds, derive_seed(trial_seed, 1));
    std::vector<FusionTrialRow> out;
    out.reserve(rows.size());
    for (const auto& [kind, errors] : rows) {
      out.push_back(FusionTrialRow{trial, kind, errors});
    }
    per_trial[trial] = std::move(out);
  });
  std::vector<FusionTrialRow> flat;
  flat.reserve(static_cast<std::size_t>(params.trials) * params.kinds.size());
  for (auto& rows : per_trial) {
    for (auto& row : rows) flat.push_back(std::move(row));
  }
  return flat;
}

FusionErrors average_fusion_errors(const std::vector<FusionTrialRow>& rows,
                                   const std::string& kind) {
  FusionErrors acc;
  int count = 0;
  for (const auto& row : rows) {
    if (row.kind != kind) continue;
    acc.bw_distance += row.errors.bw_distance;
    acc.laplacian_frobenius += row.errors.laplacian_frobenius;
    acc.covariance_frobenius += row.errors.covariance_frobenius;
    acc.degree_centrality_mse += row.errors.degree_centrality_mse;
    acc.modularity_absdiff += row.errors.modularity_absdiff;
    acc.participation_mse += row.errors.participation_mse;
    ++count;
  }
  if (count == 0) throw Error("no rows for mean kind " + kind);
  acc.bw_distance /= count;
  acc.laplacian_frobenius /= count;
  acc.covariance_frobenius /= count;
  acc.degree_centrality_mse /= count;
  acc.modularity_absdiff /= count;
  acc.participation_mse /= count;
  return acc;
}

std::pair<MeanKind, DistanceKind> standard_pairing(const std::string& name) {
  if (name == "bw") {
    return {MeanKind::bures_wasserstein(), DistanceKind::bures_wasserstein()};
  }
  if (name == "arithmetic") {
    return {MeanKind::arithmetic(), DistanceKind::laplacian_frobenius()};
  }
  if (name == "harmonic") {
    return {MeanKind::harmonic(), DistanceKind::pinv_laplacian_frobenius()};
  }
  throw Error("unknown pairing: " + name);
}

namespace {

std::string pairing_name(const std::pair<MeanKind, DistanceKind>& pairing) {
  return pairing.first.name() + "/" + pairing.second.name();
}

}  // namespace

std::vector<KMeansTrialRow> run_kmeans_trials(const KMeansExperimentParams& params,
                                              int jobs) {
  std::vector<std::vector<KMeansTrialRow>> per_seed(params.n_seeds);
  parallel_trials(params.n_seeds, jobs, [&](int seed_index) {
    const std::uint64_t trial_seed = derive_seed(params.seed, seed_index);
    std::vector<Graph> graphs;
    std::vector<int> truth;
    graphs.reserve(static_cast<std::size_t>(params.n_classes) * params.per_class);
    for (int c = 1; c <= params.n_classes; ++c) {
      for (int i = 0; i < params.per_class; ++i) {
        graphs.push_back(generate_line_communities(
            params.n_nodes, c, params.p_in,
            derive_seed(trial_seed, c * 1000 + i)));
        truth.push_back(c - 1);
      }
    }
    std::vector<KMeansTrialRow> rows;
    for (const auto& pairing : params.pairings) {
      KMeansConfig cfg;
      cfg.k = params.n_classes;
      cfg.mean_kind = pairing.first;
      cfg.distance_kind = pairing.second;
      cfg.max_iter = params.max_iter;
      cfg.n_init = params.n_init;
      cfg.rng_seed = derive_seed(trial_seed, 999);
      const KMeansResult result = kmeans_graphs(graphs, cfg);
      rows.push_back(KMeansTrialRow{seed_index, pairing_name(pairing),
                                    nmi(result.assignment, truth)});
    }
    per_seed[seed_index] = std::move(rows);
  });
  std::vector<KMeansTrialRow> flat;
  for (auto& rows : per_seed) {
    for (auto& row : rows) flat.push_back(std::move(row));
  }
  return flat;
}

double average_nmi(const std::vector<KMeansTrialRow>& rows, const std::string& pairing) {
  double sum = 0.0;
  int count = 0;
  for (const auto& row : rows) {
    if (row.pairing == pairing) {
      sum += row.nmi_value;
      ++count;
    }
  }
  if (count == 0) throw Error("no rows for pairing " + pairing);
  return sum / count;
}

std::vector<ClassifyTrialRow> run_classify_trials(const ClassifyParams& params,
                                                  int jobs) {
  std::vector<std::vector<ClassifyTrialRow>> per_trial(params.trials);
  parallel_trials(params.trials, jobs, [&](int trial) {
    const std::uint64_t trial_seed = derive_seed(params.seed, trial);
    const std::vector<int> partition =
        balanced_partition(params.n_nodes, params.n_communities);
    std::vector<Graph> train, test;
    std::vector<int> train_labels, test_labels;
    auto sample_class = [&](double p_in, double p_out, int label, int count,
                            std::uint64_t salt, std::vector<Graph>& graphs,
                            std::vector<int>& labels) {
      for (int i = 0; i < count; ++i) {
        graphs.push_back(
            generate_sbm(partition, p_in, p_out, derive_seed(trial_seed, salt + i)));
        labels.push_back(label);
      }
    };
    sample_class(params.p_in_a, params.p_out_a, 0, params.train_per_class, 0, train,
                 train_labels);
    sample_class(params.p_in_b, params.p_out_b, 1, params.train_per_class, 1000, train,
                 train_labels);
    sample_class(params.p_in_a, params.p_out_a, 0, params.test_per_class, 2000, test,
                 test_labels);
    sample_class(params.p_in_b, params.p_out_b, 1, params.test_per_class, 3000, test,
                 test_labels);

    std::vector<ClassifyTrialRow> rows;
    for (const auto& pairing : params.pairings) {
      const ClassifyResult result = nearest_centroid_classify(
          train, train_labels, test, test_labels, pairing.first, pairing.second);
      rows.push_back(ClassifyTrialRow{trial, pairing_name(pairing),
                                      result.misclassification_rate});
    }
    per_trial[trial] = std::move(rows);
  });
  std::vector<ClassifyTrialRow> flat;
  for (auto& rows : per_trial) {
    for (auto& row : rows) flat.push_back(std::move(row));
  }
  return flat;
}

double average_error(const std::vector<ClassifyTrialRow>& rows,
                     const std::string& pairing) {
  double sum = 0.0;
  int count = 0;
  for (const auto& row : rows) {
    if (row.pairing == pairing) {
      sum += row.error_rate;
      ++count;
    }
  }
  if (count == 0) throw Error("no rows for pairing " + pairing);
  return sum / count;
}

std::pair<std::vector<int>, std::vector<int>> sample_observed(
    const std::vector<int>& labels, int n_classes, double fraction,
    std::uint64_t seed) {
  const int n = static_cast<int>(labels.size());
  const int quota = std::max(n_classes, static_cast<int>(std::lround(fraction * n)));
  Rng rng(seed);
  std::vector<int> observed;
  std::vector<bool> taken(n, false);
  // One node per class first, so the problem is always valid.
  for (int c = 0; c < n_classes; ++c) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (labels[i] == c) members.push_back(i);
    }
    if (members.empty()) throw Error("class without members");
    const int pick = members[rng.below(members.size())];
    observed.push_back(pick);
    taken[pick] = true;
  }
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (!taken[i]) rest.push_back(i);
  }
  rng.shuffle(rest);
  for (int i = 0; i < quota - n_classes && i < static_cast<int>(rest.size()); ++i) {
    observed.push_back(rest[i]);
  }
  std::sort(observed.begin(), observed.end());
  std::vector<int> classes;
  classes.reserve(observed.size());
  for (int node : observed) classes.push_back(labels[node]);
  return {observed, classes};
}

std::vector<SslTrialRow> run_ssl_trials(const SslParams& params, int jobs) {
  if (!params.rhos.empty() && params.rhos.size() != params.kinds.size()) {
    throw Error("rho list must match mean-kind list");
  }
  std::vector<std::vector<SslTrialRow>> per_trial(params.trials);
  parallel_trials(params.trials, jobs, [&](int trial) {
    const std::uint64_t trial_seed = derive_seed(params.seed, trial);
    const MultiLayerGraph ml =
        generate_multilayer_sbm(params.n_nodes, params.n_classes, params.n_layers,
                                params.p_in, params.p_out, derive_seed(trial_seed, 0));
    std::vector<NormalizedLaplacian> layers;
    layers.reserve(ml.layers.size());
    for (const auto& layer : ml.layers) layers.push_back(normalized_laplacian(layer));
    const auto [observed_nodes, observed_classes] = sample_observed(
        ml.labels, params.n_classes, params.observed_fraction,
        derive_seed(trial_seed, 1));

    std::vector<bool> is_observed(params.n_nodes, false);
    for (int node : observed_nodes) is_observed[node] = true;

    std::vector<SslTrialRow> rows;
    for (std::size_t kind_index = 0; kind_index < params.kinds.size(); ++kind_index) {
      const MeanKind& kind = params.kinds[kind_index];
      SSLProblem problem;
      problem.layers = layers;
      problem.observed_nodes = observed_nodes;
      problem.observed_classes = observed_classes;
      problem.num_classes = params.n_classes;
      problem.rho = params.rhos.empty() ? default_rho(kind) : params.rhos[kind_index];
      problem.mean_kind = kind;
      const SSLResult result = ssl_classify(problem);
      int wrong = 0;
      int total = 0;
      for (int i = 0; i < params.n_nodes; ++i) {
        if (is_observed[i]) continue;
        ++total;
        if (result.labels[i] != ml.labels[i]) ++wrong;
      }
      rows.push_back(SslTrialRow{trial, kind.name(),
                                 total == 0 ? 0.0 : static_cast<double>(wrong) / total});
    }
    per_trial[trial] = std::move(rows);
  });
  std::vector<SslTrialRow> flat;
  for (auto& rows : per_trial) {
    for (auto& row : rows) flat.push_back(std::move(row));
  }
  return flat;
}

double average_ssl_error(const std::vector<SslTrialRow>& rows, const std::string& kind) {
  double sum = 0.0;
  int count = 0;
  for (const auto& row : rows) {
    if (row.kind == kind) {
      sum += row.error_rate;
      ++count;
    }
  }
  if (count == 0) throw Error("no rows for mean kind " + kind);
  return sum / count;
}

}  // namespace gbary
