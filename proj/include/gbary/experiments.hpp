#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gbary/learn.hpp"

namespace gbary {

/// Runs fn(0..n-1) on up to `jobs` worker threads. Each index must be an
/// independent pure function of its own derived seed, so results do not
/// depend on scheduling.
void parallel_trials(int n, int jobs, const std::function<void(int)>& fn);

/// Graph-fusion protocol: an SBM base graph per trial, n_graphs
/// edge-perturbed copies, one row of metric errors per mean kind.
struct FusionParams {
  int n_nodes = 50;
  int n_communities = 5;
  double p_in = 0.3;
  double p_out = 0.1;
  int n_graphs = 100;
  int n_perturb = 10;
  int trials = 200;
  std::uint64_t seed = 1;
  std::vector<MeanKind> kinds;
};

struct FusionTrialRow {
  int trial = 0;
  std::string kind;
  FusionErrors errors;
};

std::vector<FusionTrialRow> run_fusion_trials(const FusionParams& params, int jobs = 1);

/// Mean of each error column over the trials, for one mean kind.
FusionErrors average_fusion_errors(const std::vector<FusionTrialRow>& rows,
                                   const std::string& kind);

/// K-means protocol on line-of-communities graphs: classes are community
/// counts 1..n_classes, per_class samples each, one NMI value per seed and
/// pairing.
struct KMeansExperimentParams {
  int n_nodes = 50;
  int n_classes = 5;
  double p_in = 0.2;
  int per_class = 20;
  int n_seeds = 10;
  std::uint64_t seed = 1;
  int n_init = 5;
  int max_iter = 50;
  std::vector<std::pair<MeanKind, DistanceKind>> pairings;
};

struct KMeansTrialRow {
  int seed_index = 0;
  std::string pairing;
  double nmi_value = 0.0;
};

std::vector<KMeansTrialRow> run_kmeans_trials(const KMeansExperimentParams& params,
                                              int jobs = 1);

double average_nmi(const std::vector<KMeansTrialRow>& rows, const std::string& pairing);

/// Matched mean/distance pairs used throughout the comparisons.
std::pair<MeanKind, DistanceKind> standard_pairing(const std::string& name);

/// Two-class nearest-centroid protocol: both classes are SBM families over
/// the same communities, distinguished by how sharply the communities are
/// expressed. The defaults match the two classes in expected edge count
/// (class A: sharp blocks, class B: washed-out blocks), so the separation
/// lives in the structure rather than the density.
struct ClassifyParams {
  int n_nodes = 40;
  int n_communities = 4;
  double p_in_a = 0.4;
  double p_out_a = 0.05;
  double p_in_b = 0.25;
  double p_out_b = 0.095;
  int train_per_class = 10;
  int test_per_class = 10;
  int trials = 20;
  std::uint64_t seed = 1;
  std::vector<std::pair<MeanKind, DistanceKind>> pairings;
};

struct ClassifyTrialRow {
  int trial = 0;
  std::string pairing;
  double error_rate = 0.0;
};

std::vector<ClassifyTrialRow> run_classify_trials(const ClassifyParams& params,
                                                  int jobs = 1);

double average_error(const std::vector<ClassifyTrialRow>& rows,
                     const std::string& pairing);

/// Semi-supervised node classification on synthetic multi-layer SBM graphs;
/// the error is the misclassification rate over unobserved nodes.
struct SslParams {
  int n_nodes = 150;
  int n_classes = 3;
  int n_layers = 2;
  double p_in = 0.15;
  double p_out = 0.03;
  double observed_fraction = 0.1;
  int trials = 50;
  std::uint64_t seed = 1;
  std::vector<MeanKind> kinds;
  std::vector<double> rhos;  // empty: default_rho per kind
};

struct SslTrialRow {
  int trial = 0;
  std::string kind;
  double error_rate = 0.0;
};

std::vector<SslTrialRow> run_ssl_trials(const SslParams& params, int jobs = 1);

double average_ssl_error(const std::vector<SslTrialRow>& rows, const std::string& kind);

/// Stratified draw of observed nodes: one per class first, the rest uniform
/// over the remaining nodes, so every class is covered.
std::pair<std::vector<int>, std::vector<int>> sample_observed(
    const std::vector<int>& labels, int n_classes, double fraction, std::uint64_t seed);

}  // namespace gbary
