#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gbary/means.hpp"
#include "gbary/metric.hpp"

namespace gbary {

struct GraphMetrics {
  Eigen::VectorXd degree_centrality;  // weighted degree / (N - 1)
  double modularity = 0.0;
  Eigen::VectorXd participation;  // 1 - sum_c (k_{i,c} / k_i)^2
};

/// Weighted degree centrality, Newman modularity of the given partition,
/// and per-node participation coefficients. Raw (possibly negative) edge
/// weights enter all three formulas.
GraphMetrics graph_metrics(const Graph& g, const std::vector<int>& partition);

/// Per-metric differences between a mean graph and the base graph.
struct FusionErrors {
  double bw_distance = 0.0;
  double laplacian_frobenius = 0.0;
  double covariance_frobenius = 0.0;  // pseudo-inverse Laplacians
  double degree_centrality_mse = 0.0;
  double modularity_absdiff = 0.0;
  double participation_mse = 0.0;
};

/// One graph-fusion trial: perturbs the base graph n_graphs times, computes
/// each requested mean, and measures how well the mean preserves the base
/// graph's metrics (modularity and participation use the base partition).
std::vector<std::pair<std::string, FusionErrors>> fusion_experiment(
    const Graph& base, const std::vector<int>& partition, int n_graphs,
    int n_perturb, std::span<const MeanKind> kinds, std::uint64_t seed);

struct KMeansConfig {
  int k = 2;
  MeanKind mean_kind = MeanKind::bures_wasserstein();
  DistanceKind distance_kind = DistanceKind::bures_wasserstein();
  int max_iter = 50;
  int n_init = 5;
  std::uint64_t rng_seed = 0;
  FixedPointConfig solver;  // for BW centroids
};

struct KMeansResult {
  std::vector<int> assignment;
  std::vector<Graph> centroids;
  double inertia = 0.0;
  std::vector<double> inertia_history;  // best restart, per Lloyd iteration
  int iterations = 0;
};

/// Lloyd iterations with k-means++ seeding from the pairwise distance
/// table; best of n_init restarts by inertia. An emptied cluster is
/// reseeded with the graph farthest from its centroid.
KMeansResult kmeans_graphs(std::span<const Graph> graphs, const KMeansConfig& cfg);

/// Normalized mutual information between two labelings, in [0, 1]
/// (normalized by the arithmetic mean of the entropies).
double nmi(std::span<const int> a, std::span<const int> b);

struct ClassifyResult {
  std::vector<int> predicted;
  double misclassification_rate = 0.0;
};

/// Per-class centroids from the training graphs; each test graph is
/// assigned to the nearest centroid.
ClassifyResult nearest_centroid_classify(std::span<const Graph> train,
                                         std::span<const int> train_labels,
                                         std::span<const Graph> test,
                                         std::span<const int> test_labels,
                                         const MeanKind& mean_kind,
                                         const DistanceKind& distance_kind,
                                         const FixedPointConfig& cfg = {});

/// Semi-supervised node classification on a multi-layer graph: labels are
/// propagated through f^(r) = (I + rho * Lbar)^{-1} Y^(r) where Lbar is the
/// chosen mean of the normalized layer Laplacians.
struct SSLProblem {
  std::vector<NormalizedLaplacian> layers;
  std::vector<int> observed_nodes;
  std::vector<int> observed_classes;  // class of each observed node, 0-based
  int num_classes = 0;
  double rho = 1.0;
  MeanKind mean_kind = MeanKind::bures_wasserstein();
};

struct SSLResult {
  std::vector<int> labels;  // argmax per node, ties to the smallest class
  Eigen::MatrixXd scores;   // N x k
};

SSLResult ssl_classify(const SSLProblem& problem, const FixedPointConfig& cfg = {});

/// Regularization weights from the node-classification experiments: 10 for
/// the arithmetic mean, 0.1 for harmonic-like power means, 1 for BW.
double default_rho(const MeanKind& kind);

}  // namespace gbary
