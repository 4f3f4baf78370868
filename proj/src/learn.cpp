#include "gbary/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "gbary/generators.hpp"
#include "gbary/rng.hpp"

namespace gbary {

GraphMetrics graph_metrics(const Graph& g, const std::vector<int>& partition) {
  const int n = g.num_nodes();
  if (static_cast<int>(partition.size()) != n) {
    throw LengthMismatchError("partition must cover all nodes");
  }
  const int n_comm = partition.empty() ? 0 : *std::max_element(partition.begin(), partition.end()) + 1;
  for (int c : partition) {
    if (c < 0) throw Error("community ids must be nonnegative");
  }

  GraphMetrics out;
  const Eigen::VectorXd k = g.degrees();
  out.degree_centrality = k / static_cast<double>(n - 1);

  const double two_m = k.sum();
  // Community aggregates: e_c = intra-community weight fraction,
  // a_c = community degree fraction; Q = sum_c (e_c - a_c^2).
  Eigen::VectorXd intra = Eigen::VectorXd::Zero(n_comm);
  for (const auto& e : g.edges()) {
    if (partition[e.u] == partition[e.v]) intra[partition[e.u]] += e.w;
  }
  Eigen::VectorXd comm_degree = Eigen::VectorXd::Zero(n_comm);
  for (int i = 0; i < n; ++i) comm_degree[partition[i]] += k[i];
  double q = 0.0;
  if (two_m != 0.0) {
    for (int c = 0; c < n_comm; ++c) {
      const double e_c = 2.0 * intra[c] / two_m;
      const double a_c = comm_degree[c] / two_m;
      q += e_c - a_c * a_c;
    }
  }
  out.modularity = q;

  // k_{i,c}: weight from node i into community c.
  Eigen::MatrixXd k_ic = Eigen::MatrixXd::Zero(n, n_comm);
  for (const auto& e : g.edges()) {
    k_ic(e.u, partition[e.v]) += e.w;
    k_ic(e.v, partition[e.u]) += e.w;
  }
  out.participation.resize(n);
  for (int i = 0; i < n; ++i) {
    if (k[i] == 0.0) {
      std::ostringstream msg;
      msg << "participation undefined: node " << i << " has zero degree";
      throw ZeroDegreeError(msg.str(), i);
    }
    double sum_sq = 0.0;
    for (int c = 0; c < n_comm; ++c) {
      const double ratio = k_ic(i, c) / k[i];
      sum_sq += ratio * ratio;
    }
    out.participation[i] = 1.0 - sum_sq;
  }
  return out;
}

std::vector<std::pair<std::string, FusionErrors>> fusion_experiment(
    const Graph& base, const std::vector<int>& partition, int n_graphs,
    int n_perturb, std::span<const MeanKind> kinds, std::uint64_t seed) {
  std::vector<LaplacianMatrix> ls;
  ls.reserve(n_graphs);
  for (int i = 0; i < n_graphs; ++i) {
    ls.push_back(laplacian(perturb_edges(base, n_perturb, n_perturb,
                                         derive_seed(seed, i))));
  }

  const LaplacianMatrix base_l = laplacian(base);
  const GraphMetrics base_metrics = graph_metrics(base, partition);
  const Eigen::MatrixXd base_pinv = psd_pinv(base_l.sym()).mat();
  const DistancePoint base_point = distance_point(base_l, DistanceKind::bures_wasserstein());

  std::vector<std::pair<std::string, FusionErrors>> rows;
  rows.reserve(kinds.size());
  for (const auto& kind : kinds) {
    const SymMatrix mean = mean_of(ls, {}, kind);
    const Graph mean_graph = graph_from_laplacian(mean);
    const GraphMetrics metrics = graph_metrics(mean_graph, partition);

    FusionErrors err;
    err.bw_distance = distance_between(
        distance_point(LaplacianMatrix(mean), DistanceKind::bures_wasserstein()),
        base_point, DistanceKind::bures_wasserstein());
    err.laplacian_frobenius = (mean.mat() - base_l.mat()).norm();
    err.covariance_frobenius = (psd_pinv(mean).mat() - base_pinv).norm();
    err.degree_centrality_mse =
        (metrics.degree_centrality - base_metrics.degree_centrality).squaredNorm() /
        base.num_nodes();
    err.modularity_absdiff = std::abs(metrics.modularity - base_metrics.modularity);
    err.participation_mse =
        (metrics.participation - base_metrics.participation).squaredNorm() /
        base.num_nodes();
    rows.emplace_back(kind.name(), err);
  }
  return rows;
}

namespace {

Graph centroid_graph(std::span<const Graph> graphs, const std::vector<int>& members,
                     const MeanKind& kind, const FixedPointConfig& cfg) {
  std::vector<LaplacianMatrix> ls;
  ls.reserve(members.size());
  for (int idx : members) ls.push_back(laplacian(graphs[idx]));
  return graph_from_laplacian(mean_of(ls, {}, kind, cfg));
}

double squared(double x) { return x * x; }

}  // namespace

KMeansResult kmeans_graphs(std::span<const Graph> graphs, const KMeansConfig& cfg) {
  const int n = static_cast<int>(graphs.size());
  if (cfg.k < 1 || n < cfg.k) {
    throw Error("k-means needs at least k graphs");
  }

  const Eigen::MatrixXd table = pairwise_distances(graphs, cfg.distance_kind);
  std::vector<DistancePoint> points;
  points.reserve(n);
  for (const auto& g : graphs) points.push_back(distance_point(g, cfg.distance_kind));

  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < cfg.n_init; ++restart) {
    Rng rng(derive_seed(cfg.rng_seed, restart));

    // Greedy k-means++ seeding over the precomputed table: candidates are
    // drawn proportionally to squared distance and the one minimizing the
    // resulting potential is kept.
    const int n_candidates = 2 + static_cast<int>(std::log2(std::max(2, cfg.k)));
    std::vector<int> seeds;
    seeds.push_back(rng.index(n));
    Eigen::VectorXd d2(n);
    for (int i = 0; i < n; ++i) d2[i] = squared(table(i, seeds[0]));
    while (static_cast<int>(seeds.size()) < cfg.k) {
      int best_pick = -1;
      double best_potential = std::numeric_limits<double>::infinity();
      for (int candidate = 0; candidate < n_candidates; ++candidate) {
        const double total = d2.sum();
        int pick = 0;
        if (total <= 0.0) {
          pick = rng.index(n);
        } else {
          const double r = rng.uniform01() * total;
          double acc = 0.0;
          for (int i = 0; i < n; ++i) {
            acc += d2[i];
            pick = i;
            if (acc >= r) break;
          }
        }
        double potential = 0.0;
        for (int i = 0; i < n; ++i) {
          potential += std::min(d2[i], squared(table(i, pick)));
        }
        if (potential < best_potential) {
          best_potential = potential;
          best_pick = pick;
        }
      }
      seeds.push_back(best_pick);
      for (int i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared(table(i, best_pick)));
    }

    std::vector<Graph> centroids;
    centroids.reserve(cfg.k);
    std::vector<DistancePoint> centroid_points;
    centroid_points.reserve(cfg.k);
    for (int s : seeds) {
      centroids.push_back(graphs[s]);
      centroid_points.push_back(points[s]);
    }

    std::vector<int> assignment(n, -1);
    std::vector<double> inertia_history;
    int iterations = 0;
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
      iterations = iter + 1;
      // Assignment step.
      std::vector<int> next(n, 0);
      double inertia = 0.0;
      for (int i = 0; i < n; ++i) {
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < cfg.k; ++c) {
          const double d =
              distance_between(points[i], centroid_points[c], cfg.distance_kind);
          if (d < best_d) {
            best_d = d;
            next[i] = c;
          }
        }
        inertia += squared(best_d);
      }
      inertia_history.push_back(inertia);
      const bool stable = next == assignment;
      assignment = std::move(next);
      if (stable) break;

      // Update step.
      std::vector<std::vector<int>> members(cfg.k);
      for (int i = 0; i < n; ++i) members[assignment[i]].push_back(i);
      for (int c = 0; c < cfg.k; ++c) {
        if (members[c].empty()) {
          // Reseed with the graph farthest from its current centroid.
          int farthest = 0;
          double worst = -1.0;
          for (int i = 0; i < n; ++i) {
            const double d = distance_between(points[i], centroid_points[assignment[i]],
                                              cfg.distance_kind);
            if (d > worst) {
              worst = d;
              farthest = i;
            }
          }
          centroids[c] = graphs[farthest];
          centroid_points[c] = points[farthest];
          assignment[farthest] = c;
        } else {
          centroids[c] = centroid_graph(graphs, members[c], cfg.mean_kind, cfg.solver);
          centroid_points[c] = distance_point(centroids[c], cfg.distance_kind);
        }
      }
    }

    double final_inertia = 0.0;
    for (int i = 0; i < n; ++i) {
      final_inertia += squared(
          distance_between(points[i], centroid_points[assignment[i]], cfg.distance_kind));
    }
    if (final_inertia < best.inertia) {
      best.assignment = assignment;
      best.centroids = centroids;
      best.inertia = final_inertia;
      best.inertia_history = inertia_history;
      best.iterations = iterations;
    }
  }
  return best;
}

double nmi(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw LengthMismatchError("labelings have different lengths");
  }
  const double n = static_cast<double>(a.size());
  if (a.empty()) {
    throw LengthMismatchError("labelings are empty");
  }
  std::map<int, double> pa, pb;
  std::map<std::pair<int, int>, double> pab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa[a[i]] += 1.0 / n;
    pb[b[i]] += 1.0 / n;
    pab[{a[i], b[i]}] += 1.0 / n;
  }
  auto entropy = [](const std::map<int, double>& p) {
    double h = 0.0;
    for (const auto& [_, v] : p) h -= v * std::log(v);
    return h;
  };
  const double ha = entropy(pa);
  const double hb = entropy(pb);
  double mi = 0.0;
  for (const auto& [key, v] : pab) {
    mi += v * std::log(v / (pa[key.first] * pb[key.second]));
  }
  if (ha + hb == 0.0) return 1.0;  // both labelings constant, hence identical
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

ClassifyResult nearest_centroid_classify(std::span<const Graph> train,
                                         std::span<const int> train_labels,
                                         std::span<const Graph> test,
                                         std::span<const int> test_labels,
                                         const MeanKind& mean_kind,
                                         const DistanceKind& distance_kind,
                                         const FixedPointConfig& cfg) {
  if (train.size() != train_labels.size() || test.size() != test_labels.size()) {
    throw LengthMismatchError("graphs and labels have different lengths");
  }
  std::map<int, std::vector<int>> by_class;
  for (std::size_t i = 0; i < train.size(); ++i) {
    by_class[train_labels[i]].push_back(static_cast<int>(i));
  }
  if (by_class.empty()) {
    throw Error("training set is empty");
  }
  std::vector<int> class_ids;
  std::vector<DistancePoint> centroid_points;
  for (const auto& [cls, members] : by_class) {
    class_ids.push_back(cls);
    centroid_points.push_back(
        distance_point(centroid_graph(train, members, mean_kind, cfg), distance_kind));
  }

  ClassifyResult out;
  out.predicted.reserve(test.size());
  int wrong = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const DistancePoint p = distance_point(test[i], distance_kind);
    int best_c = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroid_points.size(); ++c) {
      const double d = distance_between(p, centroid_points[c], distance_kind);
      if (d < best_d) {
        best_d = d;
        best_c = static_cast<int>(c);
      }
    }
    out.predicted.push_back(class_ids[best_c]);
    if (class_ids[best_c] != test_labels[i]) ++wrong;
  }
  out.misclassification_rate = test.empty() ? 0.0 : static_cast<double>(wrong) / test.size();
  return out;
}

double default_rho(const MeanKind& kind) {
  switch (kind.family) {
    case MeanKind::Family::Arithmetic: return 10.0;
    case MeanKind::Family::Harmonic: return 0.1;
    case MeanKind::Family::Power: return kind.exponent == 1.0 ? 10.0 : 0.1;
    case MeanKind::Family::BuresWasserstein: return 1.0;
    case MeanKind::Family::Karcher: return 1.0;
  }
  return 1.0;
}

SSLResult ssl_classify(const SSLProblem& problem, const FixedPointConfig& cfg) {
  if (problem.layers.empty()) {
    throw Error("SSL problem needs at least one layer");
  }
  const int n = problem.layers.front().dim();
  for (const auto& layer : problem.layers) {
    if (layer.dim() != n) {
      throw DimensionMismatchError("layers have different node counts");
    }
  }
  if (problem.observed_nodes.empty() ||
      problem.observed_nodes.size() != problem.observed_classes.size()) {
    throw Error("observed nodes and classes must be nonempty and aligned");
  }
  const int k = problem.num_classes;
  std::vector<bool> class_seen(k, false);
  for (std::size_t i = 0; i < problem.observed_nodes.size(); ++i) {
    const int node = problem.observed_nodes[i];
    const int cls = problem.observed_classes[i];
    if (node < 0 || node >= n || cls < 0 || cls >= k) {
      throw Error("observed node or class out of range");
    }
    class_seen[cls] = true;
  }
  for (int c = 0; c < k; ++c) {
    if (!class_seen[c]) {
      throw Error("every class needs at least one observed node");
    }
  }
  if (problem.rho < 0.0) {
    throw Error("rho must be nonnegative");
  }

  // Mean of the normalized layer Laplacians. BW goes through the
  // nullspace-aware embedding; harmonic and the other exponents use the
  // shifted power-mean family; Karcher is not defined on differing
  // nullspaces and is rejected.
  Eigen::MatrixXd mean_l;
  switch (problem.mean_kind.family) {
    case MeanKind::Family::Arithmetic: {
      mean_l = Eigen::MatrixXd::Zero(n, n);
      for (const auto& layer : problem.layers) mean_l += layer.mat();
      mean_l /= static_cast<double>(problem.layers.size());
      break;
    }
    case MeanKind::Family::Harmonic:
    case MeanKind::Family::Power: {
      const double p = problem.mean_kind.family == MeanKind::Family::Harmonic
                           ? -1.0
                           : problem.mean_kind.exponent;
      std::vector<SymMatrix> as;
      as.reserve(problem.layers.size());
      for (const auto& layer : problem.layers) as.push_back(layer.sym());
      mean_l = power_mean(as, {}, p).mat();
      break;
    }
    case MeanKind::Family::BuresWasserstein: {
      std::vector<SymMatrix> as;
      as.reserve(problem.layers.size());
      for (const auto& layer : problem.layers) as.push_back(layer.sym());
      // Null detection tolerance scaled like the connectivity check.
      double max_abs = 0.0;
      for (const auto& a : as) max_abs = std::max(max_abs, a.mat().cwiseAbs().maxCoeff());
      mean_l = bw_mean_general(as, {}, cfg, 1e-8 * max_abs * n).mat();
      break;
    }
    case MeanKind::Family::Karcher:
      throw Error("karcher mean is not supported for normalized-Laplacian SSL");
  }

  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, k);
  for (std::size_t i = 0; i < problem.observed_nodes.size(); ++i) {
    y(problem.observed_nodes[i], problem.observed_classes[i]) = 1.0;
  }

  SSLResult out;
  if (problem.rho == 0.0) {
    out.scores = y;
  } else {
    const Eigen::MatrixXd system =
        Eigen::MatrixXd::Identity(n, n) + problem.rho * mean_l;
    Eigen::LDLT<Eigen::MatrixXd> solver(system);
    if (solver.info() != Eigen::Success || !solver.isPositive()) {
      throw SingularSystemError("label propagation system is not positive definite");
    }
    out.scores = solver.solve(y);
  }

  out.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    int best_c = 0;
    for (int c = 1; c < k; ++c) {
      if (out.scores(i, c) > out.scores(i, best_c)) best_c = c;  // ties keep smaller
    }
    out.labels[i] = best_c;
  }
  return out;
}

}  // namespace gbary
