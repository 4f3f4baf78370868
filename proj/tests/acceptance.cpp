// Acceptance suite: one check per numbered criterion, each printing a
// single PASS/FAIL line. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gbary/barycenter.hpp"
#include "gbary/experiments.hpp"
#include "gbary/generators.hpp"
#include "gbary/learn.hpp"
#include "gbary/means.hpp"
#include "gbary/metric.hpp"
#include "gbary/rng.hpp"

using namespace gbary;

namespace {

struct Criterion {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "  FAILED: " << what << "\n";
    }
  }
  void note(const std::string& what) { detail << "  " << what << "\n"; }
};

int hardware_jobs() {
  const unsigned hc = std::thread::hardware_concurrency();
  return std::max(1, std::min(8, static_cast<int>(hc)));
}

Graph path2(double w) { return Graph(2, {Edge{0, 1, w}}); }

std::vector<LaplacianMatrix> laplacians(const std::vector<Graph>& graphs) {
  std::vector<LaplacianMatrix> ls;
  ls.reserve(graphs.size());
  for (const auto& g : graphs) ls.push_back(laplacian(g));
  return ls;
}

Graph random_sbm_graph(int n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 5));
  const int k = 1 + static_cast<int>(rng.below(4));
  const double p_in = 0.35 + 0.3 * rng.uniform01();
  const double p_out = 0.08 + 0.12 * rng.uniform01();
  return generate_sbm(n, std::min(k, n), p_in, p_out, seed);
}

Graph reweighted(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.w = 0.5 + 1.5 * rng.uniform01();
  return Graph(g.num_nodes(), std::move(edges));
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// --- criterion 1 -----------------------------------------------------------

Criterion closed_form_golden_values() {
  Criterion c;
  const double d = graph_distance(path2(1.0), path2(4.0));
  c.expect(std::abs(d - 0.35355339) <= 1e-8,
           "d_BW(path2 w=1, path2 w=4) = " + fmt(d) + ", want 0.35355339");

  FixedPointConfig cfg;
  cfg.tol = 1e-12;
  const FixedPointReport report =
      bw_mean(BarycenterProblem(laplacians({path2(1.0), path2(4.0)}), {0.5, 0.5}), cfg);
  const double w = -report.mean_laplacian.mat()(0, 1);
  c.expect(std::abs(w - 16.0 / 9.0) <= 1e-8,
           "bw_mean weight = " + fmt(w) + ", want 16/9");
  return c;
}

// --- criterion 2 -----------------------------------------------------------

Criterion fixed_point_correctness() {
  Criterion c;
  const int jobs = hardware_jobs();
  std::vector<std::string> failures(100);
  parallel_trials(100, jobs, [&](int trial) {
    Rng rng(derive_seed(42, trial));
    const int n = 4 + static_cast<int>(rng.below(27));   // N <= 30
    const int m = 1 + static_cast<int>(rng.below(10));   // m <= 10
    std::vector<Graph> graphs;
    for (int j = 0; j < m; ++j) {
      graphs.push_back(random_sbm_graph(n, derive_seed(1000 + trial, j)));
    }
    const BarycenterProblem problem(laplacians(graphs));
    std::ostringstream bad;
    try {
      const FixedPointReport report = bw_mean(problem);
      if (!report.converged || report.iterations > 100) {
        bad << "no convergence within 100 iterations (trial " << trial << ")";
      } else if (report.residual > 1e-7) {
        bad << "residual " << report.residual << " > 1e-7 (trial " << trial << ")";
      } else {
        const FixedPointReport oracle = bw_mean_projected_oracle(problem);
        const double gap =
            (report.mean_laplacian.mat() - oracle.mean_laplacian.mat()).norm();
        if (gap > 1e-6) {
          bad << "oracle gap " << gap << " > 1e-6 (trial " << trial << ", n=" << n
              << ", m=" << m << ")";
        }
      }
    } catch (const std::exception& e) {
      bad << "exception: " << e.what() << " (trial " << trial << ")";
    }
    failures[trial] = bad.str();
  });
  for (const auto& f : failures) c.expect(f.empty(), f);
  return c;
}

// --- criterion 3 -----------------------------------------------------------

Criterion interpolation_consistency() {
  Criterion c;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(7, trial));
    const int n = 4 + static_cast<int>(rng.below(12));
    const Graph g0 = reweighted(random_sbm_graph(n, derive_seed(2000 + trial, 0)),
                                derive_seed(trial, 8));
    const Graph g1 = reweighted(random_sbm_graph(n, derive_seed(3000 + trial, 0)),
                                derive_seed(trial, 9));

    for (double t : {0.25, 0.5, 0.75}) {
      const Graph geo = interpolate(g0, g1, t);
      FixedPointConfig cfg;
      cfg.tol = 1e-12;
      const FixedPointReport mean =
          bw_mean(BarycenterProblem(laplacians({g0, g1}), {1.0 - t, t}), cfg);
      const double gap = (laplacian(geo).mat() - mean.mean_laplacian.mat()).norm();
      c.expect(gap <= 1e-7, "interpolate/bw_mean gap " + fmt(gap) + " at t=" + fmt(t));
    }

    const SymMatrix t_map = transport_map(g0, g1);
    const Eigen::MatrixXd p0 = psd_pinv(laplacian(g0).sym()).mat();
    const Eigen::MatrixXd p1 = psd_pinv(laplacian(g1).sym()).mat();
    const double push = (t_map.mat() * p0 * t_map.mat() - p1).norm();
    c.expect(push <= 1e-8, "transport identity residual " + fmt(push));

    const Graph at0 = interpolate(g0, g1, 0.0);
    const Graph at1 = interpolate(g0, g1, 1.0);
    c.expect((laplacian(at0).mat() - laplacian(g0).mat()).norm() == 0.0,
             "endpoint t=0 is not g0");
    c.expect((laplacian(at1).mat() - laplacian(g1).mat()).norm() == 0.0,
             "endpoint t=1 is not g1");
  }
  return c;
}

// --- criterion 4 -----------------------------------------------------------

Criterion one_step_property() {
  Criterion c;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(11, trial));
    const int n = 4 + static_cast<int>(rng.below(15));
    const Graph g0 = random_sbm_graph(n, derive_seed(4000 + trial, 0));
    const Graph g1 = random_sbm_graph(n, derive_seed(5000 + trial, 0));
    const double t = 0.1 + 0.8 * rng.uniform01();

    FixedPointConfig cfg;
    cfg.tol = 1e-9;
    cfg.init = InitKind::Provided;
    cfg.init_matrix = embed(laplacian(g1)).matrix;
    const FixedPointReport report =
        bw_mean(BarycenterProblem(laplacians({g0, g1}), {1.0 - t, t}), cfg);
    c.expect(report.converged && report.iterations <= 2 && report.final_step <= cfg.tol,
             "first iterate not a fixed point: iterations=" +
                 std::to_string(report.iterations) + " step=" + fmt(report.final_step));
  }
  return c;
}

// --- criterion 5 -----------------------------------------------------------

Criterion metric_axioms() {
  Criterion c;
  const DistanceKind kinds[] = {
      DistanceKind::bures_wasserstein(),
      DistanceKind::bures_wasserstein(SpectralFilter(FilterKind::Pinv)),
      DistanceKind::bures_wasserstein(SpectralFilter(FilterKind::Sqrt)),
      DistanceKind::bures_wasserstein(SpectralFilter(FilterKind::Identity))};
  for (const auto& kind : kinds) {
    int triangle_failures = 0;
    double worst_self = 0.0;
    bool symmetry_ok = true;
    bool separation_ok = true;
    for (int trial = 0; trial < 200; ++trial) {
      Rng rng(derive_seed(13, trial));
      const int n = 5 + static_cast<int>(rng.below(8));
      const Graph a = reweighted(random_sbm_graph(n, derive_seed(6000 + trial, 1)),
                                 derive_seed(trial, 1));
      const Graph b = reweighted(random_sbm_graph(n, derive_seed(7000 + trial, 2)),
                                 derive_seed(trial, 2));
      const Graph g3 = reweighted(random_sbm_graph(n, derive_seed(8000 + trial, 3)),
                                  derive_seed(trial, 3));
      const double dab = graph_distance(a, b, kind);
      const double dbc = graph_distance(b, g3, kind);
      const double dac = graph_distance(a, g3, kind);
      if (dac > dab + dbc + 1e-8) ++triangle_failures;
      if (std::abs(dab - graph_distance(b, a, kind)) > 1e-10) symmetry_ok = false;
      if (dab < 0.0 || dbc < 0.0 || dac < 0.0) separation_ok = false;
      if (trial < 50) {
        worst_self = std::max(worst_self, graph_distance(a, a, kind));
        if (dab <= 1e-9) separation_ok = false;  // distinct random graphs
      }
    }
    const std::string name = kind.name();
    c.expect(triangle_failures == 0, name + ": " + std::to_string(triangle_failures) +
                                         " triangle violations");
    c.expect(symmetry_ok, name + ": symmetry violated");
    c.expect(separation_ok, name + ": nonnegativity/separation violated");
    c.expect(worst_self <= 1e-9,
             name + ": d(G,G) = " + fmt(worst_self) + " > 1e-9");
  }
  return c;
}

// --- criterion 6 -----------------------------------------------------------

Criterion equivariance_suites() {
  Criterion c;
  const int n = 10;
  std::vector<Graph> graphs;
  for (int j = 0; j < 3; ++j) {
    graphs.push_back(reweighted(random_sbm_graph(n, derive_seed(9000, j)),
                                derive_seed(9100, j)));
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = (i * 7 + 2) % n;
  Eigen::MatrixXd pm = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) pm(perm[i], i) = 1.0;
  std::vector<Graph> permuted;
  for (const auto& g : graphs) permuted.push_back(permute(g, perm));

  // Permutation equivariance of all five mean families.
  FixedPointConfig cfg;
  cfg.tol = 1e-11;
  for (const char* name : {"bw", "arithmetic", "harmonic", "power:-2", "karcher"}) {
    const MeanKind kind = MeanKind::from_name(name);
    SymMatrix base, moved;
    if (kind.family == MeanKind::Family::Power) {
      // Power means act on the shifted SPD cone (normalized-Laplacian use).
      auto shifted = [&](const std::vector<Graph>& gs) {
        std::vector<SymMatrix> out;
        for (const auto& g : gs) {
          out.push_back(SymMatrix::symmetrized(
              laplacian(g).mat() + Eigen::MatrixXd::Constant(n, n, 1.0 / n)));
        }
        return out;
      };
      base = power_mean(shifted(graphs), {}, kind.exponent, 0.0);
      moved = power_mean(shifted(permuted), {}, kind.exponent, 0.0);
    } else {
      base = mean_of(laplacians(graphs), {}, kind, cfg);
      moved = mean_of(laplacians(permuted), {}, kind, cfg);
    }
    const double gap = (moved.mat() - pm * base.mat() * pm.transpose()).norm();
    c.expect(gap <= 1e-8, std::string(name) + " mean equivariance gap " + fmt(gap));
  }

  // Permutation invariance of all distances.
  for (const char* name :
       {"bw", "bw:pinv", "bw:sqrt", "bw:identity", "frobenius", "frobenius-pinv"}) {
    const DistanceKind kind = DistanceKind::from_name(name);
    const double d0 = graph_distance(graphs[0], graphs[1], kind);
    const double d1 = graph_distance(permuted[0], permuted[1], kind);
    c.expect(std::abs(d0 - d1) <= 1e-8,
             std::string(name) + " distance invariance gap " + fmt(std::abs(d0 - d1)));
  }

  // Scaling equivariance of bw_mean.
  for (double scale : {0.5, 3.0}) {
    std::vector<Graph> scaled;
    for (const auto& g : graphs) {
      std::vector<Edge> edges = g.edges();
      for (auto& e : edges) e.w *= scale;
      scaled.push_back(Graph(n, edges));
    }
    const FixedPointReport base = bw_mean(BarycenterProblem(laplacians(graphs)), cfg);
    const FixedPointReport moved = bw_mean(BarycenterProblem(laplacians(scaled)), cfg);
    const double gap =
        (moved.mean_laplacian.mat() - scale * base.mean_laplacian.mat()).norm();
    c.expect(gap <= 1e-8, "scaling c=" + fmt(scale) + " equivariance gap " + fmt(gap));
  }
  return c;
}

// --- criterion 7 -----------------------------------------------------------

Criterion filter_consistency() {
  Criterion c;
  const SpectralFilter filters[] = {
      SpectralFilter(FilterKind::Pinv), SpectralFilter(FilterKind::PinvSqrt),
      SpectralFilter(FilterKind::Sqrt), SpectralFilter(FilterKind::Identity)};
  std::vector<Graph> graphs;
  for (int j = 0; j < 3; ++j) {
    graphs.push_back(reweighted(random_sbm_graph(12, derive_seed(9500, j)),
                                derive_seed(9600, j)));
  }

  for (const auto& g : graphs) {
    const LaplacianMatrix l = laplacian(g);
    const double gap =
        (embed_filtered(l, SpectralFilter(FilterKind::PinvSqrt)).matrix.mat() -
         embed(l).matrix.mat())
            .norm();
    c.expect(gap <= 1e-10, "embed_filtered(pinv_sqrt) vs embed gap " + fmt(gap));
    for (const auto& f : filters) {
      const LaplacianMatrix back = unembed_filtered(embed_filtered(l, f).matrix, f);
      const double rt = (back.mat() - l.mat()).norm();
      c.expect(rt <= 1e-8, std::string(f.name()) + " round-trip gap " + fmt(rt));
    }
  }

  FixedPointConfig cfg;
  cfg.tol = 1e-11;
  const FixedPointReport plain = bw_mean(BarycenterProblem(laplacians(graphs)), cfg);
  const FixedPointReport filtered = bw_mean(
      BarycenterProblem(laplacians(graphs), {}, SpectralFilter(FilterKind::PinvSqrt)),
      cfg);
  const double mean_gap =
      (plain.mean_laplacian.mat() - filtered.mean_laplacian.mat()).norm();
  c.expect(mean_gap <= 1e-8, "filtered vs plain mean gap " + fmt(mean_gap));
  return c;
}

// --- criterion 8 -----------------------------------------------------------

Criterion graph_fusion_orderings() {
  Criterion c;
  FusionParams params;
  params.trials = 200;
  params.seed = 20240817;
  params.kinds = {MeanKind::bures_wasserstein(), MeanKind::arithmetic(),
                  MeanKind::harmonic()};
  const auto rows = run_fusion_trials(params, hardware_jobs());
  const FusionErrors bw = average_fusion_errors(rows, "bw");
  const FusionErrors arith = average_fusion_errors(rows, "arithmetic");
  const FusionErrors harm = average_fusion_errors(rows, "harmonic");

  c.note("modularity error: bw=" + fmt(bw.modularity_absdiff) +
         " arithmetic=" + fmt(arith.modularity_absdiff) + " (reference 0.011 vs 0.015)");
  c.note("participation error: bw=" + fmt(bw.participation_mse) +
         " arithmetic=" + fmt(arith.participation_mse) + " (reference 0.25 vs 0.37)");
  c.note("laplacian error: arithmetic=" + fmt(arith.laplacian_frobenius) +
         " harmonic=" + fmt(harm.laplacian_frobenius) + " (reference 1.85 vs 2.87)");
  c.note("bw distance: bw=" + fmt(bw.bw_distance) + " (reference 0.097)");

  c.expect(bw.modularity_absdiff < arith.modularity_absdiff,
           "BW modularity error is not below arithmetic");
  c.expect(bw.participation_mse < arith.participation_mse,
           "BW participation error is not below arithmetic");
  c.expect(arith.laplacian_frobenius < harm.laplacian_frobenius,
           "arithmetic Laplacian error is not below harmonic");
  return c;
}

// --- criterion 9 -----------------------------------------------------------

Criterion kmeans_orderings() {
  Criterion c;
  const std::vector<std::pair<MeanKind, DistanceKind>> pairings = {
      standard_pairing("bw"), standard_pairing("arithmetic"),
      standard_pairing("harmonic")};

  KMeansExperimentParams hard;
  hard.n_classes = 5;
  hard.p_in = 0.2;
  hard.n_seeds = 10;
  hard.seed = 7311;
  hard.pairings = pairings;
  const auto hard_rows = run_kmeans_trials(hard, hardware_jobs());
  const double bw_hard = average_nmi(hard_rows, "bw/bw");
  const double arith_hard = average_nmi(hard_rows, "arithmetic/frobenius");
  const double harm_hard = average_nmi(hard_rows, "harmonic/frobenius-pinv");
  c.note("hard setting NMI: bw=" + fmt(bw_hard) + " arithmetic=" + fmt(arith_hard) +
         " harmonic=" + fmt(harm_hard));
  c.expect(bw_hard > arith_hard, "BW NMI does not exceed arithmetic on the hard setting");
  c.expect(bw_hard > harm_hard, "BW NMI does not exceed harmonic on the hard setting");

  KMeansExperimentParams easy;
  easy.n_classes = 4;
  easy.p_in = 0.3;
  easy.n_seeds = 10;
  easy.seed = 7411;
  easy.pairings = pairings;
  const auto easy_rows = run_kmeans_trials(easy, hardware_jobs());
  for (const auto& pairing : pairings) {
    const std::string name =
        pairing.first.name() + "/" + pairing.second.name();
    const double score = average_nmi(easy_rows, name);
    c.note("easy setting NMI " + name + " = " + fmt(score));
    c.expect(score >= 0.9, name + " NMI " + fmt(score) + " < 0.9 on the easy setting");
  }
  return c;
}

// --- criterion 10 ----------------------------------------------------------

Criterion ssl_acceptance() {
  Criterion c;

  // Normal equations and the rho = 0 collapse on explicit problems.
  for (int trial = 0; trial < 5; ++trial) {
    const MultiLayerGraph ml =
        generate_multilayer_sbm(150, 3, 2, 0.15, 0.03, derive_seed(9911, trial));
    std::vector<NormalizedLaplacian> layers;
    for (const auto& layer : ml.layers) layers.push_back(normalized_laplacian(layer));
    const auto [nodes, classes] =
        sample_observed(ml.labels, 3, 0.1, derive_seed(9912, trial));

    SSLProblem problem;
    problem.layers = layers;
    problem.observed_nodes = nodes;
    problem.observed_classes = classes;
    problem.num_classes = 3;
    problem.mean_kind = MeanKind::bures_wasserstein();
    problem.rho = 1.0;
    const SSLResult result = ssl_classify(problem);

    std::vector<SymMatrix> as;
    for (const auto& layer : layers) as.push_back(layer.sym());
    double max_abs = 0.0;
    for (const auto& a : as) max_abs = std::max(max_abs, a.mat().cwiseAbs().maxCoeff());
    const Eigen::MatrixXd mean_l = bw_mean_general(as, {}, {}, 1e-8 * max_abs * 150).mat();
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(150, 3);
    for (std::size_t i = 0; i < nodes.size(); ++i) y(nodes[i], classes[i]) = 1.0;
    const double residual =
        ((Eigen::MatrixXd::Identity(150, 150) + mean_l) * result.scores - y)
            .colwise()
            .norm()
            .maxCoeff();
    c.expect(residual <= 1e-8, "normal-equation residual " + fmt(residual));

    problem.rho = 0.0;
    const SSLResult collapsed = ssl_classify(problem);
    bool collapse_ok = (collapsed.scores - y).norm() == 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      collapse_ok = collapse_ok && collapsed.labels[nodes[i]] == classes[i];
    }
    for (int i = 0; i < 150; ++i) {
      if (std::find(nodes.begin(), nodes.end(), i) == nodes.end()) {
        collapse_ok = collapse_ok && collapsed.labels[i] == 0;
      }
    }
    c.expect(collapse_ok, "rho=0 collapse violated");
  }

  // Trial-average comparison against the power-mean family.
  SslParams params;
  params.trials = 50;
  params.seed = 86001;
  params.kinds = {MeanKind::bures_wasserstein(), MeanKind::power(1.0),
                  MeanKind::power(-1.0), MeanKind::power(-10.0)};
  const auto rows = run_ssl_trials(params, hardware_jobs());
  const double bw = average_ssl_error(rows, "bw");
  const double p1 = average_ssl_error(rows, "power:1");
  const double pm1 = average_ssl_error(rows, "power:-1");
  const double pm10 = average_ssl_error(rows, "power:-10");
  c.note("ssl errors: bw=" + fmt(bw) + " power:1=" + fmt(p1) + " power:-1=" + fmt(pm1) +
         " power:-10=" + fmt(pm10));
  const double worst_power = std::max({p1, pm1, pm10});
  c.expect(bw <= worst_power, "BW error " + fmt(bw) + " exceeds the worst power mean " +
                                  fmt(worst_power));
  return c;
}

// --- criterion 11 ----------------------------------------------------------

double modularity_brute_force(const Graph& g, const std::vector<int>& partition) {
  const int n = g.num_nodes();
  const Eigen::MatrixXd w = g.adjacency();
  const Eigen::VectorXd k = g.degrees();
  const double two_m = k.sum();
  double q = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (partition[i] != partition[j]) continue;
      q += w(i, j) - k[i] * k[j] / two_m;
    }
  }
  return q / two_m;
}

Criterion oracle_equivalences() {
  Criterion c;

  // Modularity vs the literal double sum, N <= 12.
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(15, trial));
    const int n = 4 + static_cast<int>(rng.below(9));
    const Graph g = reweighted(random_sbm_graph(n, derive_seed(9700 + trial, 0)),
                               derive_seed(trial, 4));
    std::vector<int> partition(n);
    for (int i = 0; i < n; ++i) partition[i] = static_cast<int>(rng.below(3));
    const double fast = graph_metrics(g, partition).modularity;
    const double slow = modularity_brute_force(g, partition);
    c.expect(std::abs(fast - slow) <= 1e-12,
             "modularity mismatch " + fmt(fast) + " vs " + fmt(slow));
  }

  // Matrix means vs scalar means on commuting (scaled-path) inputs.
  {
    const std::vector<double> weights_w{1.0, 4.0, 2.5};
    std::vector<Graph> graphs;
    for (double w : weights_w) graphs.push_back(path2(w));
    const auto ls = laplacians(graphs);
    auto check_scalar = [&](const char* name, double want) {
      const SymMatrix m = mean_of(ls, {}, MeanKind::from_name(name));
      const double got = -2.0 * m.mat()(0, 1);  // eigenvalue on (1,-1)
      c.expect(std::abs(got - want) <= 1e-8,
               std::string(name) + " scalar-oracle gap: " + fmt(got) + " vs " + fmt(want));
    };
    // Laplacian eigenvalues on (1,-1)/sqrt(2) are 2w.
    check_scalar("arithmetic", (2.0 + 8.0 + 5.0) / 3.0);
    check_scalar("harmonic", 3.0 / (1.0 / 2.0 + 1.0 / 8.0 + 1.0 / 5.0));
    check_scalar("karcher", std::exp((std::log(2.0) + std::log(8.0) + std::log(5.0)) / 3.0));
    // The barycenter acts on the covariances 1/lambda, so the mean
    // eigenvalue is the inverse square of the mean inverse square root.
    const double bw_scalar = 1.0 / std::pow((1.0 / std::sqrt(2.0) + 1.0 / std::sqrt(8.0) +
                                             1.0 / std::sqrt(5.0)) /
                                                3.0,
                                            2.0);
    check_scalar("bw", bw_scalar);
  }

  // BW distance vs the commuting closed form.
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = reweighted(random_sbm_graph(10, derive_seed(9800 + trial, 0)),
                               derive_seed(trial, 6));
    const double scale = 2.0 + trial;
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) e.w *= scale;
    const Graph gs(10, edges);
    const auto eig = eig_sym(laplacian(g).sym());
    const double tol = default_rank_tol(eig.eigenvalues);
    double want_sq = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double lambda = eig.eigenvalues[i];
      if (std::abs(lambda) < tol) continue;
      const double diff = std::sqrt(1.0 / lambda) - std::sqrt(1.0 / (scale * lambda));
      want_sq += diff * diff;
    }
    const double got = graph_distance(g, gs);
    c.expect(std::abs(got - std::sqrt(want_sq)) <= 1e-9,
             "commuting closed form gap " + fmt(std::abs(got - std::sqrt(want_sq))));
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* name;
    std::function<Criterion()> run;
  };
  const std::vector<Entry> entries = {
      {1, "closed-form golden values", closed_form_golden_values},
      {2, "fixed-point correctness and oracle agreement", fixed_point_correctness},
      {3, "interpolation and transport consistency", interpolation_consistency},
      {4, "one-step property from an endpoint embedding", one_step_property},
      {5, "metric axioms for all BW distances", metric_axioms},
      {6, "equivariance suites", equivariance_suites},
      {7, "filter consistency", filter_consistency},
      {8, "graph fusion orderings (desk scale)", graph_fusion_orderings},
      {9, "k-means NMI orderings", kmeans_orderings},
      {10, "semi-supervised learning properties", ssl_acceptance},
      {11, "oracle equivalences", oracle_equivalences},
  };

  int failed = 0;
  for (const auto& entry : entries) {
    Criterion result;
    try {
      result = entry.run();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail << "  EXCEPTION: " << e.what() << "\n";
    }
    std::printf("criterion %2d %s — %s\n", entry.number,
                result.pass ? "PASS" : "FAIL", entry.name);
    const std::string detail = result.detail.str();
    if (!detail.empty()) std::fputs(detail.c_str(), stdout);
    std::fflush(stdout);
    if (!result.pass) ++failed;
  }
  if (failed > 0) {
    std::printf("%d criterion(s) failed\n", failed);
    return 1;
  }
  std::printf("all %zu criteria passed\n", entries.size());
  return 0;
}
