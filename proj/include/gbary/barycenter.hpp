#pragma once

#include <optional>
#include <vector>

#include "gbary/embedding.hpp"
#include "gbary/graph.hpp"

namespace gbary {

/// Inputs of a weighted Bures-Wasserstein mean: connected-graph Laplacians,
/// strictly positive weights (normalized to sum 1 at construction), and the
/// spectral filter defining the embedding.
class BarycenterProblem {
 public:
  /// Empty weights mean uniform. Throws on non-positive weights, mixed
  /// dimensions, or an empty Laplacian list.
  BarycenterProblem(std::vector<LaplacianMatrix> laplacians,
                    std::vector<double> weights = {}, SpectralFilter filter = {});

  const std::vector<LaplacianMatrix>& laplacians() const { return laplacians_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  SpectralFilter filter() const { return filter_; }
  int dim() const { return laplacians_.front().dim(); }
  int size() const { return static_cast<int>(laplacians_.size()); }

 private:
  std::vector<LaplacianMatrix> laplacians_;
  Eigen::VectorXd weights_;
  SpectralFilter filter_;
};

enum class InitKind {
  FirstEmbedding,       // embedding of the first input
  ArithmeticEmbedding,  // weighted arithmetic mean of the embeddings
  Provided,             // init_matrix (must be SPD)
};

struct FixedPointConfig {
  double tol = 1e-9;  // on ||S_n - S_{n-1}||_F
  int max_iter = 100;
  InitKind init = InitKind::ArithmeticEmbedding;
  std::optional<SymMatrix> init_matrix;
  /// When true (default), failing to reach tol raises NotConvergedError;
  /// when false the report carries converged = false instead.
  bool require_convergence = true;
};

/// Convergence trace of the SPD fixed-point iteration.
struct SpdBarycenterResult {
  SymMatrix mean;
  int iterations = 0;
  double final_step = 0.0;
  double residual = 0.0;  // ||S - sum_j w_j (S^{1/2} Sigma_j S^{1/2})^{1/2}||_F
  bool converged = false;
  std::vector<double> step_history;
};

/// Fixed point S <- S^{-1/2} (sum_j w_j (S^{1/2} Sigma_j S^{1/2})^{1/2})^2 S^{-1/2}
/// on strictly positive definite inputs.
SpdBarycenterResult spd_barycenter(const std::vector<SymMatrix>& sigmas,
                                   const Eigen::VectorXd& weights,
                                   const FixedPointConfig& cfg = {});

struct FixedPointReport {
  Graph mean_graph;
  LaplacianMatrix mean_laplacian;
  int iterations = 0;
  double final_step = 0.0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> step_history;
};

/// Bures-Wasserstein mean of the problem's graphs: runs the fixed point on
/// the shifted SPD embeddings and maps the solution back to a Laplacian.
FixedPointReport bw_mean(const BarycenterProblem& problem,
                         const FixedPointConfig& cfg = {});

/// Cross-check solver that works in the (N-1)-dimensional coordinates of an
/// orthonormal basis of the ones-complement instead of shifting: projects
/// the pseudo-inverse covariances, runs the same fixed point there, and
/// lifts the solution back. Default filter only.
FixedPointReport bw_mean_projected_oracle(const BarycenterProblem& problem,
                                          const FixedPointConfig& cfg = {});

/// Displacement interpolation between two graphs: the two-graph mean with
/// weights (1-t, t), available in closed form. t = 0 and t = 1 return the
/// endpoint graphs.
Graph interpolate(const Graph& g0, const Graph& g1, double t);

/// Monge map of the optimal transport between the two graphs' smooth
/// signal distributions: symmetric, vanishes on the ones vector, and
/// satisfies T L0^+ T = L1^+.
SymMatrix transport_map(const Graph& g0, const Graph& g1);

/// Bures-Wasserstein mean for PSD matrices with a one-dimensional nullspace
/// that may differ between inputs (e.g. normalized Laplacians of different
/// layers). Each input is shifted along its own null eigenvector, the SPD
/// fixed point is run, and the rank-one shift is removed along the weighted
/// average null direction. Exact when the nullspaces coincide.
SymMatrix bw_mean_general(const std::vector<SymMatrix>& matrices,
                          std::vector<double> weights = {},
                          const FixedPointConfig& cfg = {},
                          std::optional<double> null_tol = std::nullopt);

/// Orthonormal basis of span{1}^perp as columns (Helmert construction).
Eigen::MatrixXd ones_complement_basis(int n);

}  // namespace gbary
