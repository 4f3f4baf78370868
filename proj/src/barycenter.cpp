#include "gbary/barycenter.hpp"

#include <cmath>
#include <sstream>

namespace gbary {

BarycenterProblem::BarycenterProblem(std::vector<LaplacianMatrix> laplacians,
                                     std::vector<double> weights, SpectralFilter filter)
    : laplacians_(std::move(laplacians)), filter_(filter) {
  const int m = static_cast<int>(laplacians_.size());
  if (m == 0) {
    throw Error("barycenter problem needs at least one graph");
  }
  for (const auto& l : laplacians_) {
    if (l.dim() != laplacians_.front().dim()) {
      throw DimensionMismatchError("all Laplacians must have the same dimension");
    }
  }
  if (weights.empty()) {
    weights_ = Eigen::VectorXd::Constant(m, 1.0 / m);
  } else {
    if (static_cast<int>(weights.size()) != m) {
      throw DimensionMismatchError("weight count does not match graph count");
    }
    weights_ = Eigen::Map<Eigen::VectorXd>(weights.data(), m);
    if ((weights_.array() <= 0.0).any()) {
      throw Error("barycenter weights must be strictly positive");
    }
    weights_ /= weights_.sum();
  }
}

namespace {

struct SqrtPair {
  Eigen::MatrixXd sqrt;
  Eigen::MatrixXd inv_sqrt;
};

SqrtPair spd_sqrt_pair(const SymMatrix& s) {
  const EigenDecomposition eig = eig_sym(s);
  if (eig.eigenvalues[0] <= 0.0) {
    throw NotSpdError("fixed-point iterate lost positive definiteness",
                      eig.eigenvalues[0]);
  }
  const Eigen::VectorXd root = eig.eigenvalues.cwiseSqrt();
  SqrtPair out;
  out.sqrt = eig.eigenvectors * root.asDiagonal() * eig.eigenvectors.transpose();
  out.inv_sqrt = eig.eigenvectors * root.cwiseInverse().asDiagonal() *
                 eig.eigenvectors.transpose();
  return out;
}

Eigen::MatrixXd psd_sqrt_raw(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (a + a.transpose()));
  const Eigen::VectorXd clamped = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * clamped.asDiagonal() *
         solver.eigenvectors().transpose();
}

/// sum_j w_j (S^{1/2} Sigma_j S^{1/2})^{1/2} for the current iterate.
Eigen::MatrixXd weighted_sqrt_sum(const Eigen::MatrixXd& s_sqrt,
                                  const std::vector<SymMatrix>& sigmas,
                                  const Eigen::VectorXd& weights) {
  const Eigen::Index n = s_sqrt.rows();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < sigmas.size(); ++j) {
    sum += weights[static_cast<Eigen::Index>(j)] *
           psd_sqrt_raw(s_sqrt * sigmas[j].mat() * s_sqrt);
  }
  return sum;
}

}  // namespace

SpdBarycenterResult spd_barycenter(const std::vector<SymMatrix>& sigmas,
                                   const Eigen::VectorXd& weights,
                                   const FixedPointConfig& cfg) {
  if (sigmas.empty() || weights.size() != static_cast<Eigen::Index>(sigmas.size())) {
    throw DimensionMismatchError("covariance list and weights disagree");
  }
  const int n = sigmas.front().dim();

  SymMatrix s;
  switch (cfg.init) {
    case InitKind::FirstEmbedding:
      s = sigmas.front();
      break;
    case InitKind::ArithmeticEmbedding: {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
      for (std::size_t j = 0; j < sigmas.size(); ++j) {
        acc += weights[static_cast<Eigen::Index>(j)] * sigmas[j].mat();
      }
      s = SymMatrix::symmetrized(acc);
      break;
    }
    case InitKind::Provided:
      if (!cfg.init_matrix) {
        throw Error("InitKind::Provided requires init_matrix");
      }
      s = *cfg.init_matrix;
      if (s.dim() != n) {
        throw DimensionMismatchError("provided init has wrong dimension");
      }
      break;
  }

  SpdBarycenterResult res;
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    const SqrtPair sp = spd_sqrt_pair(s);
    const Eigen::MatrixXd mix = weighted_sqrt_sum(sp.sqrt, sigmas, weights);
    const SymMatrix next =
        SymMatrix::symmetrized(sp.inv_sqrt * mix * mix * sp.inv_sqrt);
    const double step = (next.mat() - s.mat()).norm();
    res.step_history.push_back(step);
    res.iterations = iter;
    res.final_step = step;
    s = next;
    if (step <= cfg.tol) {
      res.converged = true;
      break;
    }
  }

  {
    const SqrtPair sp = spd_sqrt_pair(s);
    res.residual = (s.mat() - weighted_sqrt_sum(sp.sqrt, sigmas, weights)).norm();
  }
  res.mean = std::move(s);

  if (!res.converged && cfg.require_convergence) {
    std::ostringstream msg;
    msg << "fixed point did not reach tol " << cfg.tol << " within " << cfg.max_iter
        << " iterations (last step " << res.final_step << ")";
    throw NotConvergedError(msg.str(), res.iterations, res.final_step);
  }
  return res;
}

namespace {

FixedPointReport report_from_laplacian(LaplacianMatrix mean_l, SpdBarycenterResult res) {
  Graph mean_g = graph_from_laplacian(mean_l.sym());
  return FixedPointReport{std::move(mean_g),     std::move(mean_l),
                          res.iterations,        res.final_step,
                          res.residual,          res.converged,
                          std::move(res.step_history)};
}

}  // namespace

FixedPointReport bw_mean(const BarycenterProblem& problem, const FixedPointConfig& cfg) {
  std::vector<SymMatrix> sigmas;
  sigmas.reserve(problem.size());
  for (const auto& l : problem.laplacians()) {
    sigmas.push_back(embed_filtered(l, problem.filter()).matrix);
  }
  SpdBarycenterResult res = spd_barycenter(sigmas, problem.weights(), cfg);
  LaplacianMatrix mean_l = unembed_filtered(res.mean, problem.filter());
  return report_from_laplacian(std::move(mean_l), std::move(res));
}

Eigen::MatrixXd ones_complement_basis(int n) {
  // Helmert vectors: column k is (1,...,1,-k,0,...)/sqrt(k(k+1)) with k ones.
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n - 1);
  for (int k = 1; k < n; ++k) {
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) u(i, k - 1) = 1.0 / norm;
    u(k, k - 1) = -static_cast<double>(k) / norm;
  }
  return u;
}

FixedPointReport bw_mean_projected_oracle(const BarycenterProblem& problem,
                                          const FixedPointConfig& cfg) {
  if (problem.filter().kind() != FilterKind::PinvSqrt) {
    throw Error("projected oracle supports the default filter only");
  }
  const int n = problem.dim();
  if (n < 2) {
    throw Error("projected oracle needs at least two nodes");
  }
  const Eigen::MatrixXd u = ones_complement_basis(n);

  std::vector<SymMatrix> projected;
  projected.reserve(problem.size());
  for (const auto& l : problem.laplacians()) {
    const ConnectivityReport rep = check_connectivity(l);
    if (!rep.ok) {
      throw AssumptionViolatedError("projected oracle: " + rep.detail);
    }
    const Eigen::MatrixXd pinv = psd_pinv(l.sym()).mat();
    projected.push_back(SymMatrix::symmetrized(u.transpose() * pinv * u));
  }

  FixedPointConfig inner = cfg;
  if (inner.init == InitKind::Provided && inner.init_matrix) {
    inner.init_matrix =
        SymMatrix::symmetrized(u.transpose() * inner.init_matrix->mat() * u);
  }

  // Same fixed-point map, written out independently of spd_barycenter so
  // the two solvers share no iteration code.
  SymMatrix s;
  switch (inner.init) {
    case InitKind::FirstEmbedding:
      s = projected.front();
      break;
    case InitKind::ArithmeticEmbedding: {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n - 1, n - 1);
      for (int j = 0; j < problem.size(); ++j) {
        acc += problem.weights()[j] * projected[j].mat();
      }
      s = SymMatrix::symmetrized(acc);
      break;
    }
    case InitKind::Provided:
      s = *inner.init_matrix;
      break;
  }

  SpdBarycenterResult res;
  auto sqrt_of = [](const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()));
    return std::pair(es.eigenvalues(), es.eigenvectors());
  };
  for (int iter = 1; iter <= inner.max_iter; ++iter) {
    auto [vals, vecs] = sqrt_of(s.mat());
    if (vals[0] <= 0.0) {
      throw NotSpdError("projected iterate lost positive definiteness", vals[0]);
    }
    const Eigen::MatrixXd sh =
        vecs * vals.cwiseSqrt().asDiagonal() * vecs.transpose();
    const Eigen::MatrixXd shinv =
        vecs * vals.cwiseSqrt().cwiseInverse().asDiagonal() * vecs.transpose();
    Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(n - 1, n - 1);
    for (int j = 0; j < problem.size(); ++j) {
      auto [pv, pw] = sqrt_of(sh * projected[j].mat() * sh);
      mix += problem.weights()[j] *
             (pw * pv.cwiseMax(0.0).cwiseSqrt().asDiagonal() * pw.transpose());
    }
    const SymMatrix next = SymMatrix::symmetrized(shinv * mix * mix * shinv);
    const double step = (next.mat() - s.mat()).norm();
    res.step_history.push_back(step);
    res.iterations = iter;
    res.final_step = step;
    s = next;
    if (step <= inner.tol) {
      res.converged = true;
      break;
    }
  }
  {
    auto [vals, vecs] = sqrt_of(s.mat());
    const Eigen::MatrixXd sh =
        vecs * vals.cwiseSqrt().asDiagonal() * vecs.transpose();
    Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(n - 1, n - 1);
    for (int j = 0; j < problem.size(); ++j) {
      auto [pv, pw] = sqrt_of(sh * projected[j].mat() * sh);
      mix += problem.weights()[j] *
             (pw * pv.cwiseMax(0.0).cwiseSqrt().asDiagonal() * pw.transpose());
    }
    res.residual = (s.mat() - mix).norm();
  }
  if (!res.converged && inner.require_convergence) {
    throw NotConvergedError("projected oracle did not converge", res.iterations,
                            res.final_step);
  }

  // Lift back: the mean covariance is U S U^T, the mean Laplacian its
  // pseudo-inverse U S^{-1} U^T.
  const Eigen::MatrixXd lifted = u * spd_inv(s).mat() * u.transpose();
  LaplacianMatrix mean_l{SymMatrix::symmetrized(lifted)};
  res.mean = SymMatrix::symmetrized(u * s.mat() * u.transpose());
  return report_from_laplacian(std::move(mean_l), std::move(res));
}

Graph interpolate(const Graph& g0, const Graph& g1, double t) {
  if (g0.num_nodes() != g1.num_nodes()) {
    throw DimensionMismatchError("graphs have different node counts");
  }
  if (t < 0.0 || t > 1.0) {
    throw Error("interpolation parameter must lie in [0, 1]");
  }
  if (t == 0.0) return g0;
  if (t == 1.0) return g1;

  const CovarianceEmbedding e0 = embed(laplacian(g0));
  const CovarianceEmbedding e1 = embed(laplacian(g1));
  const Eigen::VectorXd root = e0.eig.eigenvalues.cwiseSqrt();
  const Eigen::MatrixXd s0h =
      e0.eig.eigenvectors * root.asDiagonal() * e0.eig.eigenvectors.transpose();
  const Eigen::MatrixXd s0h_inv = e0.eig.eigenvectors *
                                  root.cwiseInverse().asDiagonal() *
                                  e0.eig.eigenvectors.transpose();
  const Eigen::MatrixXd cross = psd_sqrt_raw(s0h * e1.matrix.mat() * s0h);
  const Eigen::MatrixXd inner = (1.0 - t) * e0.matrix.mat() + t * cross;
  const SymMatrix sigma_t = SymMatrix::symmetrized(s0h_inv * inner * inner * s0h_inv);
  return graph_from_laplacian(unembed(sigma_t).sym(), g0.node_labels());
}

SymMatrix transport_map(const Graph& g0, const Graph& g1) {
  if (g0.num_nodes() != g1.num_nodes()) {
    throw DimensionMismatchError("graphs have different node counts");
  }
  const int n = g0.num_nodes();
  // Shifted form of T = L0^{1/2} (L0^{+/2} L1^+ L0^{+/2})^{1/2} L0^{1/2}:
  // every factor gains +J/N, products compose, and the shift is removed at
  // the end. Avoids square roots of singular matrices.
  const CovarianceEmbedding e0 = embed(laplacian(g0));
  const CovarianceEmbedding e1 = embed(laplacian(g1));
  const Eigen::VectorXd root = e0.eig.eigenvalues.cwiseSqrt();
  const Eigen::MatrixXd s0h =
      e0.eig.eigenvectors * root.asDiagonal() * e0.eig.eigenvectors.transpose();
  const Eigen::MatrixXd s0h_inv = e0.eig.eigenvectors *
                                  root.cwiseInverse().asDiagonal() *
                                  e0.eig.eigenvectors.transpose();
  const Eigen::MatrixXd cross = psd_sqrt_raw(s0h * e1.matrix.mat() * s0h);
  const Eigen::MatrixXd shifted_t = s0h_inv * cross * s0h_inv;
  return SymMatrix::symmetrized(shifted_t -
                                Eigen::MatrixXd::Constant(n, n, 1.0 / n));
}

SymMatrix bw_mean_general(const std::vector<SymMatrix>& matrices,
                          std::vector<double> weights, const FixedPointConfig& cfg,
                          std::optional<double> null_tol) {
  const int m = static_cast<int>(matrices.size());
  if (m == 0) {
    throw Error("mean of an empty matrix list");
  }
  Eigen::VectorXd w;
  if (weights.empty()) {
    w = Eigen::VectorXd::Constant(m, 1.0 / m);
  } else {
    if (static_cast<int>(weights.size()) != m) {
      throw DimensionMismatchError("weight count does not match matrix count");
    }
    w = Eigen::Map<Eigen::VectorXd>(weights.data(), m);
    if ((w.array() <= 0.0).any()) {
      throw Error("weights must be strictly positive");
    }
    w /= w.sum();
  }

  const int n = matrices.front().dim();
  std::vector<SymMatrix> sigmas;
  sigmas.reserve(m);
  // Weighted average of the per-input null eigenvectors, sign-aligned to
  // the first; this is the direction along which the rank-one shift is
  // removed after the fixed point. It equals the common null vector when
  // all inputs share one.
  Eigen::VectorXd null_dir = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd first_null;
  for (int j = 0; j < m; ++j) {
    if (matrices[j].dim() != n) {
      throw DimensionMismatchError("all matrices must have the same dimension");
    }
    CovarianceEmbedding e = embed_general(matrices[j], null_tol);
    Eigen::VectorXd v = eig_sym(matrices[j]).eigenvectors.col(0);
    if (j == 0) {
      first_null = v;
    } else if (first_null.dot(v) < 0.0) {
      v = -v;
    }
    null_dir += w[j] * v;
    sigmas.push_back(std::move(e.matrix));
  }
  null_dir.normalize();

  const SpdBarycenterResult res = spd_barycenter(sigmas, w, cfg);
  const Eigen::MatrixXd inv = spd_inv(res.mean).mat();
  return SymMatrix::symmetrized(inv - null_dir * null_dir.transpose());
}

}  // namespace gbary
