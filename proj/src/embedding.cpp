#include "gbary/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gbary {

SpectralFilter SpectralFilter::from_name(std::string_view name) {
  if (name == "pinv") return SpectralFilter(FilterKind::Pinv);
  if (name == "pinv_sqrt" || name.empty()) return SpectralFilter(FilterKind::PinvSqrt);
  if (name == "sqrt") return SpectralFilter(FilterKind::Sqrt);
  if (name == "identity") return SpectralFilter(FilterKind::Identity);
  throw Error("unknown filter name: " + std::string(name));
}

std::string_view SpectralFilter::name() const {
  switch (kind_) {
    case FilterKind::Pinv: return "pinv";
    case FilterKind::PinvSqrt: return "pinv_sqrt";
    case FilterKind::Sqrt: return "sqrt";
    case FilterKind::Identity: return "identity";
  }
  return "";
}

double SpectralFilter::forward(double x) const {
  switch (kind_) {
    case FilterKind::Pinv: return 1.0 / x;
    case FilterKind::PinvSqrt: return 1.0 / std::sqrt(x);
    case FilterKind::Sqrt: return std::sqrt(x);
    case FilterKind::Identity: return x;
  }
  return x;
}

double SpectralFilter::inverse(double y) const {
  switch (kind_) {
    case FilterKind::Pinv: return 1.0 / y;
    case FilterKind::PinvSqrt: return 1.0 / (y * y);
    case FilterKind::Sqrt: return y * y;
    case FilterKind::Identity: return y;
  }
  return y;
}

double SpectralFilter::covariance_eigenvalue(double x) const {
  switch (kind_) {
    case FilterKind::Pinv: return 1.0 / (x * x);
    case FilterKind::PinvSqrt: return 1.0 / x;
    case FilterKind::Sqrt: return x;
    case FilterKind::Identity: return x * x;
  }
  return x;
}

double SpectralFilter::laplacian_eigenvalue(double sigma) const {
  switch (kind_) {
    case FilterKind::Pinv: return 1.0 / std::sqrt(sigma);
    case FilterKind::PinvSqrt: return 1.0 / sigma;
    case FilterKind::Sqrt: return sigma;
    case FilterKind::Identity: return std::sqrt(sigma);
  }
  return sigma;
}

namespace {

/// Sorts (eigenvalue, eigenvector) pairs ascending after a monotone-
/// decreasing map has reversed them.
EigenDecomposition sorted_decomposition(Eigen::VectorXd values, Eigen::MatrixXd vectors) {
  const Eigen::Index n = values.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return values[a] < values[b]; });
  Eigen::VectorXd sorted_values(n);
  Eigen::MatrixXd sorted_vectors(vectors.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sorted_values[i] = values[order[i]];
    sorted_vectors.col(i) = vectors.col(order[i]);
  }
  return EigenDecomposition{std::move(sorted_values), std::move(sorted_vectors)};
}

CovarianceEmbedding embedding_from_spectrum(const EigenDecomposition& shifted,
                                            SpectralFilter g, int n) {
  Eigen::VectorXd cov_values(shifted.eigenvalues.size());
  for (Eigen::Index i = 0; i < shifted.eigenvalues.size(); ++i) {
    cov_values[i] = g.covariance_eigenvalue(shifted.eigenvalues[i]);
  }
  EigenDecomposition eig = sorted_decomposition(cov_values, shifted.eigenvectors);
  SymMatrix sigma = SymMatrix::symmetrized(
      eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.transpose());
  return CovarianceEmbedding{std::move(sigma), n, g, std::move(eig)};
}

}  // namespace

CovarianceEmbedding embed_filtered(const LaplacianMatrix& l, SpectralFilter g) {
  const int n = l.dim();
  // With zero row sums, the connectivity assumption on L is equivalent to
  // strict positive definiteness of L + J/N, so one decomposition covers
  // both the validity check and the embedding.
  const SymMatrix shifted = SymMatrix::symmetrized(
      l.mat() + Eigen::MatrixXd::Constant(n, n, 1.0 / n));
  EigenDecomposition eig_m = eig_sym(shifted);
  const double tol = 1e-8 * eig_m.eigenvalues.cwiseAbs().maxCoeff();
  if (eig_m.eigenvalues[0] <= tol) {
    std::ostringstream msg;
    msg << "embed: Laplacian fails the connectivity assumption (smallest shifted "
           "eigenvalue "
        << eig_m.eigenvalues[0] << ")";
    throw AssumptionViolatedError(msg.str());
  }
  return embedding_from_spectrum(eig_m, g, n);
}

CovarianceEmbedding embed(const LaplacianMatrix& l) {
  return embed_filtered(l, SpectralFilter(FilterKind::PinvSqrt));
}

CovarianceEmbedding embed_general(const SymMatrix& m, std::optional<double> null_tol) {
  const int n = m.dim();
  EigenDecomposition eig = eig_sym(m);
  const double tol = null_tol.value_or(default_rank_tol(eig.eigenvalues));
  if (eig.eigenvalues[0] < -tol) {
    throw NotPsdError("embed_general: input is not PSD", eig.eigenvalues[0]);
  }
  int null_count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(eig.eigenvalues[i]) < tol) ++null_count;
  }
  if (null_count != 1) {
    std::ostringstream msg;
    msg << "embed_general: zero-eigenvalue multiplicity is " << null_count
        << " (expected 1)";
    throw RankError(msg.str());
  }
  // pinv(M) + v v^T in one reconstruction: the null eigenvector picks up
  // eigenvalue 1, every other eigenvalue is inverted.
  Eigen::VectorXd cov_values(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = eig.eigenvalues[i];
    cov_values[i] = std::abs(lambda) < tol ? 1.0 : 1.0 / lambda;
  }
  EigenDecomposition cov_eig = sorted_decomposition(cov_values, eig.eigenvectors);
  SymMatrix sigma = SymMatrix::symmetrized(cov_eig.eigenvectors *
                                           cov_eig.eigenvalues.asDiagonal() *
                                           cov_eig.eigenvectors.transpose());
  return CovarianceEmbedding{std::move(sigma), n,
                             SpectralFilter(FilterKind::PinvSqrt), std::move(cov_eig)};
}

LaplacianMatrix unembed(const SymMatrix& sigma) {
  return unembed_filtered(sigma, SpectralFilter(FilterKind::PinvSqrt));
}

LaplacianMatrix unembed(const CovarianceEmbedding& e) {
  if (e.min_eigenvalue() <= 0.0) {
    throw NotSpdError("unembed: covariance is not strictly positive definite",
                      e.min_eigenvalue());
  }
  const int n = e.source_dim;
  Eigen::VectorXd lap_values(n);
  for (int i = 0; i < n; ++i) {
    lap_values[i] = e.filter.laplacian_eigenvalue(e.eig.eigenvalues[i]);
  }
  const Eigen::MatrixXd m = e.eig.eigenvectors * lap_values.asDiagonal() *
                            e.eig.eigenvectors.transpose();
  return LaplacianMatrix(
      SymMatrix::symmetrized(m - Eigen::MatrixXd::Constant(n, n, 1.0 / n)));
}

LaplacianMatrix unembed_filtered(const SymMatrix& sigma, SpectralFilter g) {
  const int n = sigma.dim();
  EigenDecomposition eig = eig_sym(sigma);
  if (eig.eigenvalues[0] <= 0.0) {
    throw NotSpdError("unembed: covariance is not strictly positive definite",
                      eig.eigenvalues[0]);
  }
  Eigen::VectorXd lap_values(n);
  for (int i = 0; i < n; ++i) {
    const double v = g.laplacian_eigenvalue(eig.eigenvalues[i]);
    if (!std::isfinite(v)) {
      throw InverseFilterDomainError("inverse filter undefined on covariance spectrum");
    }
    lap_values[i] = v;
  }
  const Eigen::MatrixXd m =
      eig.eigenvectors * lap_values.asDiagonal() * eig.eigenvectors.transpose();
  return LaplacianMatrix(
      SymMatrix::symmetrized(m - Eigen::MatrixXd::Constant(n, n, 1.0 / n)));
}

}  // namespace gbary
