#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "gbary/errors.hpp"

namespace gbary {

/// Dense real symmetric matrix. Construction validates (or enforces)
/// symmetry, so downstream spectral code never has to re-check it.
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Validates |A(i,j) - A(j,i)| <= 1e-12 * max(1, |A(i,j)|) and stores the
  /// symmetrized matrix. Throws NotSymmetricError otherwise.
  static SymMatrix checked(const Eigen::MatrixXd& a);

  /// Stores (A + A^T)/2 without validation; for results of spectral
  /// reconstructions and products that are symmetric up to round-off.
  static SymMatrix symmetrized(const Eigen::MatrixXd& a);

  static SymMatrix zero(int n) { return SymMatrix(Eigen::MatrixXd::Zero(n, n)); }
  static SymMatrix identity(int n) { return SymMatrix(Eigen::MatrixXd::Identity(n, n)); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  double frobenius_norm() const { return m_.norm(); }
  double trace() const { return m_.trace(); }

 private:
  explicit SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

/// Eigendecomposition A = V diag(lambda) V^T with eigenvalues in
/// nondecreasing order and orthonormal eigenvector columns.
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

bool is_symmetric(const Eigen::MatrixXd& a, double rel_tol = 1e-12);

EigenDecomposition eig_sym(const SymMatrix& a);

/// Numerical-rank threshold: N * machine epsilon * max |eigenvalue|.
double default_rank_tol(const Eigen::VectorXd& eigenvalues);

using ScalarMap = std::function<double(double)>;

/// V diag(f(lambda)) V^T from a precomputed decomposition, with
/// pseudo-function semantics: eigenvalues with |lambda| < rank_tol are
/// treated as exactly 0 and mapped by f(0) when that is finite, else
/// excluded from the range (mapped to 0). A non-finite f value on a
/// retained eigenvalue raises DomainError.
SymMatrix apply_spectrum(const EigenDecomposition& eig, const ScalarMap& f, double rank_tol);

SymMatrix spectral_apply(const SymMatrix& a, const ScalarMap& f,
                         std::optional<double> rank_tol = std::nullopt);

/// Principal square root of a PSD matrix (eigenvalues in [-rank_tol, 0)
/// are clamped to 0 first). Throws NotPsdError with the most negative
/// eigenvalue when the input fails the PSD tolerance.
SymMatrix psd_sqrt(const SymMatrix& a, std::optional<double> rank_tol = std::nullopt);

/// Moore-Penrose pseudo-inverse of a PSD matrix.
SymMatrix psd_pinv(const SymMatrix& a, std::optional<double> rank_tol = std::nullopt);

/// Inverse of a strictly positive definite matrix; throws NotSpdError if
/// the smallest eigenvalue does not clear rank_tol.
SymMatrix spd_inv(const SymMatrix& a, std::optional<double> rank_tol = std::nullopt);

}  // namespace gbary
