#include "gbary/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gbary {

namespace {

double symmetry_gap(const Eigen::MatrixXd& a) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      const double scale = std::max(1.0, std::abs(a(i, j)));
      worst = std::max(worst, std::abs(a(i, j) - a(j, i)) / scale);
    }
  }
  return worst;
}

}  // namespace

bool is_symmetric(const Eigen::MatrixXd& a, double rel_tol) {
  return a.rows() == a.cols() && symmetry_gap(a) <= rel_tol;
}

SymMatrix SymMatrix::checked(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw NotSymmetricError("matrix is not square");
  }
  const double gap = symmetry_gap(a);
  if (gap > 1e-12) {
    std::ostringstream msg;
    msg << "matrix is not symmetric (relative gap " << gap << ")";
    throw NotSymmetricError(msg.str());
  }
  return SymMatrix(0.5 * (a + a.transpose()));
}

SymMatrix SymMatrix::symmetrized(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw NotSymmetricError("matrix is not square");
  }
  return SymMatrix(0.5 * (a + a.transpose()));
}

EigenDecomposition eig_sym(const SymMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.mat());
  if (solver.info() != Eigen::Success) {
    throw Error("symmetric eigendecomposition failed to converge");
  }
  return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

double default_rank_tol(const Eigen::VectorXd& eigenvalues) {
  const double max_abs = eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
  return static_cast<double>(eigenvalues.size()) *
         std::numeric_limits<double>::epsilon() * max_abs;
}

SymMatrix apply_spectrum(const EigenDecomposition& eig, const ScalarMap& f, double rank_tol) {
  const Eigen::Index n = eig.eigenvalues.size();
  Eigen::VectorXd mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = eig.eigenvalues[i];
    if (std::abs(lambda) < rank_tol) {
      const double y = f(0.0);
      mapped[i] = std::isfinite(y) ? y : 0.0;
    } else {
      const double y = f(lambda);
      if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg << "scalar function undefined on retained eigenvalue " << lambda;
        throw DomainError(msg.str(), lambda);
      }
      mapped[i] = y;
    }
  }
  return SymMatrix::symmetrized(eig.eigenvectors * mapped.asDiagonal() *
                                eig.eigenvectors.transpose());
}

SymMatrix spectral_apply(const SymMatrix& a, const ScalarMap& f,
                         std::optional<double> rank_tol) {
  const EigenDecomposition eig = eig_sym(a);
  return apply_spectrum(eig, f, rank_tol.value_or(default_rank_tol(eig.eigenvalues)));
}

namespace {

void require_psd(const Eigen::VectorXd& eigenvalues, double tol, const char* op) {
  if (eigenvalues.size() > 0 && eigenvalues[0] < -tol) {
    std::ostringstream msg;
    msg << op << ": matrix is not PSD, most negative eigenvalue " << eigenvalues[0];
    throw NotPsdError(msg.str(), eigenvalues[0]);
  }
}

}  // namespace

SymMatrix psd_sqrt(const SymMatrix& a, std::optional<double> rank_tol) {
  const EigenDecomposition eig = eig_sym(a);
  const double tol = rank_tol.value_or(default_rank_tol(eig.eigenvalues));
  require_psd(eig.eigenvalues, tol, "psd_sqrt");
  return apply_spectrum(eig, [](double x) { return std::sqrt(std::max(x, 0.0)); }, tol);
}

SymMatrix psd_pinv(const SymMatrix& a, std::optional<double> rank_tol) {
  const EigenDecomposition eig = eig_sym(a);
  const double tol = rank_tol.value_or(default_rank_tol(eig.eigenvalues));
  require_psd(eig.eigenvalues, tol, "psd_pinv");
  return apply_spectrum(eig, [](double x) { return 1.0 / x; }, tol);
}

SymMatrix spd_inv(const SymMatrix& a, std::optional<double> rank_tol) {
  const EigenDecomposition eig = eig_sym(a);
  const double tol = rank_tol.value_or(default_rank_tol(eig.eigenvalues));
  if (eig.eigenvalues.size() == 0 || eig.eigenvalues[0] <= tol) {
    const double min_ev = eig.eigenvalues.size() == 0 ? 0.0 : eig.eigenvalues[0];
    std::ostringstream msg;
    msg << "spd_inv: matrix is not strictly positive definite, smallest eigenvalue "
        << min_ev;
    throw NotSpdError(msg.str(), min_ev);
  }
  return apply_spectrum(eig, [](double x) { return 1.0 / x; }, 0.0);
}

}  // namespace gbary
