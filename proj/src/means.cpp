#include "gbary/means.hpp"

#include <cmath>
#include <sstream>

namespace gbary {

MeanKind MeanKind::from_name(std::string_view name) {
  if (name == "bw") return bures_wasserstein();
  if (name.rfind("bw:", 0) == 0) {
    return bures_wasserstein(SpectralFilter::from_name(name.substr(3)));
  }
  if (name == "arithmetic") return arithmetic();
  if (name == "harmonic") return harmonic();
  if (name == "karcher") return karcher();
  if (name.rfind("power:", 0) == 0) {
    const std::string digits(name.substr(6));
    char* end = nullptr;
    const double p = std::strtod(digits.c_str(), &end);
    if (end == digits.c_str() || *end != '\0' || p == 0.0) {
      throw Error("invalid power mean exponent: " + digits);
    }
    return power(p);
  }
  throw Error("unknown mean kind: " + std::string(name));
}

std::string MeanKind::name() const {
  switch (family) {
    case Family::Arithmetic: return "arithmetic";
    case Family::Harmonic: return "harmonic";
    case Family::Karcher: return "karcher";
    case Family::Power: {
      std::ostringstream out;
      out << "power:" << exponent;
      return out.str();
    }
    case Family::BuresWasserstein:
      if (filter.kind() == FilterKind::PinvSqrt) return "bw";
      return "bw:" + std::string(filter.name());
  }
  return "";
}

namespace {

Eigen::VectorXd normalized_weights(std::vector<double> weights, int m) {
  if (weights.empty()) {
    return Eigen::VectorXd::Constant(m, 1.0 / m);
  }
  if (static_cast<int>(weights.size()) != m) {
    throw DimensionMismatchError("weight count does not match input count");
  }
  Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(weights.data(), m);
  if ((w.array() <= 0.0).any()) {
    throw Error("weights must be strictly positive");
  }
  return w / w.sum();
}

int common_dim(std::span<const LaplacianMatrix> ls) {
  if (ls.empty()) {
    throw Error("mean of an empty Laplacian list");
  }
  const int n = ls.front().dim();
  for (const auto& l : ls) {
    if (l.dim() != n) {
      throw DimensionMismatchError("all Laplacians must have the same dimension");
    }
  }
  return n;
}

}  // namespace

LaplacianMatrix arithmetic_mean(std::span<const LaplacianMatrix> ls,
                                std::vector<double> weights) {
  const int n = common_dim(ls);
  const Eigen::VectorXd w = normalized_weights(std::move(weights), ls.size());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < ls.size(); ++j) acc += w[j] * ls[j].mat();
  return LaplacianMatrix(SymMatrix::symmetrized(acc));
}

LaplacianMatrix harmonic_mean(std::span<const LaplacianMatrix> ls,
                              std::vector<double> weights) {
  const int n = common_dim(ls);
  const Eigen::VectorXd w = normalized_weights(std::move(weights), ls.size());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < ls.size(); ++j) {
    const ConnectivityReport rep = check_connectivity(ls[j]);
    if (!rep.ok) {
      throw AssumptionViolatedError("harmonic mean: " + rep.detail);
    }
    acc += w[j] * psd_pinv(ls[j].sym()).mat();
  }
  return LaplacianMatrix(psd_pinv(SymMatrix::symmetrized(acc)));
}

SymMatrix power_mean(std::span<const SymMatrix> as, std::vector<double> weights,
                     double p, std::optional<double> shift_eps) {
  if (as.empty()) {
    throw Error("mean of an empty matrix list");
  }
  if (p == 0.0) {
    throw Error("power mean exponent must be nonzero");
  }
  const int n = as.front().dim();
  const Eigen::VectorXd w = normalized_weights(std::move(weights), as.size());
  const double eps = shift_eps.value_or(p < 0.0 ? 1e-6 : 0.0);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < as.size(); ++j) {
    if (as[j].dim() != n) {
      throw DimensionMismatchError("all matrices must have the same dimension");
    }
    const SymMatrix shifted = SymMatrix::symmetrized(
        as[j].mat() + eps * Eigen::MatrixXd::Identity(n, n));
    acc += w[j] * spectral_apply(shifted, [p](double x) { return std::pow(x, p); }).mat();
  }
  return spectral_apply(SymMatrix::symmetrized(acc),
                        [p](double x) { return std::pow(x, 1.0 / p); });
}

LaplacianMatrix karcher_mean(std::span<const LaplacianMatrix> ls,
                             std::vector<double> weights, double tol, int max_iter) {
  const int n = common_dim(ls);
  const Eigen::VectorXd w = normalized_weights(std::move(weights), ls.size());
  const Eigen::MatrixXd shift = Eigen::MatrixXd::Constant(n, n, 1.0 / n);

  std::vector<Eigen::MatrixXd> ms;
  ms.reserve(ls.size());
  Eigen::MatrixXd init = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < ls.size(); ++j) {
    const ConnectivityReport rep = check_connectivity(ls[j]);
    if (!rep.ok) {
      throw AssumptionViolatedError("karcher mean: " + rep.detail);
    }
    ms.push_back(ls[j].mat() + shift);
    init += w[j] * ms.back();
  }

  SymMatrix x = SymMatrix::symmetrized(init);
  bool converged = false;
  double step = 0.0;
  int iter = 0;
  for (iter = 1; iter <= max_iter; ++iter) {
    const EigenDecomposition eig = eig_sym(x);
    if (eig.eigenvalues[0] <= 0.0) {
      throw NotSpdError("karcher iterate lost positive definiteness",
                        eig.eigenvalues[0]);
    }
    const Eigen::VectorXd root = eig.eigenvalues.cwiseSqrt();
    const Eigen::MatrixXd xh =
        eig.eigenvectors * root.asDiagonal() * eig.eigenvectors.transpose();
    const Eigen::MatrixXd xh_inv = eig.eigenvectors *
                                   root.cwiseInverse().asDiagonal() *
                                   eig.eigenvectors.transpose();
    Eigen::MatrixXd tangent = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t j = 0; j < ms.size(); ++j) {
      tangent += w[j] * spectral_apply(SymMatrix::symmetrized(xh_inv * ms[j] * xh_inv),
                                       [](double v) { return std::log(v); }, 0.0)
                            .mat();
    }
    const Eigen::MatrixXd update =
        xh *
        spectral_apply(SymMatrix::symmetrized(tangent),
                       [](double v) { return std::exp(v); }, 0.0)
            .mat() *
        xh;
    step = (update - x.mat()).norm();
    x = SymMatrix::symmetrized(update);
    if (step <= tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NotConvergedError("karcher mean did not converge", iter, step);
  }
  return LaplacianMatrix(SymMatrix::symmetrized(x.mat() - shift));
}

SymMatrix mean_of(std::span<const LaplacianMatrix> ls, std::vector<double> weights,
                  const MeanKind& kind, const FixedPointConfig& cfg) {
  switch (kind.family) {
    case MeanKind::Family::Arithmetic:
      return arithmetic_mean(ls, std::move(weights)).sym();
    case MeanKind::Family::Harmonic:
      return harmonic_mean(ls, std::move(weights)).sym();
    case MeanKind::Family::Karcher:
      return karcher_mean(ls, std::move(weights)).sym();
    case MeanKind::Family::Power: {
      std::vector<SymMatrix> as;
      as.reserve(ls.size());
      for (const auto& l : ls) as.push_back(l.sym());
      return power_mean(as, std::move(weights), kind.exponent);
    }
    case MeanKind::Family::BuresWasserstein: {
      BarycenterProblem problem(std::vector<LaplacianMatrix>(ls.begin(), ls.end()),
                                std::move(weights), kind.filter);
      return bw_mean(problem, cfg).mean_laplacian.sym();
    }
  }
  throw Error("unreachable mean kind");
}

}  // namespace gbary
