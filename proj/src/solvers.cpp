#include "lrdmd/solvers.hpp"

#include <algorithm>
#include <complex>

#include "lrdmd/errors.hpp"

namespace lrdmd {

namespace {

// Thin SVD of X restricted to its numerically nonzero singular triplets,
// so that X^+ = V * Sigma^{-1} * W^T.
struct PredecessorBasis {
  SvdFactors full;
  SvdFactors kept;
};

PredecessorBasis predecessor_basis(const DataMatrices& data, const FitOptions& options,
                                   std::vector<std::string>& warnings) {
  if (data.columns() > data.state_dim()) {
    throw ValidationError("snapshot count m=" + std::to_string(data.columns()) +
                          " exceeds state dimension n=" + std::to_string(data.state_dim()));
  }
  PredecessorBasis basis;
  basis.full = thin_svd(data.X());
  const Eigen::Index rank = basis.full.rank(options.svd_tol);
  if (rank == 0) throw NumericalError("predecessor matrix X is numerically zero");
  if (rank < data.columns()) {
    const std::string msg = "predecessor matrix X is rank deficient (numerical rank " +
                            std::to_string(rank) + " < m=" +
                            std::to_string(data.columns()) + ")";
    if (options.strict_rank) throw RankGuardError(msg);
    warnings.push_back(msg + "; using thresholded pseudo-inverse");
  }
  basis.kept = truncate_rank(basis.full, rank);
  return basis;
}

void require_rank(Eigen::Index k) {
  if (k < 1) throw ValidationError("rank must be >= 1");
}

// sigma^{-1} * W^T, the trailing factor shared by every X^+ product.
Eigen::MatrixXd inverse_tail(const SvdFactors& kept) {
  return kept.sigma.cwiseInverse().asDiagonal() * kept.W.transpose();
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Optimal: return "optimal";
    case Method::TruncatedExact: return "truncated";
    case Method::Projected: return "projected";
    case Method::ExactFull: return "exact";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "optimal") return Method::Optimal;
  if (text == "truncated") return Method::TruncatedExact;
  if (text == "projected") return Method::Projected;
  if (text == "exact") return Method::ExactFull;
  throw ValidationError("unknown method '" + std::string(text) +
                        "' (expected optimal|truncated|projected|exact)");
}

Eigen::VectorXcd DmdOperator::apply(const Eigen::VectorXcd& x) const {
  const Eigen::VectorXcd inner = right.cast<std::complex<double>>() * x;
  return left.cast<std::complex<double>>() * inner;
}

double DmdOperator::frobenius_norm() const {
  // ||L R||_F^2 = trace((L^T L)(R R^T))
  const Eigen::MatrixXd lg = left.transpose() * left;
  const Eigen::MatrixXd rg = right * right.transpose();
  return std::sqrt(std::max(0.0, lg.cwiseProduct(rg).sum()));
}

DmdOperator fit_exact_dmd(const DataMatrices& data, const FitOptions& options) {
  DmdOperator op;
  const auto basis = predecessor_basis(data, options, op.warnings);
  const auto& kept = basis.kept;
  op.left = data.Y() * kept.V * kept.sigma.cwiseInverse().asDiagonal();
  op.right = kept.W.transpose();
  op.declared_rank = kept.sigma.size();
  op.method = Method::ExactFull;
  return op;
}

DmdOperator fit_truncated_exact_dmd(const DataMatrices& data, Eigen::Index k,
                                    const FitOptions& options) {
  require_rank(k);
  DmdOperator op;
  const auto basis = predecessor_basis(data, options, op.warnings);
  const auto& kept = basis.kept;
  // A_m = F W_X^T with F = Y V_X Sigma_X^{-1}. Since W_X has orthonormal
  // columns, SVD(F) = W S V^T gives SVD(A_m) = W S (W_X V)^T.
  const Eigen::MatrixXd F = data.Y() * kept.V * kept.sigma.cwiseInverse().asDiagonal();
  const SvdFactors f = truncate_rank(thin_svd(F), k);
  op.left = f.W * f.sigma.asDiagonal();
  op.right = f.V.transpose() * kept.W.transpose();
  op.declared_rank = k;
  op.method = Method::TruncatedExact;
  return op;
}

DmdOperator fit_projected_dmd(const DataMatrices& data, Eigen::Index k,
                              const FitOptions& options) {
  require_rank(k);
  DmdOperator op;
  const auto basis = predecessor_basis(data, options, op.warnings);
  const auto& kept = basis.kept;
  // B = W_X^T Y V_X, truncated to rank k; A_k = W_X W_B L_B V_B^T S_X^{-1} W_X^T.
  const Eigen::MatrixXd B = kept.W.transpose() * data.Y() * kept.V;
  const SvdFactors b = truncate_rank(thin_svd(B), k);
  op.left = kept.W * b.W * b.sigma.asDiagonal();
  op.right = b.V.transpose() * inverse_tail(kept);
  op.declared_rank = k;
  op.method = Method::Projected;
  return op;
}

OptimalFit fit_optimal_lowrank_dmd(const DataMatrices& data, Eigen::Index k,
                                   const FitOptions& options) {
  require_rank(k);
  OptimalFit out;
  auto& op = out.op;
  const auto basis = predecessor_basis(data, options, op.warnings);
  const auto& kept = basis.kept;

  const GramSpectrum spectrum = gram_spectrum(data.Y());
  const Eigen::Index rank_y = spectrum.rank(options.svd_tol);
  Eigen::Index k_fit = k;
  if (k > rank_y && options.cap_rank_to_data) {
    if (rank_y == 0) throw RankGuardError("successor matrix Y is numerically zero");
    op.warnings.push_back("rank " + std::to_string(k) + " exceeds numerical rank " +
                          std::to_string(rank_y) + " of Y; fitted at rank " +
                          std::to_string(rank_y));
    k_fit = rank_y;
  }
  const Eigen::MatrixXd P = top_left_singular_basis(spectrum, k_fit, options.svd_tol);

  // right = P^T Y X^+ = ((P^T Y) V_X) Sigma_X^{-1} W_X^T
  const Eigen::MatrixXd PtY = P.transpose() * data.Y();
  op.left = P;
  op.right = (PtY * kept.V) * inverse_tail(kept);
  op.declared_rank = k;
  op.method = Method::Optimal;

  out.factors.P = P;
  out.factors.Q = op.right.transpose();
  out.factors.x_svd = basis.full;
  return out;
}

DmdOperator fit(Method method, const DataMatrices& data, Eigen::Index k,
                const FitOptions& options) {
  switch (method) {
    case Method::Optimal: return fit_optimal_lowrank_dmd(data, k, options).op;
    case Method::TruncatedExact: return fit_truncated_exact_dmd(data, k, options);
    case Method::Projected: return fit_projected_dmd(data, k, options);
    case Method::ExactFull: return fit_exact_dmd(data, options);
  }
  throw ValidationError("unknown method");
}

double residual_norm(const DmdOperator& op, const DataMatrices& data) {
  if (op.state_dim() != data.state_dim() || op.right.cols() != data.state_dim()) {
    throw ValidationError("operator and data have incompatible dimensions");
  }
  return (data.Y() - op.left * (op.right * data.X())).norm();
}

Eigen::MatrixXd materialize(const DmdOperator& op) {
  if (op.state_dim() > kMaterializeLimit) {
    throw ValidationError("refusing to materialize a " + std::to_string(op.state_dim()) +
                          "x" + std::to_string(op.state_dim()) + " operator");
  }
  return op.left * op.right;
}

}  // namespace lrdmd
