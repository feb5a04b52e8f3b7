#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lrdmd/linalg.hpp"
#include "lrdmd/snapshot_data.hpp"

namespace lrdmd {

enum class Method { Optimal, TruncatedExact, Projected, ExactFull };

std::string_view to_string(Method method);
/// Accepts optimal|truncated|projected|exact. Throws ValidationError.
Method parse_method(std::string_view text);

/// A fitted operator A = left * right of declared rank, never stored as n x n.
struct DmdOperator {
  Eigen::MatrixXd left;   // n x rho
  Eigen::MatrixXd right;  // rho x n
  Eigen::Index declared_rank = 0;
  Method method = Method::ExactFull;
  std::vector<std::string> warnings;

  Eigen::Index state_dim() const { return left.rows(); }
  Eigen::Index factor_rank() const { return left.cols(); }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return left * (right * x); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

  /// ||left * right||_F from the k x k Gram products of the factors.
  double frobenius_norm() const;
};

/// Factor bundle of the optimal solver, consumed by the modes and ROM
/// modules. A = P * Q^T with Q = (Y X^+)^T P.
struct OptimalLowRankFactors {
  Eigen::MatrixXd P;  // n x k, orthonormal columns
  Eigen::MatrixXd Q;  // n x k
  SvdFactors x_svd;   // thin SVD of X
};

struct FitOptions {
  double svd_tol = kDefaultRankTol;
  /// Rank-deficient X becomes an error instead of a warning.
  bool strict_rank = false;
  /// For the optimal solver: when k exceeds the numerical rank of Y, fit at
  /// that rank instead of raising RankGuardError. The objective is the same.
  bool cap_rank_to_data = false;
};

/// Largest n for which materialize() will allocate.
inline constexpr Eigen::Index kMaterializeLimit = 10000;

DmdOperator fit_exact_dmd(const DataMatrices& data, const FitOptions& options = {});

DmdOperator fit_truncated_exact_dmd(const DataMatrices& data, Eigen::Index k,
                                    const FitOptions& options = {});

DmdOperator fit_projected_dmd(const DataMatrices& data, Eigen::Index k,
                              const FitOptions& options = {});

struct OptimalFit {
  DmdOperator op;
  OptimalLowRankFactors factors;
};

/// Closed-form global minimizer of ||Y - A X||_F over rank(A) <= k:
/// A = P P^T Y X^+, with P spanning the top-k left singular subspace of Y.
OptimalFit fit_optimal_lowrank_dmd(const DataMatrices& data, Eigen::Index k,
                                   const FitOptions& options = {});

/// Dispatches on `method`; ExactFull ignores k.
DmdOperator fit(Method method, const DataMatrices& data, Eigen::Index k,
                const FitOptions& options = {});

/// ||Y - A X||_F evaluated as Y - left * (right * X).
double residual_norm(const DmdOperator& op, const DataMatrices& data);

/// Dense n x n product left * right. Throws ValidationError above
/// kMaterializeLimit.
Eigen::MatrixXd materialize(const DmdOperator& op);

}  // namespace lrdmd
