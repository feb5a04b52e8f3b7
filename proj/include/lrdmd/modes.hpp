#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lrdmd/solvers.hpp"

namespace lrdmd {

/// Which eigenvector formula is used for the low-rank modes.
///   AsStated:            phi_i = W_Q w_i
///   ExactReconstruction: phi_i = lambda_i^{-1} P V_Q Sigma_Q w_i, an exact
///                        eigenvector of A = (P V_Q Sigma_Q) W_Q^T.
enum class ModeVariant { AsStated, ExactReconstruction };

std::string_view to_string(ModeVariant variant);
/// Accepts as-stated|exact. Throws ValidationError.
ModeVariant parse_mode_variant(std::string_view text);

struct DmdModes {
  Eigen::VectorXcd eigenvalues;  // k, sorted by decreasing magnitude
  Eigen::MatrixXcd modes;        // n x k, unit columns
  ModeVariant variant = ModeVariant::ExactReconstruction;
  Eigen::Index source_rank = 0;
  std::vector<std::string> warnings;

  Eigen::Index count() const { return eigenvalues.size(); }
};

/// Entry (t, i) holds nu_{i,t+1} = lambda_i^t * (phi_i^H theta).
struct AmplitudeSchedule {
  Eigen::MatrixXcd values;  // T x k
  Eigen::VectorXd theta;
};

struct EigenpairReport {
  std::vector<double> residuals;  // ||A phi_i - lambda_i phi_i||_2
  std::vector<bool> passed;
  double tolerance = 0.0;
  double operator_norm = 0.0;  // ||A||_F

  double max_residual() const;
  bool all_passed() const;
};

/// Relative threshold below which an eigenvalue counts as zero and is
/// dropped under ExactReconstruction.
inline constexpr double kZeroEigenvalueTol = 1e-13;

/// Low-rank DMD modes from the SVD of Q and the k x k eigenproblem
/// W_Q^T P V_Q Sigma_Q w = lambda w. Throws NumericalError if Q has lost
/// column rank at `tol`.
DmdModes compute_modes(const OptimalLowRankFactors& factors,
                       ModeVariant variant = ModeVariant::ExactReconstruction,
                       double tol = kDefaultRankTol);

/// Per-mode residual of the eigen equation under the factored operator;
/// a mode passes when its residual is <= tolerance.
EigenpairReport verify_eigenpairs(const DmdModes& modes, const DmdOperator& op,
                                  double tolerance);

/// Amplitudes by the geometric recurrence nu_{t+1} = lambda * nu_t.
AmplitudeSchedule amplitudes(const DmdModes& modes, const Eigen::VectorXd& theta,
                             Eigen::Index horizon);

}  // namespace lrdmd
