#pragma once

#include <Eigen/Dense>

namespace lrdmd {

/// Thin SVD M = W * diag(sigma) * V^T of a p x q matrix with p >= q.
///
/// Sign convention: the largest-magnitude entry of every column of W is
/// positive (ties go to the lowest row index); V is flipped to match.
struct SvdFactors {
  Eigen::MatrixXd W;      // p x q, orthonormal columns
  Eigen::VectorXd sigma;  // q, nonincreasing, >= 0
  Eigen::MatrixXd V;      // q x q, orthonormal columns

  Eigen::Index rank(double tol) const;
  Eigen::MatrixXd reconstruct() const;
};

/// Eigendecomposition of the Gram matrix Y^T Y, obtained by cyclic Jacobi
/// rotations whose 2x2 Gram entries are evaluated from the rotated columns
/// Y*V. Only m x m and n x m storage is used; Y Y^T is never formed.
struct GramSpectrum {
  Eigen::VectorXd sigma;    // square roots of the Gram eigenvalues, sorted
  Eigen::MatrixXd V;        // m x m eigenvectors of Y^T Y
  Eigen::MatrixXd rotated;  // Y * V, columns mutually orthogonal
  int sweeps = 0;

  Eigen::Index rank(double tol) const;
};

/// Count of entries of a nonincreasing nonnegative vector above
/// tol * sigma(0).
Eigen::Index numerical_rank(const Eigen::VectorXd& sigma, double tol);

/// Throws ValidationError if p < q and NumericalError on non-finite input.
SvdFactors thin_svd(const Eigen::MatrixXd& M);

/// V * diag(sigma^+) * W^T, inverting only singular values > tol * sigma_max.
Eigen::MatrixXd pseudo_inverse(const SvdFactors& f, double tol);

GramSpectrum gram_spectrum(const Eigen::MatrixXd& Y);

/// First k columns of Y * V_Y * Sigma_Y^{-1}: an orthonormal basis of the
/// dominant k-dimensional left singular subspace of Y, i.e. the top-k
/// eigenvectors of Y Y^T. Throws RankGuardError if k exceeds the numerical
/// rank of Y at `tol`.
Eigen::MatrixXd top_left_singular_basis(const Eigen::MatrixXd& Y,
                                        Eigen::Index k, double tol = 1e-12);
Eigen::MatrixXd top_left_singular_basis(const GramSpectrum& spectrum,
                                        Eigen::Index k, double tol = 1e-12);

/// Keeps the k leading singular triplets (Eckart-Young).
SvdFactors truncate_rank(const SvdFactors& f, Eigen::Index k);

/// Flips column signs so the largest-magnitude entry of each column of
/// `basis` is positive; the same flips are applied to `partner` columns.
void fix_column_signs(Eigen::MatrixXd& basis, Eigen::MatrixXd* partner);

}  // namespace lrdmd
