#include "lrdmd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lrdmd/errors.hpp"

namespace lrdmd {

namespace {

// Convergence threshold on |y_i . y_j| / (|y_i| |y_j|) for the one-sided
// Jacobi sweep.
constexpr double kJacobiOrthTol = 1e-15;
constexpr int kMaxJacobiSweeps = 80;

void require_finite(const Eigen::MatrixXd& M, const char* what) {
  if (!M.allFinite()) {
    throw NumericalError(std::string(what) + ": matrix has non-finite entries");
  }
}

// Stable permutation sorting `values` in nonincreasing order.
std::vector<Eigen::Index> descending_order(const Eigen::VectorXd& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return values(a) > values(b);
  });
  return order;
}

}  // namespace

Eigen::Index numerical_rank(const Eigen::VectorXd& sigma, double tol) {
  if (sigma.size() == 0 || !(sigma(0) > 0.0)) return 0;
  const double cut = tol * sigma(0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut) ++r;
  }
  return r;
}

Eigen::Index SvdFactors::rank(double tol) const { return numerical_rank(sigma, tol); }

Eigen::MatrixXd SvdFactors::reconstruct() const {
  return W * sigma.asDiagonal() * V.transpose();
}

Eigen::Index GramSpectrum::rank(double tol) const { return numerical_rank(sigma, tol); }

void fix_column_signs(Eigen::MatrixXd& basis, Eigen::MatrixXd* partner) {
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
      const double a = std::abs(basis(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (basis.rows() > 0 && basis(arg, j) < 0.0) {
      basis.col(j) *= -1.0;
      if (partner != nullptr) partner->col(j) *= -1.0;
    }
  }
}

SvdFactors thin_svd(const Eigen::MatrixXd& M) {
  if (M.rows() < M.cols()) {
    throw ValidationError("thin_svd: expected rows >= cols, got " +
                          std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
  }
  require_finite(M, "thin_svd");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdFactors f{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  fix_column_signs(f.W, &f.V);
  return f;
}

Eigen::MatrixXd pseudo_inverse(const SvdFactors& f, double tol) {
  const Eigen::Index r = f.rank(tol);
  const Eigen::VectorXd inv = f.sigma.head(r).cwiseInverse();
  return f.V.leftCols(r) * inv.asDiagonal() * f.W.leftCols(r).transpose();
}

GramSpectrum gram_spectrum(const Eigen::MatrixXd& Y) {
  require_finite(Y, "gram_spectrum");
  const Eigen::Index m = Y.cols();
  Eigen::MatrixXd U = Y;
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(m, m);

  // Cyclic Jacobi on G = Y^T Y. Each rotation zeroes G(i, j), with the
  // entries G(i, i), G(j, j), G(i, j) recomputed from the current columns.
  int sweep = 0;
  for (; sweep < kMaxJacobiSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
      for (Eigen::Index j = i + 1; j < m; ++j) {
        const double gii = U.col(i).squaredNorm();
        const double gjj = U.col(j).squaredNorm();
        const double gij = U.col(i).dot(U.col(j));
        if (gij == 0.0 || std::abs(gij) <= kJacobiOrthTol * std::sqrt(gii * gjj)) {
          continue;
        }
        rotated = true;
        const double zeta = (gjj - gii) / (2.0 * gij);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index r = 0; r < U.rows(); ++r) {
          const double a = U(r, i);
          const double b = U(r, j);
          U(r, i) = c * a - s * b;
          U(r, j) = s * a + c * b;
        }
        for (Eigen::Index r = 0; r < m; ++r) {
          const double a = V(r, i);
          const double b = V(r, j);
          V(r, i) = c * a - s * b;
          V(r, j) = s * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxJacobiSweeps) {
    throw NumericalError("gram_spectrum: Jacobi sweeps did not converge");
  }

  Eigen::VectorXd norms = U.colwise().norm().transpose();
  const auto order = descending_order(norms);
  GramSpectrum out;
  out.sigma.resize(m);
  out.V.resize(m, m);
  out.rotated.resize(Y.rows(), m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.sigma(k) = norms(src);
    out.V.col(k) = V.col(src);
    out.rotated.col(k) = U.col(src);
  }
  out.sweeps = sweep + 1;
  return out;
}

Eigen::MatrixXd top_left_singular_basis(const GramSpectrum& spectrum, Eigen::Index k,
                                        double tol) {
  const Eigen::Index rank = spectrum.rank(tol);
  if (k < 1) throw ValidationError("top_left_singular_basis: rank must be >= 1");
  if (k > rank) {
    throw RankGuardError("requested rank " + std::to_string(k) +
                         " exceeds the numerical rank " + std::to_string(rank) +
                         " of the successor matrix Y");
  }
  Eigen::MatrixXd P =
      spectrum.rotated.leftCols(k) * spectrum.sigma.head(k).cwiseInverse().asDiagonal();
  fix_column_signs(P, nullptr);
  return P;
}

Eigen::MatrixXd top_left_singular_basis(const Eigen::MatrixXd& Y, Eigen::Index k,
                                        double tol) {
  return top_left_singular_basis(gram_spectrum(Y), k, tol);
}

SvdFactors truncate_rank(const SvdFactors& f, Eigen::Index k) {
  const Eigen::Index keep = std::clamp<Eigen::Index>(k, 0, f.sigma.size());
  return SvdFactors{f.W.leftCols(keep), f.sigma.head(keep), f.V.leftCols(keep)};
}

}  // namespace lrdmd
