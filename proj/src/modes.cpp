#include "lrdmd/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lrdmd/errors.hpp"

namespace lrdmd {

namespace {

using cplx = std::complex<double>;

// Unit norm, with the phase chosen so the largest-magnitude entry is real
// and positive (lowest index on ties).
void normalize_mode(Eigen::Ref<Eigen::VectorXcd> phi) {
  const double norm = phi.norm();
  if (norm == 0.0) return;
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    const double a = std::abs(phi(i));
    if (a > best) {
      best = a;
      arg = i;
    }
  }
  const cplx phase = phi(arg) / std::abs(phi(arg));
  phi /= phase * norm;
  phi(arg) = cplx(phi(arg).real(), 0.0);
}

}  // namespace

std::string_view to_string(ModeVariant variant) {
  return variant == ModeVariant::AsStated ? "as-stated" : "exact";
}

ModeVariant parse_mode_variant(std::string_view text) {
  if (text == "as-stated" || text == "as_stated") return ModeVariant::AsStated;
  if (text == "exact" || text == "exact_reconstruction") {
    return ModeVariant::ExactReconstruction;
  }
  throw ValidationError("unknown mode variant '" + std::string(text) +
                        "' (expected as-stated|exact)");
}

double EigenpairReport::max_residual() const {
  return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

bool EigenpairReport::all_passed() const {
  return std::all_of(passed.begin(), passed.end(), [](bool b) { return b; });
}

DmdModes compute_modes(const OptimalLowRankFactors& factors, ModeVariant variant,
                       double tol) {
  const Eigen::MatrixXd& P = factors.P;
  const Eigen::MatrixXd& Q = factors.Q;
  if (P.rows() != Q.rows() || P.cols() != Q.cols() || P.cols() == 0) {
    throw ValidationError("compute_modes: P and Q must both be n x k with k >= 1");
  }
  const Eigen::Index k = Q.cols();
  const SvdFactors q_svd = thin_svd(Q);
  if (q_svd.rank(tol) < k) {
    throw NumericalError("compute_modes: Q has numerical rank " +
                         std::to_string(q_svd.rank(tol)) + " < k=" + std::to_string(k) +
                         "; reduce the rank");
  }

  // A = P Q^T = (P V_Q S_Q) W_Q^T, and W_Q^T (P V_Q S_Q) is the k x k
  // matrix sharing its nonzero spectrum.
  const Eigen::MatrixXd lifted = P * q_svd.V * q_svd.sigma.asDiagonal();
  const Eigen::MatrixXd reduced = q_svd.W.transpose() * lifted;
  Eigen::EigenSolver<Eigen::MatrixXd> eig(reduced, true);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("compute_modes: eigensolver failed on the reduced matrix");
  }
  const Eigen::VectorXcd lambda = eig.eigenvalues();
  const Eigen::MatrixXcd w = eig.eigenvectors();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(lambda(a));
    const double mb = std::abs(lambda(b));
    if (ma != mb) return ma > mb;
    return lambda(a).imag() > lambda(b).imag();
  });

  DmdModes out;
  out.variant = variant;
  out.source_rank = k;
  const double spectral_scale = k > 0 ? std::abs(lambda(order.front())) : 0.0;
  const Eigen::MatrixXcd basis = variant == ModeVariant::AsStated
                                     ? Eigen::MatrixXcd(q_svd.W.cast<cplx>())
                                     : Eigen::MatrixXcd(lifted.cast<cplx>());

  std::vector<Eigen::Index> kept;
  for (Eigen::Index idx : order) {
    if (variant == ModeVariant::ExactReconstruction &&
        std::abs(lambda(idx)) <= kZeroEigenvalueTol * spectral_scale) {
      out.warnings.push_back("dropped mode with zero eigenvalue (|lambda|=" +
                             std::to_string(std::abs(lambda(idx))) + ")");
      continue;
    }
    kept.push_back(idx);
  }

  out.eigenvalues.resize(static_cast<Eigen::Index>(kept.size()));
  out.modes.resize(P.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const Eigen::Index idx = kept[c];
    const auto col = static_cast<Eigen::Index>(c);
    out.eigenvalues(col) = lambda(idx);
    Eigen::VectorXcd phi = basis * w.col(idx);
    if (variant == ModeVariant::ExactReconstruction) phi /= lambda(idx);
    normalize_mode(phi);
    out.modes.col(col) = phi;
  }
  return out;
}

EigenpairReport verify_eigenpairs(const DmdModes& modes, const DmdOperator& op,
                                  double tolerance) {
  if (modes.modes.rows() != op.state_dim()) {
    throw ValidationError("verify_eigenpairs: mode length does not match operator");
  }
  EigenpairReport report;
  report.tolerance = tolerance;
  report.operator_norm = op.frobenius_norm();
  for (Eigen::Index i = 0; i < modes.count(); ++i) {
    const Eigen::VectorXcd phi = modes.modes.col(i);
    const double r = (op.apply(phi) - modes.eigenvalues(i) * phi).norm();
    report.residuals.push_back(r);
    report.passed.push_back(r <= tolerance);
  }
  return report;
}

AmplitudeSchedule amplitudes(const DmdModes& modes, const Eigen::VectorXd& theta,
                             Eigen::Index horizon) {
  if (horizon < 1) throw ValidationError("amplitudes: horizon must be >= 1");
  if (theta.size() != modes.modes.rows()) {
    throw ValidationError("amplitudes: theta length does not match mode length");
  }
  AmplitudeSchedule s;
  s.theta = theta;
  s.values.resize(horizon, modes.count());
  const Eigen::VectorXcd theta_c = theta.cast<cplx>();
  for (Eigen::Index i = 0; i < modes.count(); ++i) {
    cplx nu = modes.modes.col(i).dot(theta_c);  // phi^H theta
    for (Eigen::Index t = 0; t < horizon; ++t) {
      s.values(t, i) = nu;
      nu *= modes.eigenvalues(i);
    }
  }
  return s;
}

}  // namespace lrdmd
