#include "lrdmd/rom.hpp"

#include <cmath>
#include <string>

#include "lrdmd/errors.hpp"

namespace lrdmd {

namespace {

void check_horizon(Eigen::Index horizon, const SimulationOptions& options) {
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  if (options.stride < 1) throw ValidationError("stride must be >= 1");
}

bool emitted(Eigen::Index t, const SimulationOptions& options) {
  return (t - 1) % options.stride == 0;
}

void guard(const Eigen::VectorXd& x, Eigen::Index t) {
  const double norm = x.norm();
  if (!std::isfinite(norm) || norm > kOverflowGuard) {
    throw NumericalError("diverging trajectory: ||x_" + std::to_string(t) +
                         "|| exceeds " + std::to_string(kOverflowGuard));
  }
}

}  // namespace

RomTrajectory simulate_reduced(const OptimalLowRankFactors& factors,
                               const Eigen::VectorXd& theta, Eigen::Index horizon,
                               const SimulationOptions& options) {
  check_horizon(horizon, options);
  const Eigen::MatrixXd& P = factors.P;
  const Eigen::MatrixXd& Q = factors.Q;
  if (theta.size() != P.rows()) throw ValidationError("theta length does not match n");

  RomTrajectory out;
  out.times.push_back(1);
  out.states.push_back(theta);
  out.reduced_states.emplace();

  // P^T Y X^+ P = Q^T P
  const Eigen::MatrixXd transition = Q.transpose() * P;
  Eigen::VectorXd z = Q.transpose() * theta;
  for (Eigen::Index t = 2; t <= horizon; ++t) {
    if (t > 2) z = transition * z;
    guard(z, t);
    if (emitted(t, options)) {
      out.times.push_back(t);
      out.states.push_back(P * z);
      out.reduced_states->push_back(z);
    }
  }
  return out;
}

RomTrajectory simulate_full(const DmdOperator& op, const Eigen::VectorXd& theta,
                            Eigen::Index horizon, const SimulationOptions& options) {
  check_horizon(horizon, options);
  if (theta.size() != op.state_dim()) throw ValidationError("theta length does not match n");

  RomTrajectory out;
  out.times.push_back(1);
  out.states.push_back(theta);
  Eigen::VectorXd x = theta;
  for (Eigen::Index t = 2; t <= horizon; ++t) {
    x = op.apply(x);
    guard(x, t);
    if (emitted(t, options)) {
      out.times.push_back(t);
      out.states.push_back(x);
    }
  }
  return out;
}

RomTrajectory reconstruct_from_modes(const DmdModes& modes, const AmplitudeSchedule& amps,
                                     const SimulationOptions& options) {
  const Eigen::Index horizon = amps.values.rows();
  check_horizon(horizon, options);
  if (amps.values.cols() != modes.count() || amps.theta.size() != modes.modes.rows()) {
    throw ValidationError("modes and amplitude schedule are inconsistent");
  }

  RomTrajectory out;
  out.imaginary_norms.emplace();
  out.times.push_back(1);
  out.states.push_back(amps.theta);
  out.imaginary_norms->push_back(0.0);
  double worst_ratio = 0.0;
  for (Eigen::Index t = 2; t <= horizon; ++t) {
    if (!emitted(t, options)) continue;
    const Eigen::VectorXcd x = modes.modes * amps.values.row(t - 1).transpose();
    const Eigen::VectorXd re = x.real();
    guard(re, t);
    const double im = x.imag().norm();
    const double re_norm = re.norm();
    if (re_norm > 0.0) worst_ratio = std::max(worst_ratio, im / re_norm);
    out.times.push_back(t);
    out.states.push_back(re);
    out.imaginary_norms->push_back(im);
  }
  if (worst_ratio > kImaginaryWarnRatio) {
    out.warnings.push_back("modal reconstruction has imaginary/real norm ratio " +
                           std::to_string(worst_ratio) +
                           "; mode set may not be conjugate-closed");
  }
  return out;
}

}  // namespace lrdmd
