#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lrdmd/modes.hpp"
#include "lrdmd/solvers.hpp"

namespace lrdmd {

/// Surrogate trajectory. times[j] is the 1-based time index of states[j].
struct RomTrajectory {
  std::vector<Eigen::Index> times;
  std::vector<Eigen::VectorXd> states;
  /// z_t for the emitted times t >= 2, when produced by simulate_reduced.
  std::optional<std::vector<Eigen::VectorXd>> reduced_states;
  /// ||Im(x_t)|| per emitted state, when produced by reconstruct_from_modes.
  std::optional<std::vector<double>> imaginary_norms;
  std::vector<std::string> warnings;
};

struct SimulationOptions {
  /// Emit every stride-th state (t = 1, 1+stride, ...). The recursion itself
  /// always advances one step at a time.
  Eigen::Index stride = 1;
};

/// States whose norm exceeds this abort the simulation.
inline constexpr double kOverflowGuard = 1e150;
/// Imaginary/real norm ratio above which modal reconstruction warns.
inline constexpr double kImaginaryWarnRatio = 1e-6;

/// k-dimensional recursion z_2 = Q^T theta, z_t = (Q^T P) z_{t-1}, lifted
/// as x_t = P z_t. Throws NumericalError on divergence.
RomTrajectory simulate_reduced(const OptimalLowRankFactors& factors,
                               const Eigen::VectorXd& theta, Eigen::Index horizon,
                               const SimulationOptions& options = {});

/// x_t = A x_{t-1} with the factored operator.
RomTrajectory simulate_full(const DmdOperator& op, const Eigen::VectorXd& theta,
                            Eigen::Index horizon, const SimulationOptions& options = {});

/// x_t = Re(sum_i nu_{i,t} phi_i) for t >= 2; x_1 = theta.
RomTrajectory reconstruct_from_modes(const DmdModes& modes, const AmplitudeSchedule& amps,
                                     const SimulationOptions& options = {});

}  // namespace lrdmd
