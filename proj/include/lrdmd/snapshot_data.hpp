#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/Dense>

namespace lrdmd {

/// N trajectories of T states in R^n. Trajectory i is stored as an n x T
/// matrix whose column t is the state at time t+1.
class SnapshotSet {
 public:
  /// Throws ValidationError unless every trajectory is n x T with T >= 2.
  explicit SnapshotSet(std::vector<Eigen::MatrixXd> trajectories);

  Eigen::Index state_dim() const { return trajectories_.front().rows(); }
  Eigen::Index trajectory_count() const {
    return static_cast<Eigen::Index>(trajectories_.size());
  }
  Eigen::Index steps() const { return trajectories_.front().cols(); }

  const Eigen::MatrixXd& trajectory(Eigen::Index i) const {
    return trajectories_.at(static_cast<std::size_t>(i));
  }
  const std::vector<Eigen::MatrixXd>& trajectories() const {
    return trajectories_;
  }

  /// First state of trajectory 1.
  Eigen::VectorXd first_state() const { return trajectories_.front().col(0); }

  bool operator==(const SnapshotSet&) const = default;

 private:
  std::vector<Eigen::MatrixXd> trajectories_;
};

/// Paired predecessor/successor snapshot matrices. Column j of Y is the
/// time-successor of column j of X.
class DataMatrices {
 public:
  /// Wraps an explicit pair. Throws ValidationError on shape mismatch,
  /// empty input or non-finite entries.
  DataMatrices(Eigen::MatrixXd X, Eigen::MatrixXd Y);

  const Eigen::MatrixXd& X() const { return x_; }
  const Eigen::MatrixXd& Y() const { return y_; }
  Eigen::Index state_dim() const { return x_.rows(); }
  Eigen::Index columns() const { return x_.cols(); }

 private:
  Eigen::MatrixXd x_;
  Eigen::MatrixXd y_;
};

struct RankReport {
  Eigen::Index rank_x = 0;
  Eigen::Index rank_y = 0;
  Eigen::Index columns = 0;
  Eigen::Index state_dim = 0;
  double tolerance = 0.0;
  bool columns_within_dim = false;  // m <= n
  bool full_column_rank = false;    // rank_x == rank_y == m

  bool ok() const { return columns_within_dim && full_column_rank; }
};

inline constexpr double kDefaultRankTol = 1e-12;

/// Parses the snapshot CSV (`traj_id,t,x0,...`). Rows may come in any order
/// but must tile a complete N x T grid.
SnapshotSet load_snapshots(const std::filesystem::path& path);

/// Writes the snapshot CSV with 17 significant digits, ordered by
/// (traj_id, t).
void save_snapshots(const SnapshotSet& snapshots,
                    const std::filesystem::path& path);

DataMatrices build_data_matrices(const SnapshotSet& snapshots);

/// Numerical ranks of X and Y (singular values above tol * sigma_max).
/// Never modifies the data.
RankReport validate_rank_assumptions(const DataMatrices& data,
                                     double tol = kDefaultRankTol);

}  // namespace lrdmd
