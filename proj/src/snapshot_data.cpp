#include "lrdmd/snapshot_data.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <string>

#include "lrdmd/csv_io.hpp"
#include "lrdmd/errors.hpp"
#include "lrdmd/linalg.hpp"

namespace lrdmd {

namespace {

long parse_key(std::string_view text, const std::string& where) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError(where + ": non-integer key '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

SnapshotSet::SnapshotSet(std::vector<Eigen::MatrixXd> trajectories)
    : trajectories_(std::move(trajectories)) {
  if (trajectories_.empty()) throw ValidationError("snapshot set has no trajectories");
  const auto n = trajectories_.front().rows();
  const auto T = trajectories_.front().cols();
  if (n < 1) throw ValidationError("state dimension must be positive");
  if (T < 2) throw ValidationError("each trajectory needs at least 2 snapshots");
  for (const auto& traj : trajectories_) {
    if (traj.cols() != T) throw ValidationError("ragged trajectories");
    if (traj.rows() != n) throw ValidationError("inconsistent state dimension");
  }
}

DataMatrices::DataMatrices(Eigen::MatrixXd X, Eigen::MatrixXd Y)
    : x_(std::move(X)), y_(std::move(Y)) {
  if (x_.rows() != y_.rows() || x_.cols() != y_.cols()) {
    throw ValidationError("X and Y must have the same shape");
  }
  if (x_.size() == 0) throw ValidationError("snapshot matrices are empty");
  if (!x_.allFinite() || !y_.allFinite()) {
    throw ValidationError("snapshot matrices contain non-finite values");
  }
}

SnapshotSet load_snapshots(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open snapshot file " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty file");
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "traj_id" || header[1] != "t") {
    throw ValidationError(path.string() + ": header must be traj_id,t,x0,...");
  }
  const auto n = static_cast<Eigen::Index>(header.size() - 2);

  std::map<long, std::map<long, Eigen::VectorXd>> grid;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    const auto cells = split_csv_line(line);
    if (static_cast<Eigen::Index>(cells.size()) != n + 2) {
      throw ValidationError(where + ": inconsistent row width (expected " +
                            std::to_string(n + 2) + " cells)");
    }
    const long traj = parse_key(cells[0], where);
    const long t = parse_key(cells[1], where);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      x(i) = parse_double(cells[static_cast<std::size_t>(i + 2)], where);
    }
    if (!grid[traj].emplace(t, std::move(x)).second) {
      throw ValidationError(where + ": duplicate (traj_id, t) = (" + std::to_string(traj) +
                            ", " + std::to_string(t) + ")");
    }
  }
  if (grid.empty()) throw ValidationError(path.string() + ": no snapshot rows");

  std::vector<Eigen::MatrixXd> trajectories;
  long expected_id = 1;
  std::size_t steps = 0;
  for (const auto& [id, states] : grid) {
    if (id != expected_id) {
      throw ValidationError(path.string() + ": non-contiguous traj_id (expected " +
                            std::to_string(expected_id) + ", found " + std::to_string(id) + ")");
    }
    ++expected_id;
    long expected_t = 1;
    for (const auto& entry : states) {
      if (entry.first != expected_t) {
        throw ValidationError(path.string() + ": non-contiguous t in trajectory " +
                              std::to_string(id));
      }
      ++expected_t;
    }
    if (steps == 0) steps = states.size();
    if (states.size() != steps) throw ValidationError(path.string() + ": ragged trajectories");
    Eigen::MatrixXd traj(n, static_cast<Eigen::Index>(states.size()));
    Eigen::Index col = 0;
    for (const auto& entry : states) traj.col(col++) = entry.second;
    trajectories.push_back(std::move(traj));
  }
  return SnapshotSet(std::move(trajectories));
}

void save_snapshots(const SnapshotSet& snapshots, const std::filesystem::path& path) {
  std::string text = "traj_id,t";
  for (Eigen::Index i = 0; i < snapshots.state_dim(); ++i) text += ",x" + std::to_string(i);
  text += '\n';
  for (Eigen::Index id = 0; id < snapshots.trajectory_count(); ++id) {
    const auto& traj = snapshots.trajectory(id);
    for (Eigen::Index t = 0; t < traj.cols(); ++t) {
      text += std::to_string(id + 1) + ',' + std::to_string(t + 1);
      for (Eigen::Index i = 0; i < traj.rows(); ++i) {
        text += ',';
        text += format_double(traj(i, t));
      }
      text += '\n';
    }
  }
  write_text(path, text);
}

DataMatrices build_data_matrices(const SnapshotSet& snapshots) {
  const Eigen::Index n = snapshots.state_dim();
  const Eigen::Index pairs = snapshots.steps() - 1;
  const Eigen::Index m = pairs * snapshots.trajectory_count();
  Eigen::MatrixXd X(n, m);
  Eigen::MatrixXd Y(n, m);
  for (Eigen::Index i = 0; i < snapshots.trajectory_count(); ++i) {
    const auto& traj = snapshots.trajectory(i);
    X.middleCols(i * pairs, pairs) = traj.leftCols(pairs);
    Y.middleCols(i * pairs, pairs) = traj.rightCols(pairs);
  }
  return DataMatrices(std::move(X), std::move(Y));
}

RankReport validate_rank_assumptions(const DataMatrices& data, double tol) {
  auto rank_of = [tol](const Eigen::MatrixXd& M) {
    // Wide matrices share their singular values with the transpose.
    return M.rows() >= M.cols() ? thin_svd(M).rank(tol) : thin_svd(M.transpose()).rank(tol);
  };
  RankReport report;
  report.state_dim = data.state_dim();
  report.columns = data.columns();
  report.tolerance = tol;
  report.rank_x = rank_of(data.X());
  report.rank_y = rank_of(data.Y());
  report.columns_within_dim = report.columns <= report.state_dim;
  report.full_column_rank = report.rank_x == report.columns && report.rank_y == report.columns;
  return report;
}

}  // namespace lrdmd
