#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lrdmd/snapshot_data.hpp"
#include "lrdmd/solvers.hpp"

namespace lrdmd {

/// Snapshot regimes of the toy experiment.
///   I   one trajectory of the spectrally normalized linear model (the span
///       of X is G-invariant, so a companion matrix exists)
///   II  m independent one-step pairs of the linear model
///   III m independent one-step pairs of x -> G (x + x.^3)
enum class Setting { I, II, III };

std::string_view to_string(Setting setting);   // "i", "ii", "iii"
Setting parse_setting(std::string_view text);

/// Benchmark method letters: a = optimal, b = truncated exact, c = projected.
char method_letter(Method method);
Method parse_method_letter(std::string_view text);

struct ToyModel {
  Eigen::MatrixXd G;  // n x n, symmetric PSD, rank r
  Eigen::Index n = 0;
  Eigen::Index r = 0;
  std::uint64_t seed = 0;
  double normalization = 1.0;  // G was divided by this factor
};

/// G = sum_{i=1}^r xi_i xi_i^T with standard-normal xi_i. With `normalize`,
/// G is divided by its spectral radius.
ToyModel generate_toy_operator(Eigen::Index n, Eigen::Index r, std::uint64_t seed,
                               bool normalize = false);

/// Copy of `model` divided by its spectral radius.
ToyModel spectrally_normalized(const ToyModel& model);

/// Throws NumericalError if a state overflows.
SnapshotSet generate_snapshots(const ToyModel& model, Setting setting, Eigen::Index m,
                               std::uint64_t seed);

/// ||Y - X X^+ Y||_F / ||Y||_F, with X X^+ applied as the orthogonal
/// projector onto the retained left singular vectors of X.
double companion_residual(const DataMatrices& data, double tol = kDefaultRankTol);

struct BenchConfig {
  Eigen::Index n = 50;
  Eigen::Index r = 30;
  Eigen::Index m = 40;
  std::vector<Setting> settings{Setting::I, Setting::II, Setting::III};
  std::vector<Method> methods{Method::Optimal, Method::TruncatedExact, Method::Projected};
  std::vector<Eigen::Index> k_values;  // empty means 1..m
  std::uint64_t seed = 0;
  bool seed_given = false;  // set when a config file names the seed
  std::filesystem::path output = "bench.csv";
  /// Worker threads for the (method, k) sweep; 0 = hardware concurrency.
  unsigned threads = 1;
  /// Record wall-clock times. Off by default so results are byte-stable.
  bool timing = false;
  double svd_tol = kDefaultRankTol;

  std::vector<Eigen::Index> resolved_k_values() const;
  /// Throws ValidationError on inconsistent dimensions or ranks.
  void validate() const;
};

/// Parses `key = value` lines ('#' comments). Keys: n, r, m, settings,
/// methods, k_values, seed, output, threads, timing, svd_tol. Lists are
/// comma separated; k_values also accepts ranges such as 1..40.
BenchConfig parse_bench_config(std::string_view text);
BenchConfig load_bench_config(const std::filesystem::path& path);

/// Parses "1..5,8,10..12".
std::vector<Eigen::Index> parse_index_list(std::string_view text);

struct BenchRow {
  Setting setting = Setting::I;
  Method method = Method::Optimal;
  Eigen::Index k = 0;
  double residual = 0.0;
  double companion_residual = 0.0;
  double wall_time_ms = 0.0;
  double y_norm = 0.0;               // ||Y||_F of the dataset
  std::optional<std::string> error;  // set when the fit failed
};

struct BenchResult {
  std::vector<BenchRow> rows;

  /// Header `setting,method,k,residual,companion_residual,wall_time_ms`.
  std::string to_csv() const;
};

struct BenchDataset {
  Setting setting;
  ToyModel model;
  SnapshotSet snapshots;
  DataMatrices data;
};

/// Dataset exactly as run_benchmark generates it for `setting`.
BenchDataset make_bench_dataset(const BenchConfig& cfg, Setting setting);

BenchResult run_benchmark(const BenchConfig& cfg);

}  // namespace lrdmd
