#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace lrdmd {

/// Portable standard-normal source: std::mt19937_64 (bit-exact across
/// platforms by the standard) feeding 53-bit uniforms into the Marsaglia
/// polar method. std::normal_distribution is avoided because its algorithm
/// is implementation-defined.
class NormalSampler {
 public:
  static constexpr std::string_view kName = "mt19937_64/marsaglia-polar";

  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double normal();
  /// Fills column-major.
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);
  Eigen::VectorXd normal_vector(Eigen::Index size);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lrdmd
