#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lrdmd/rom.hpp"

namespace lrdmd {

/// Shortest text that round-trips to the same double (17 significant digits
/// at most); "nan"/"inf" for non-finite values.
std::string format_double(double value);

/// Strict full-field parse. Throws ValidationError naming `where`.
double parse_double(std::string_view text, std::string_view where);

std::vector<std::string_view> split_csv_line(std::string_view line);

/// Headerless numeric matrix, one row per line.
void write_matrix_csv(const Eigen::MatrixXd& M, const std::filesystem::path& path);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

/// A state vector given as a single row or a single column of numbers.
Eigen::VectorXd read_vector_csv(const std::filesystem::path& path);

/// Header `t,x0,...,x{n-1}`, one row per emitted state.
std::string trajectory_to_csv(const RomTrajectory& trajectory);

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace lrdmd
