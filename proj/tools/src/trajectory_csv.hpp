#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "vesolve/trajectory.hpp"

namespace vesolve::cli {

inline constexpr const char* csv_version_line = "# vesolve-trajectory v1";

struct CsvExtras {
    /// Running sum of step dissipations.
    std::vector<double> cum_var_d;
    std::vector<double> residual_stability;
    std::vector<int> jump_flag;
};

std::vector<std::string> csv_columns(std::size_t n_z, std::size_t n_u);

/// Writes the versioned header and one row per node with 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const CsvExtras& extras);

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads a CSV written by write_trajectory_csv for the given dimensions.
DiscreteTrajectory read_trajectory_csv(std::istream& in, std::size_t n_z, std::size_t n_u);

/// Shared number formatting for reports.
std::string format_number(double v);

} // namespace vesolve::cli
