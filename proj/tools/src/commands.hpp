#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace vesolve::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_fail = 2;

struct CommonOptions {
    std::string config;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
};

/// Flat key = value certificate document.
std::string certificate_document(const RunConfig& cfg, const Certificate& cert, bool as_ve);

int cmd_solve(const CommonOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const CommonOptions& opt, const std::string& trajectory_csv, std::ostream& out,
               std::ostream& err);
int cmd_jumpcost(const CommonOptions& opt, double t, const std::string& z_minus,
                 const std::string& z_plus, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOptions& opt, const std::string& axis, const std::string& values,
              std::ostream& out, std::ostream& err);

} // namespace vesolve::cli
