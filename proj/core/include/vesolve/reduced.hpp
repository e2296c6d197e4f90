#pragma once

// Reduced energy I(t,z) = min_u E(t,u,z) and the global minimizers used by
// the incremental schemes, including the brute-force grid oracle.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vesolve/problem.hpp"

namespace vesolve {

enum class MinMethod { automatic, grid, multistart_descent, closed_form };

std::string to_string(MinMethod m);
MinMethod parse_min_method(const std::string& s);

struct MinimizerConfig {
    /// automatic: grid for n_z <= 2, multistart descent otherwise.
    MinMethod method = MinMethod::automatic;
    /// Points per dimension across the full z box; empty selects 2001 (n_z = 1)
    /// or 201 (n_z = 2) or 11 (n_z > 2).
    std::vector<std::size_t> grid_resolution;
    std::size_t multistart_count = 16;
    /// Polishing stops when the search window is below this width.
    double descent_tol = 1e-10;
    /// Candidates within band * (1 + |best|) of the best value count as
    /// minimizers; the one closest to the previous state is selected.
    double near_optimal_band = 1e-10;
    /// Number of grid local minima refined after the grid pass.
    std::size_t polish_candidates = 6;
    std::uint64_t seed = 1;
};

std::vector<std::string> validate(const MinimizerConfig& cfg);

struct Candidate {
    Vec z;
    ExtReal value;
};

struct MinResult {
    Vec argmin;
    /// Minimizing u at argmin (for reduce_energy equal to argmin).
    Vec u;
    ExtReal value = ExtReal::infinity();
    MinMethod method = MinMethod::grid;
    bool certified_global = false;
    double tolerance = 0.0;
    /// Refined local minimizers sorted by value (z minimizations only).
    std::vector<Candidate> candidates;
};

using Objective = std::function<ExtReal(CSpan)>;

/// I(t,z) and a minimizing u. Closed form when the model provides it.
MinResult reduce_energy(const RisProblem& problem, double t, CSpan z);

/// I(t,z) only.
ExtReal reduced_energy(const RisProblem& problem, double t, CSpan z);

/// Exhaustive evaluation on a tensor grid of resolution[i] points per
/// dimension (endpoints included). Ties keep the lexicographically first point.
MinResult oracle_grid_min(const Objective& objective, const std::vector<Interval>& box,
                          const std::vector<std::size_t>& resolution);

inline constexpr std::size_t oracle_point_budget = 10'000'000;

/// Minimizes z -> I(t,z) + d(z_prev,z) + delta(z_prev,z) over the z box
/// (restricted to z <= z_prev for unidirectional dissipations).
MinResult global_min_corrected(const RisProblem& problem, double t, CSpan z_prev,
                               const MinimizerConfig& cfg = {});

/// The objective minimized by global_min_corrected.
Objective corrected_objective(const RisProblem& problem, double t, CSpan z_prev);

} // namespace vesolve
