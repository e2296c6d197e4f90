#pragma once

// Transition costs of discrete jump chains, the visco-energetic jump cost
// (as an upper bound with the dissipation as certified lower bound), the
// incremental cost and the augmented total variation.

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "vesolve/stability.hpp"
#include "vesolve/trajectory.hpp"

namespace vesolve {

enum class PointKind { sliding, viscous };

/// theta_0 = z_minus, ..., theta_K = z_plus. link_* have K entries and
/// point_residual holds R(t, theta_k) for k < K. A link between two sliding
/// points is a continuous stable arc and carries no correction.
struct JumpChain {
    std::vector<Vec> points;
    std::vector<PointKind> kinds;
    std::vector<double> link_diss;
    std::vector<double> link_gap;
    std::vector<double> point_residual;
    /// False when viscous_chain stopped at max_steps.
    bool converged = true;

    [[nodiscard]] double cost() const;
};

/// Builds a chain and fills link and point quantities from the problem.
/// Sliding points with a positive residual are demoted to viscous.
JumpChain make_chain(const RisProblem& problem, double t, std::vector<Vec> points,
                     std::vector<PointKind> kinds, const StabilityConfig& cfg = {});

/// Sum of stored quantities; throws when any of them differs from a fresh
/// evaluation by more than 1e-9.
double transition_cost(const RisProblem& problem, double t, const JumpChain& chain,
                       const StabilityConfig& cfg = {});

/// theta_n in M(t, theta_{n-1}) until the chain stops moving (1e-10) or
/// max_steps links were added.
JumpChain viscous_chain(const RisProblem& problem, double t, CSpan z_start,
                        std::size_t max_steps = 200, const StabilityConfig& cfg = {});

struct JumpSearchConfig {
    StabilityConfig stability;
    std::size_t dp_resolution_1d = 2001;
    std::size_t dp_resolution_2d = 41;
    /// Negative: the grid spans the z box. Otherwise it spans the hull of the
    /// endpoints widened by this fraction of its width on each side.
    double dp_padding = 0.25;
    bool use_dp = true;
    std::size_t sliding_points = 64;
    std::size_t viscous_max_steps = 200;
};

struct CostBound {
    double upper = std::numeric_limits<double>::infinity();
    double lower = 0.0;
    /// upper - lower.
    double gap = std::numeric_limits<double>::infinity();
    /// Shortest-path value over grid-supported chains (inf when not run).
    double dp_value = std::numeric_limits<double>::infinity();
    /// dp_value - upper: how far off-grid chains improve on the grid optimum.
    double dp_gap = std::numeric_limits<double>::infinity();
    bool grid_supported = false;
};

struct JumpCostResult {
    CostBound bound;
    JumpChain witness;
    /// Cost of each candidate family: direct, viscous, dp, sliding.
    std::vector<std::pair<std::string, double>> candidates;
    /// |sliding(K) - sliding(K/2)|.
    double sliding_k_change = 0.0;
};

JumpCostResult jump_cost(const RisProblem& problem, double t, CSpan z_minus, CSpan z_plus,
                         const JumpSearchConfig& cfg = {});

/// c - d, never negative.
double incremental_cost(const RisProblem& problem, double t, CSpan z_minus, CSpan z_plus,
                        const JumpSearchConfig& cfg = {});

/// Var_d over [t0, t1] plus the incremental costs of the detected jumps of
/// the trajectory that fall in [t0, t1). Steps and jumps are attributed to
/// the time at which the interpolant leaves the old value, which makes the
/// functional exactly additive.
double augmented_variation(const RisProblem& problem, const Trajectory& traj, double t0,
                           double t1, const JumpSearchConfig& cfg = {});

/// Same, with the incremental cost of each detected jump supplied.
double augmented_variation(const Trajectory& traj, double t0, double t1,
                           const std::vector<double>& jump_increments);

/// Plain Var_d over [t0, t1] of the interpolant.
double dissipation_variation(const Trajectory& traj, double t0, double t1);

} // namespace vesolve
