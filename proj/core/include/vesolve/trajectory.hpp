#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vesolve/problem.hpp"

namespace vesolve {

/// One time node of a discrete solution. Node 0 carries the initial datum.
struct TrajectoryNode {
    double t = 0.0;
    State state;
    double energy = 0.0;
    double power = 0.0;
    /// d(z^{n-1}, z^n); zero at node 0.
    double step_dissipation = 0.0;
    /// delta(z^{n-1}, z^n); zero at node 0.
    double step_correction = 0.0;
    /// Minimized value I + d + delta of the step (energy at node 0).
    double objective = 0.0;
    bool certified = false;
};

struct DiscreteTrajectory {
    std::vector<TrajectoryNode> nodes;
    double tau = 0.0;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t steps() const { return nodes.empty() ? 0 : nodes.size() - 1; }
    [[nodiscard]] double horizon() const { return nodes.empty() ? 0.0 : nodes.back().t; }
};

/// A jump of the discrete solution: a run of consecutive steps whose
/// dissipation is far above the typical step. t is the node time of the
/// first such step, where the scheme evaluated the energies of both ends.
/// z_inner is the value the left-continuous interpolant holds before the
/// jump, i.e. z_left.
struct JumpRecord {
    double t = 0.0;
    std::size_t first_step = 0;
    std::size_t last_step = 0;
    Vec z_left;
    Vec z_inner;
    Vec z_right;
};

struct JumpDetectionConfig {
    /// A step is a jump candidate when d > threshold * reference.
    double threshold = 10.0;
};

/// Reference step dissipation: median of the positive step dissipations when
/// there are at least three of them, otherwise tau (unit rate).
double reference_step_dissipation(const DiscreteTrajectory& traj);

/// Detects jumps and merges consecutive candidate steps into one record.
std::vector<JumpRecord> detect_jumps(const DiscreteTrajectory& traj,
                                     const JumpDetectionConfig& cfg = {});

/// Left-continuous piecewise-constant interpolant of a discrete solution:
/// value z_0 at t = 0 and z^n on (t^{n-1}, t^n].
class Trajectory {
public:
    Trajectory() = default;
    explicit Trajectory(DiscreteTrajectory discrete, const JumpDetectionConfig& cfg = {});

    [[nodiscard]] std::size_t index_at(double t) const;
    [[nodiscard]] const State& state_at(double t) const { return nodes()[index_at(t)].state; }
    [[nodiscard]] const Vec& z_at(double t) const { return state_at(t).z; }

    [[nodiscard]] const std::vector<TrajectoryNode>& nodes() const { return discrete_.nodes; }
    [[nodiscard]] const DiscreteTrajectory& discrete() const { return discrete_; }
    [[nodiscard]] const std::vector<JumpRecord>& jumps() const { return jumps_; }
    [[nodiscard]] double horizon() const { return discrete_.horizon(); }

private:
    DiscreteTrajectory discrete_;
    std::vector<JumpRecord> jumps_;
};

Trajectory interpolate(const DiscreteTrajectory& discrete, const JumpDetectionConfig& cfg = {});

} // namespace vesolve
