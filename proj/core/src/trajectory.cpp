#include "vesolve/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vesolve {

double reference_step_dissipation(const DiscreteTrajectory& traj) {
    std::vector<double> positive;
    for (std::size_t n = 1; n < traj.nodes.size(); ++n) {
        const double d = traj.nodes[n].step_dissipation;
        if (d > 1e-14) {
            positive.push_back(d);
        }
    }
    if (positive.size() < 3) {
        return traj.tau;
    }
    const auto mid = positive.begin() + static_cast<std::ptrdiff_t>(positive.size() / 2);
    std::nth_element(positive.begin(), mid, positive.end());
    return *mid;
}

namespace {

// Steps n and n+1 belong to one transition only if no component reverses;
// an excursion out and back is two jumps.
bool same_direction(const DiscreteTrajectory& traj, std::size_t n) {
    const Vec& a = traj.nodes[n - 1].state.z;
    const Vec& b = traj.nodes[n].state.z;
    const Vec& c = traj.nodes[n + 1].state.z;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((b[i] - a[i]) * (c[i] - b[i]) < 0.0) {
            return false;
        }
    }
    return true;
}

} // namespace

std::vector<JumpRecord> detect_jumps(const DiscreteTrajectory& traj, const JumpDetectionConfig& cfg) {
    std::vector<JumpRecord> jumps;
    if (traj.nodes.size() < 2) {
        return jumps;
    }
    const double level = cfg.threshold * reference_step_dissipation(traj);
    std::size_t n = 1;
    while (n < traj.nodes.size()) {
        if (traj.nodes[n].step_dissipation > level) {
            std::size_t last = n;
            while (last + 1 < traj.nodes.size() && traj.nodes[last + 1].step_dissipation > level &&
                   same_direction(traj, last)) {
                ++last;
            }
            JumpRecord rec;
            rec.t = traj.nodes[n].t;
            rec.first_step = n;
            rec.last_step = last;
            rec.z_left = traj.nodes[n - 1].state.z;
            rec.z_inner = rec.z_left;
            rec.z_right = traj.nodes[last].state.z;
            jumps.push_back(std::move(rec));
            n = last + 1;
        } else {
            ++n;
        }
    }
    return jumps;
}

Trajectory::Trajectory(DiscreteTrajectory discrete, const JumpDetectionConfig& cfg)
    : discrete_(std::move(discrete)) {
    if (discrete_.nodes.empty()) {
        throw std::invalid_argument("Trajectory: empty discrete trajectory");
    }
    for (std::size_t n = 1; n < discrete_.nodes.size(); ++n) {
        if (!(discrete_.nodes[n].t > discrete_.nodes[n - 1].t)) {
            throw std::invalid_argument("Trajectory: node times must be strictly increasing");
        }
    }
    jumps_ = detect_jumps(discrete_, cfg);
}

std::size_t Trajectory::index_at(double t) const {
    const auto& nodes = discrete_.nodes;
    const double slack = 1e-12 * std::max(1.0, std::abs(horizon()));
    if (t <= nodes.front().t + slack) {
        return 0;
    }
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), t - slack,
                                     [](const TrajectoryNode& node, double v) { return node.t < v; });
    if (it == nodes.end()) {
        return nodes.size() - 1;
    }
    return static_cast<std::size_t>(it - nodes.begin());
}

Trajectory interpolate(const DiscreteTrajectory& discrete, const JumpDetectionConfig& cfg) {
    return Trajectory(discrete, cfg);
}

} // namespace vesolve
