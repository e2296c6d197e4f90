#include <gtest/gtest.h>

#include "vesolve/trajectory.hpp"

using namespace vesolve;

namespace {

DiscreteTrajectory steps(const std::vector<double>& z, double tau) {
    DiscreteTrajectory d;
    d.tau = tau;
    for (std::size_t n = 0; n < z.size(); ++n) {
        TrajectoryNode node;
        node.t = tau * static_cast<double>(n);
        node.state.z = {z[n]};
        node.step_dissipation = n == 0 ? 0.0 : std::abs(z[n] - z[n - 1]);
        d.nodes.push_back(node);
    }
    return d;
}

} // namespace

TEST(Interpolate, LeftContinuousPiecewiseConstant) {
    const Trajectory tr = interpolate(steps({0.0, 0.1, 0.2, 0.3}, 0.5));
    EXPECT_EQ(tr.z_at(0.0)[0], 0.0);
    EXPECT_EQ(tr.z_at(0.5)[0], 0.1);
    EXPECT_EQ(tr.z_at(0.7)[0], 0.2);
    EXPECT_EQ(tr.z_at(1.0)[0], 0.2);
    EXPECT_EQ(tr.z_at(1.2)[0], 0.3);
    EXPECT_EQ(tr.z_at(1.5)[0], 0.3);
}

TEST(DetectJumps, SingleLargeStep) {
    const Trajectory tr = interpolate(steps({0.0, 0.01, 0.02, 1.0, 1.01, 1.02}, 0.1));
    ASSERT_EQ(tr.jumps().size(), 1u);
    const JumpRecord& j = tr.jumps()[0];
    EXPECT_EQ(j.first_step, 3u);
    EXPECT_EQ(j.last_step, 3u);
    EXPECT_EQ(j.z_left[0], 0.02);
    EXPECT_EQ(j.z_right[0], 1.0);
    EXPECT_NEAR(j.t, 0.3, 1e-15);
}

TEST(DetectJumps, ConsecutiveStepsMerge) {
    const Trajectory tr =
        interpolate(steps({0.0, 0.01, 0.02, 0.5, 1.0, 1.01, 1.02, 1.03}, 0.1));
    ASSERT_EQ(tr.jumps().size(), 1u);
    EXPECT_EQ(tr.jumps()[0].first_step, 3u);
    EXPECT_EQ(tr.jumps()[0].last_step, 4u);
    EXPECT_EQ(tr.jumps()[0].z_inner.size(), 1u);
}

TEST(DetectJumps, SmoothEvolutionHasNone) {
    std::vector<double> z;
    for (int n = 0; n <= 100; ++n) {
        z.push_back(0.01 * n);
    }
    EXPECT_TRUE(interpolate(steps(z, 0.01)).jumps().empty());
    EXPECT_TRUE(interpolate(steps({0.0, 0.0, 0.0}, 0.1)).jumps().empty());
}

TEST(DetectJumps, ExcursionSplitsIntoTwoJumps) {
    const Trajectory tr = interpolate(steps({0.0, 0.01, 0.02, 0.52, 0.03, 0.04, 0.05}, 0.1));
    ASSERT_EQ(tr.jumps().size(), 2u);
    EXPECT_EQ(tr.jumps()[0].last_step, 3u);
    EXPECT_EQ(tr.jumps()[1].first_step, 4u);
}
