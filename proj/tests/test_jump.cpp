#include <gtest/gtest.h>

#include "support.hpp"
#include "vesolve/jump.hpp"
#include "vesolve/scheme.hpp"
#include "vesolve/stability.hpp"

using namespace vesolve;
using namespace vesolve::test;

TEST(TransitionCost, OnePointChainIsFree) {
    const RisProblem p = half_square();
    const JumpChain c = make_chain(p, 0.0, {Vec{0.3}}, {});
    EXPECT_EQ(transition_cost(p, 0.0, c), 0.0);
}

TEST(TransitionCost, TwoPointChainFromStablePoint) {
    const RisProblem p = half_square(CorrectionSpec::quadratic_mu(1.0));
    const JumpChain c = make_chain(p, 0.0, {Vec{0.5}, Vec{-0.5}}, {});
    EXPECT_NEAR(transition_cost(p, 0.0, c), 1.0 + 0.5, 1e-12);
}

TEST(TransitionCost, StableMidpointAddsNoResidual) {
    const RisProblem p = half_square(CorrectionSpec::quadratic_mu(1.0));
    const JumpChain c = make_chain(p, 0.0, {Vec{0.8}, Vec{0.0}, Vec{-0.8}}, {});
    EXPECT_NEAR(transition_cost(p, 0.0, c), 0.8 + 0.8 + 0.32 + 0.32, 1e-12);
}

TEST(TransitionCost, UnstableStartCountsItsResidual) {
    const RisProblem p = half_square();
    const JumpChain c = make_chain(p, 0.0, {Vec{2.0}, Vec{1.0}}, {});
    EXPECT_NEAR(transition_cost(p, 0.0, c), 1.0 + 0.5, 1e-9);
}

TEST(TransitionCost, TamperedChainIsRejected) {
    const RisProblem p = half_square();
    JumpChain c = make_chain(p, 0.0, {Vec{0.5}, Vec{-0.5}}, {});
    c.link_diss[0] = 0.1;
    EXPECT_THROW((void)transition_cost(p, 0.0, c), std::invalid_argument);
}

TEST(ViscousChain, StableStart) {
    const JumpChain c = viscous_chain(half_square(), 0.0, Vec{0.5});
    EXPECT_EQ(c.points.size(), 1u);
    EXPECT_TRUE(c.converged);
}

// With I = z^2/2, d = |.| and no correction, the minimal set of z > 1 is
// {1}: the first step already lands on a stable point.
TEST(ViscousChain, PlainDissipationReachesStablePointInOneStep) {
    const JumpChain c = viscous_chain(half_square(), 0.0, Vec{3.0});
    ASSERT_EQ(c.points.size(), 2u);
    EXPECT_NEAR(c.points[1][0], 1.0, 1e-6);
    EXPECT_NEAR(residual_stability(half_square(), 0.0, c.points[1]).residual, 0.0, 1e-9);
}

// With the quadratic correction (mu = 1) each step solves 2z' - z - 1 = 0
// on z' > 1, so z' = (z + 1)/2 and the chain creeps towards 1.
TEST(ViscousChain, QuadraticCorrectionHalvesTheDistanceToOne) {
    const RisProblem p = half_square(CorrectionSpec::quadratic_mu(1.0));
    const JumpChain c = viscous_chain(p, 0.0, Vec{3.0}, 8);
    ASSERT_EQ(c.points.size(), 9u);
    double z = 3.0;
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        const auto [x, v] = scan_min(
            [&](double y) { return 0.5 * y * y + std::abs(y - z) + 0.5 * (y - z) * (y - z); },
            -4.0, 4.0, 80001);
        (void)v;
        EXPECT_NEAR(c.points[k][0], z, 1e-6) << k;
        if (k + 1 < c.points.size()) {
            EXPECT_NEAR(x, (z + 1.0) / 2.0, 1e-4);
        }
        z = (z + 1.0) / 2.0;
    }
    EXPECT_FALSE(c.converged);
    EXPECT_NEAR(c.point_residual[0], 0.25 * 4.0, 1e-9);
}

TEST(JumpCost, CoincidentEndpoints) {
    const JumpCostResult r = jump_cost(half_square(), 0.0, Vec{0.2}, Vec{0.2});
    EXPECT_EQ(r.bound.lower, 0.0);
    EXPECT_EQ(r.bound.upper, 0.0);
    EXPECT_EQ(r.bound.gap, 0.0);
}

TEST(JumpCost, StableSegmentCostsTheDistance) {
    const RisProblem p = half_square(CorrectionSpec::quadratic_mu(1.0));
    const JumpCostResult r = jump_cost(p, 0.0, Vec{-0.9}, Vec{0.9});
    EXPECT_NEAR(r.bound.lower, 1.8, 1e-12);
    EXPECT_NEAR(r.bound.upper, 1.8, 1e-9);
    EXPECT_NEAR(r.bound.gap, 0.0, 1e-9);
    EXPECT_TRUE(r.bound.grid_supported);
    EXPECT_GE(r.bound.dp_value, r.bound.upper - 1e-12);
    EXPECT_EQ(incremental_cost(p, 0.0, Vec{-0.9}, Vec{0.9}), r.bound.gap);
}

TEST(JumpCost, IsolatedWellsDirectJump) {
    const RisProblem p = isolated_wells();
    ASSERT_NEAR(residual_stability(p, 0.0, Vec{0.0}).residual, 0.0, 1e-12);
    JumpSearchConfig cfg;
    cfg.dp_padding = -1.0;
    const JumpCostResult r = jump_cost(p, 0.0, Vec{0.0}, Vec{1.0}, cfg);
    EXPECT_NEAR(r.bound.lower, 1.0, 1e-12);
    EXPECT_NEAR(r.bound.upper, 1.5, 1e-9);
    // The dynamic-programming oracle finds nothing cheaper than the direct jump.
    EXPECT_GE(r.bound.dp_value, 1.5 - 1e-9);
    EXPECT_NEAR(incremental_cost(p, 0.0, Vec{0.0}, Vec{1.0}, cfg), 0.5, 1e-9);
}

TEST(JumpCost, UpperNeverBelowLower) {
    std::mt19937_64 rng(21);
    const RisProblem p = [] {
        Toy1dSpec s;
        s.well = WellKind::doublewell;
        s.kappa = 0.5;
        s.l1 = 4.0;
        s.correction = CorrectionSpec::quadratic_mu(1.0);
        return make_toy1d(s);
    }();
    JumpSearchConfig cfg;
    cfg.dp_resolution_1d = 401;
    for (int i = 0; i < 5; ++i) {
        const Vec a = sample_z(p, rng);
        const Vec b = sample_z(p, rng);
        const JumpCostResult r = jump_cost(p, 0.3, a, b, cfg);
        EXPECT_GE(r.bound.upper, r.bound.lower);
        EXPECT_NEAR(r.bound.upper, transition_cost(p, 0.3, r.witness), 1e-9);
    }
}

TEST(JumpCost, ForbiddenDirectionIsInfinite) {
    Damage1dSpec s;
    const RisProblem p = make_damage1d(s);
    const JumpCostResult r = jump_cost(p, 0.5, Vec{0.2, 0.2}, Vec{0.5, 0.2});
    EXPECT_TRUE(std::isinf(r.bound.lower));
    EXPECT_TRUE(std::isinf(r.bound.upper));
}

namespace {

Trajectory toy_run(double mu, double tau, Toy1dSpec s) {
    s.correction = CorrectionSpec::quadratic_mu(mu);
    SchemeConfig c;
    c.tau = tau;
    c.initial_z = {s.well == WellKind::doublewell ? -1.0 : 0.0};
    c.correction = s.correction;
    return Trajectory(solve_incremental(make_toy1d(s), c));
}

} // namespace

TEST(AugmentedVariation, ConstantTrajectory) {
    Toy1dSpec s;
    s.l1 = 0.0;
    const Trajectory tr = toy_run(1.0, 0.1, s);
    EXPECT_EQ(augmented_variation(with_correction(make_toy1d(s), CorrectionSpec::quadratic_mu(1.0)),
                                  tr, 0.0, 1.0),
              0.0);
}

TEST(AugmentedVariation, JumpFreeEqualsSumOfDistances) {
    Toy1dSpec s;
    const Trajectory tr = toy_run(1.0, 0.01, s);
    ASSERT_TRUE(tr.jumps().empty());
    double sum = 0.0;
    for (std::size_t n = 1; n < tr.nodes().size(); ++n) {
        sum += std::abs(tr.nodes()[n].state.z[0] - tr.nodes()[n - 1].state.z[0]);
    }
    const RisProblem p = make_toy1d(s);
    EXPECT_NEAR(augmented_variation(p, tr, 0.0, 1.0), sum, 1e-12);
    EXPECT_NEAR(dissipation_variation(tr, 0.0, 1.0), sum, 1e-12);
}

TEST(AugmentedVariation, SlidingJumpAddsNothing) {
    // A single forced large step across a stable segment.
    const RisProblem p = half_square(CorrectionSpec::quadratic_mu(1.0));
    DiscreteTrajectory d;
    d.tau = 0.1;
    const std::vector<double> z{-0.9, -0.9, -0.89, 0.9, 0.9, 0.91};
    for (std::size_t n = 0; n < z.size(); ++n) {
        TrajectoryNode node;
        node.t = 0.1 * static_cast<double>(n);
        node.state.z = {z[n]};
        node.step_dissipation = n ? std::abs(z[n] - z[n - 1]) : 0.0;
        d.nodes.push_back(node);
    }
    const Trajectory tr(d);
    ASSERT_EQ(tr.jumps().size(), 1u);
    EXPECT_NEAR(augmented_variation(p, tr, 0.0, 0.5), dissipation_variation(tr, 0.0, 0.5), 1e-9);
}

TEST(AugmentedVariation, AdditiveOverSubintervals) {
    Toy1dSpec s;
    s.well = WellKind::doublewell;
    s.kappa = 0.5;
    s.l1 = 4.0;
    const Trajectory tr = toy_run(1.0, 0.005, s);
    ASSERT_EQ(tr.jumps().size(), 1u);
    const RisProblem p = with_correction(make_toy1d(s), CorrectionSpec::quadratic_mu(1.0));
    JumpSearchConfig cfg;
    cfg.dp_resolution_1d = 801;
    const double whole = augmented_variation(p, tr, 0.0, 1.0, cfg);
    for (double mid : {0.2, 0.335, 0.34, 0.5}) {
        const double parts =
            augmented_variation(p, tr, 0.0, mid, cfg) + augmented_variation(p, tr, mid, 1.0, cfg);
        EXPECT_NEAR(whole, parts, 1e-12) << mid;
    }
    EXPECT_GT(whole, dissipation_variation(tr, 0.0, 1.0));
}

TEST(AugmentedVariation, IncrementCountMismatchThrows) {
    Toy1dSpec s;
    const Trajectory tr = toy_run(1.0, 0.1, s);
    EXPECT_THROW((void)augmented_variation(tr, 0.0, 1.0, {0.1}), std::invalid_argument);
}
