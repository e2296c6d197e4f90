#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "vesolve/models.hpp"

using namespace vesolve;
using namespace vesolve::test;

TEST(Toy1d, TiltedConvexEnergy) {
    Toy1dSpec s;
    s.l1 = 2.0;
    const RisProblem p = make_toy1d(s);
    EXPECT_DOUBLE_EQ(eval_energy(p, 0.5, {}, Vec{1.0}).value(), -0.5);
    EXPECT_DOUBLE_EQ(eval_power(p, 0.5, State{{}, {3.0}}), -6.0);
}

TEST(Toy1d, DoubleWellSymmetry) {
    Toy1dSpec s;
    s.well = WellKind::doublewell;
    const RisProblem p = make_toy1d(s);
    EXPECT_EQ(eval_energy(p, 0.0, {}, Vec{1.0}).value(), eval_energy(p, 0.0, {}, Vec{-1.0}).value());
    EXPECT_NEAR(doublewell_max_slope(s), 8.0 / (3.0 * std::sqrt(3.0)), 1e-15);
}

TEST(Toy1d, OutsideBoxIsInfinite) {
    const RisProblem p = make_toy1d({});
    EXPECT_TRUE(eval_energy(p, 0.0, {}, Vec{4.5}).is_infinite());
}

TEST(Toy1d, ValidationRejectsNonPositiveCurvature) {
    Toy1dSpec s;
    s.a = 0.0;
    EXPECT_FALSE(validate(s).empty());
    EXPECT_THROW((void)make_toy1d(s), std::invalid_argument);
}

TEST(Damage1d, SingleIntactCell) {
    Damage1dSpec s;
    s.cells = 1;
    s.wd1 = 1.0;
    s.stiffness = {3.0};
    const RisProblem p = make_damage1d(s);
    for (double t : {0.2, 0.7}) {
        EXPECT_NEAR(reduced_energy(p, t, Vec{1.0}).value(), 0.5 * 3.0 * t * t, 1e-14);
        EXPECT_NEAR(reduced_energy(p, t, Vec{0.0}).value(), 0.5 * s.eta * 3.0 * t * t, 1e-14);
    }
}

TEST(Damage1d, UniformBarIsSwapSymmetric) {
    const RisProblem p = make_damage1d({});
    for (double t : {0.1, 0.5, 0.9}) {
        EXPECT_NEAR(reduced_energy(p, t, Vec{0.3, 0.8}).value(),
                    reduced_energy(p, t, Vec{0.8, 0.3}).value(), 1e-14);
    }
}

TEST(Damage1d, GradientTermPenalisesContrast) {
    Damage1dSpec s;
    s.wd1 = 0.0;
    const RisProblem p = make_damage1d(s);
    // r = 2, h = 1/2: weight |dz|^2 / (2 h) times gradient_weight.
    EXPECT_NEAR(reduced_energy(p, 0.0, Vec{1.0, 0.5}).value(), 0.1 * 0.25 / 1.0, 1e-14);
}

TEST(Plasticity0d, EnergyDissipationStress) {
    const RisProblem p = make_plasticity0d({});
    EXPECT_DOUBLE_EQ(eval_energy(p, 2.0, {}, Vec{0.0}).value(), 2.0);
    EXPECT_DOUBLE_EQ(eval_dissipation(p, Vec{0.0}, Vec{1.0}).value(), 1.0);
    EXPECT_DOUBLE_EQ(plasticity_stress({}, 2.0, 0.5), 1.5);
}

TEST(Delamination0d, BrittleBondedIsSeriesSpring) {
    Delamination0dSpec s;
    s.k_minus = 2.0;
    s.k_plus = 3.0;
    const RisProblem p = make_delamination0d(s, true);
    const double t = 0.1;
    const double w = s.l0 + s.l1 * t;
    const double series = s.k_minus * s.k_plus / (s.k_minus + s.k_plus);
    EXPECT_NEAR(reduced_energy(p, t, Vec{1.0}).value(), 0.5 * series * w * w - s.a0, 1e-14);
    const MinResult r = reduce_energy(p, t, Vec{1.0});
    EXPECT_NEAR(delamination_opening(r.u), 0.0, 1e-15);
    // An opening is inadmissible while bonded.
    EXPECT_TRUE(eval_energy(p, t, Vec{0.0, 0.1}, Vec{0.5}).is_infinite());
}

TEST(Delamination0d, FullyDebondedCasesAgree) {
    Delamination0dSpec s;
    const RisProblem a = make_delamination0d(s, false);
    const RisProblem b = make_delamination0d(s, true);
    for (double t : {0.0, 0.3, 1.0}) {
        EXPECT_NEAR(reduced_energy(a, t, Vec{0.0}).value(), reduced_energy(b, t, Vec{0.0}).value(),
                    1e-14);
    }
}

TEST(Delamination0d, AdhesiveDominatesBrittleOnConstraintSet) {
    Delamination0dSpec s;
    const RisProblem a = make_delamination0d(s, false);
    const RisProblem b = make_delamination0d(s, true);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double t = U(rng);
        const double z = U(rng) < 0.2 ? 0.0 : U(rng);
        const double u0 = 2 * U(rng) - 1;
        const double jump = z > 0 ? 0.0 : U(rng);
        const Vec u{u0, u0 + jump};
        const ExtReal eb = eval_energy(b, t, u, Vec{z});
        ASSERT_TRUE(eb.is_finite());
        EXPECT_GE(eval_energy(a, t, u, Vec{z}).value(), eb.value() - 1e-15);
        EXPECT_NEAR(eval_energy(a, t, u, Vec{z}).value(), eb.value(), 1e-14);
        // Off the constraint set the adhesive energy is finite, the brittle one is not.
        const Vec open{u0, u0 + 0.5};
        if (z > 0) {
            EXPECT_TRUE(eval_energy(b, t, open, Vec{z}).is_infinite());
            EXPECT_TRUE(eval_energy(a, t, open, Vec{z}).is_finite());
        }
    }
}

TEST(Delamination0d, InterpenetrationIsInadmissible) {
    const RisProblem p = make_delamination0d({}, false);
    EXPECT_TRUE(eval_energy(p, 0.0, Vec{0.5, 0.0}, Vec{0.0}).is_infinite());
}

TEST(MutualRecovery, StaysBelowBothArguments) {
    const Vec r = mutual_recovery(Vec{0.5, 0.9, 0.2}, Vec{0.8, 0.3, 0.25}, 0.1);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0], 0.5);
    EXPECT_NEAR(r[1], 0.2, 1e-15);
    EXPECT_NEAR(r[2], 0.15, 1e-15);
    EXPECT_THROW((void)mutual_recovery(Vec{0.5}, Vec{0.5, 0.5}, 0.0), std::invalid_argument);
}
