#include <gtest/gtest.h>

#include "support.hpp"
#include "vesolve/stability.hpp"

using namespace vesolve;
using namespace vesolve::test;

namespace {

// max over z' of I(z) - I(z') - |z' - z| - mu/2 (z' - z)^2, by scanning.
double scanned_residual(double z, double mu) {
    const auto [x, v] = scan_min(
        [&](double y) { return 0.5 * y * y + std::abs(y - z) + 0.5 * mu * (y - z) * (y - z); },
        -4.0, 4.0, 80001);
    (void)x;
    return std::max(0.0, 0.5 * z * z - v);
}

} // namespace

TEST(ResidualStability, StablePoint) {
    const StabilityReport r = residual_stability(half_square(), 0.0, Vec{0.5});
    EXPECT_NEAR(r.residual, 0.0, 1e-12);
    EXPECT_NEAR(r.residual, scanned_residual(0.5, 0.0), 1e-8);
    EXPECT_EQ(r.witness, (Vec{0.5}));
}

TEST(ResidualStability, UnstablePointPlainDissipation) {
    const StabilityReport r = residual_stability(half_square(), 0.0, Vec{2.0});
    EXPECT_NEAR(r.residual, 0.5, 1e-9);
    EXPECT_NEAR(r.witness[0], 1.0, 1e-6);
    EXPECT_NEAR(r.residual, scanned_residual(2.0, 0.0), 1e-8);
}

TEST(ResidualStability, UnstablePointQuadraticCorrection) {
    const StabilityReport r =
        residual_stability(half_square(CorrectionSpec::quadratic_mu(1.0)), 0.0, Vec{2.0});
    EXPECT_NEAR(r.residual, 0.25, 1e-9);
    EXPECT_NEAR(r.witness[0], 1.5, 1e-6);
    EXPECT_NEAR(r.residual, scanned_residual(2.0, 1.0), 1e-8);
}

TEST(ResidualStability, NonnegativeOnAllModels) {
    std::mt19937_64 rng(5);
    for (const auto& [name, p] : all_models()) {
        for (int i = 0; i < 10; ++i) {
            const Vec z = sample_z(p, rng);
            if (reduced_energy(p, 0.3, z).is_infinite()) {
                continue;
            }
            EXPECT_GE(residual_stability(p, 0.3, z).residual, 0.0) << name;
        }
    }
}

TEST(ResidualStability, InfiniteEnergyThrows) {
    const RisProblem p = make_damage1d({});
    EXPECT_THROW((void)residual_stability(p, 0.0, Vec{1.5, 1.0}), std::domain_error);
}

TEST(MinimalSet, SoftThresholdImages) {
    const RisProblem p = half_square();
    const auto m = minimal_set(p, 0.0, Vec{2.0});
    ASSERT_EQ(m.size(), 1u);
    EXPECT_NEAR(m[0][0], 1.0, 1e-6);
    const auto n = minimal_set(p, 0.0, Vec{-2.0});
    ASSERT_EQ(n.size(), 1u);
    EXPECT_NEAR(n[0][0], -1.0, 1e-6);
}

TEST(MinimalSet, StablePointIsFixed) {
    const auto m = minimal_set(half_square(), 0.0, Vec{0.5});
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0], (Vec{0.5}));
}

TEST(MinimalSet, TwoWellsBothMinimal) {
    const auto m = minimal_set(isolated_wells(), 0.0, Vec{0.0});
    ASSERT_EQ(m.size(), 2u);
    EXPECT_NEAR(m[0][0] + m[1][0], 1.0, 1e-6);
}

TEST(QStability, Thresholds) {
    const RisProblem p = half_square();
    EXPECT_TRUE(is_Q_stable(p, 0.0, State{{}, {0.5}}, 0.0));
    EXPECT_FALSE(is_Q_stable(p, 0.0, State{{}, {2.0}}, 0.4));
    EXPECT_TRUE(is_Q_stable(p, 0.0, State{{}, {2.0}}, 0.6));
    EXPECT_TRUE(is_Q_stable(p, 0.0, State{{}, {3.5}}, 1e6));
}

TEST(CorrectionRatio, QuadraticMu) {
    const RatioReport r =
        correction_ratio_check(half_square(CorrectionSpec::quadratic_mu(1.0)), Vec{0.0}, Vec{1.0},
                               {1.0, 0.1, 0.01});
    ASSERT_EQ(r.entries.size(), 3u);
    EXPECT_NEAR(r.entries[0].ratio, 0.5, 1e-12);
    EXPECT_NEAR(r.entries[1].ratio, 0.05, 1e-12);
    EXPECT_NEAR(r.entries[2].ratio, 0.005, 1e-12);
    EXPECT_TRUE(r.pass);
}

TEST(CorrectionRatio, PowerOfDissipation) {
    const RatioReport r = correction_ratio_check(
        half_square(CorrectionSpec::trivial_h(HCurve::power(1.0, 2.0))), Vec{0.0}, Vec{1.0},
        {1.0, 0.1, 0.01});
    EXPECT_NEAR(r.entries[0].ratio, 1.0, 1e-12);
    EXPECT_NEAR(r.entries[1].ratio, 0.1, 1e-12);
    EXPECT_NEAR(r.entries[2].ratio, 0.01, 1e-12);
    EXPECT_TRUE(r.pass);
}

TEST(CorrectionRatio, LinearHFails) {
    const RatioReport r = correction_ratio_check(
        half_square(CorrectionSpec::trivial_h(HCurve::power(1.0, 1.0))), Vec{0.0}, Vec{1.0},
        {1.0, 0.1, 0.01});
    for (const auto& e : r.entries) {
        EXPECT_NEAR(e.ratio, 1.0, 1e-12);
    }
    EXPECT_FALSE(r.pass);
}

TEST(CorrectionRatio, ForbiddenDirectionsAreSkipped) {
    Damage1dSpec s;
    s.correction = CorrectionSpec::trivial_h(HCurve::power(1.0, 2.0));
    const RatioReport r = correction_ratio_check(make_damage1d(s), Vec{0.5, 0.5},
                                                 Vec{1.0, 0.0}, {0.1, 0.01});
    for (const auto& e : r.entries) {
        EXPECT_TRUE(e.skipped);
    }
    EXPECT_FALSE(r.pass);
}

TEST(ExponentCheck, ThreeTwoTwo) {
    const ExponentReport e = exponent_check(3, 2.0, 2.0, 3.0);
    EXPECT_NEAR(e.theta, 0.6, 1e-12);
    EXPECT_NEAR((1.0 - e.theta) * e.q, 0.8, 1e-12);
    EXPECT_FALSE(e.interpolation_strong);
    EXPECT_NEAR(e.gamma_threshold, 2.5, 1e-12);
    EXPECT_NEAR(e.below_threshold, 1.2, 1e-12);
    EXPECT_TRUE(e.compat_below);
    EXPECT_TRUE(e.compatible_exps);
    EXPECT_FALSE(exponent_check(3, 2.0, 2.0, 2.5).compatible_exps);
    EXPECT_FALSE(exponent_check(3, 2.0, 2.0, 2.4).compatible_exps);
    EXPECT_TRUE(exponent_check(3, 2.0, 2.0, 2.5000001).compatible_exps);
}

TEST(ExponentCheck, CompatibilityBelowVerdicts) {
    // Threshold q d / (q + d).
    EXPECT_FALSE(exponent_check(3, 1.2, 2.0, 3.0).compat_below);
    EXPECT_TRUE(exponent_check(3, 1.21, 2.0, 3.0).compat_below);
    EXPECT_NEAR(exponent_check(2, 1.5, 4.0, 3.0).below_threshold, 4.0 / 3.0, 1e-12);
    EXPECT_NEAR(exponent_check(1, 1.5, 3.0, 3.0).below_threshold, 0.75, 1e-12);
}

TEST(ExponentCheck, GradientExponentAboveDimension) {
    const ExponentReport e = exponent_check(3, 4.0, 2.0, 2.0);
    EXPECT_TRUE(e.r_greater_d);
    EXPECT_TRUE(e.sufficient);
    EXPECT_NEAR(e.theta, 6.0 / 13.0, 1e-12);
}

TEST(ExponentCheck, RejectsInvalidInput) {
    EXPECT_THROW((void)exponent_check(4, 2.0, 2.0, 2.0), std::invalid_argument);
    EXPECT_THROW((void)exponent_check(3, 1.0, 2.0, 2.0), std::invalid_argument);
    EXPECT_THROW((void)exponent_check(3, 2.0, 2.0, 0.5), std::invalid_argument);
    EXPECT_FALSE(describe(exponent_check(3, 2.0, 2.0, 3.0)).empty());
}
