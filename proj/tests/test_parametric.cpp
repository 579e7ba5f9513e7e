#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "specbound/errors.hpp"
#include "specbound/parametric.hpp"
#include "specbound/potentials/catalog.hpp"

using namespace specbound;

namespace {

constexpr RootChoice q_plus_p_plus{RootSign::plus, RootSign::plus};
constexpr RootChoice q_plus_p_minus{RootSign::plus, RootSign::minus};

// Woods-Saxon coefficients (hbar = m = 1): c = (1, -2, -1), L1 = 2 V2/a^2,
// L2 = 2 (V1 + V2)/a^2, L3 = eps = -2E/a^2.
ParametricCoefficients woods_saxon_pc(double v1, double v2, double a, double e) {
    const double a2 = a * a;
    return {1.0, -2.0, -1.0, 2.0 * v2 / a2, 2.0 * (v1 + v2) / a2, -2.0 * e / a2};
}

EnergyDependentForm coulomb_form(int l) {
    return to_parametric(Coulomb{1.0}, l, UnitsConfig{}).form;
}

}  // namespace

TEST(Branch, TagFollowsC3) {
    EXPECT_EQ((ParametricCoefficients{2, 0, 0, 1, 1, 1}.branch()), Branch::laguerre);
    EXPECT_EQ((ParametricCoefficients{1, -2, -1, 1, 1, 1}.branch()), Branch::jacobi);
    EXPECT_EQ((ParametricCoefficients{1, 0, 1e-300, 0, 0, 0}.branch()), Branch::jacobi);
}

TEST(JacobiConstants, QRootIsSqrtLambda3WhenC1IsOne) {
    const double eps = 0.8, kappa = 1.3;
    const ParametricCoefficients pc{1.0, -0.5, -0.5, 0.2, 0.4, eps + kappa};
    EXPECT_NEAR(solve_jacobi_constants(pc, q_plus_p_plus).q0, std::sqrt(eps + kappa), 1e-15);
}

TEST(JacobiConstants, ZeroLambda3GivesZeroQ) {
    const ParametricCoefficients pc{1.0, -1.0, -1.0, 0.5, 0.5, 0.0};
    EXPECT_EQ(solve_jacobi_constants(pc, q_plus_p_plus).q0, 0.0);
}

TEST(JacobiConstants, WoodsSaxonRootsAndR2) {
    const double v1 = 5.0, v2 = 10.0, a = 1.0, e = -6.0;
    const auto pc = woods_saxon_pc(v1, v2, a, e);
    const double eps = -2.0 * e / (a * a);
    const double shift = 2.0 * v1 / (a * a);
    const auto jc = solve_jacobi_constants(pc, q_plus_p_plus);
    EXPECT_NEAR(jc.q0, std::sqrt(eps), 1e-14);
    EXPECT_NEAR(jc.p0, std::sqrt(eps - shift), 1e-14);
    const auto jm = solve_jacobi_constants(pc, q_plus_p_minus);
    EXPECT_NEAR(jm.p0, -std::sqrt(eps - shift), 1e-14);

    // r2 from its defining expression, evaluated independently here.
    const double q = jc.q0, p = jc.p0, ratio = pc.c2 / pc.c3, c1 = pc.c1;
    const double l1c = pc.lambda1 / (pc.c3 * pc.c3), l2c = pc.lambda2 / pc.c3;
    const double r2 = 2 * q * (q - 1) - 2 * p * (p + 1) + 2 * c1 * (q - p) + 2 * ratio * p + 2 * l1c + 2 * l2c;
    EXPECT_LT(std::abs(r2), 1e-10);
    EXPECT_NEAR(jc.r2, r2, 1e-12);
}

TEST(JacobiConstants, AlphaBetaDefinitions) {
    const ParametricCoefficients pc{1.0, -2.0, -1.0, 3.0, 7.0, 4.0};
    const auto jc = solve_jacobi_constants(pc, q_plus_p_minus);
    EXPECT_DOUBLE_EQ(jc.alpha, 2.0 * jc.q0 + pc.c1 - 1.0);
    EXPECT_DOUBLE_EQ(jc.beta, -2.0 * jc.p0 - pc.c1 + pc.c2 / pc.c3 - 1.0);
}

TEST(JacobiConstants, Errors) {
    EXPECT_THROW(solve_jacobi_constants({2, 0, 0, 1, 1, 1}, q_plus_p_plus), BranchMismatch);
    // ((1-c1)/2)^2 + L3 < 0
    EXPECT_THROW(solve_jacobi_constants({1, -2, -1, 1, 1, -1}, q_plus_p_plus), NegativeDiscriminant);
}

TEST(JacobiConstants, RootSubstitution) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int checked = 0;
    while (checked < 200) {
        const ParametricCoefficients pc{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
        if (pc.c3 == 0.0) continue;
        for (auto choice : {q_plus_p_plus, q_plus_p_minus, RootChoice{RootSign::minus, RootSign::plus}}) {
            JacobiBranchConstants jc;
            try {
                jc = solve_jacobi_constants(pc, choice);
            } catch (const NegativeDiscriminant&) {
                continue;
            }
            const double q = jc.q0, p = jc.p0;
            EXPECT_LT(std::abs(q * q - (1.0 - pc.c1) * q - pc.lambda3), 1e-12 * std::max(1.0, q * q));
            EXPECT_LT(std::abs(p * p - jc.D * p - jc.H), 1e-12 * std::max(1.0, p * p));
            // both quadratics hold, hence r2 = 0 and r1 = -r3
            const auto rep = consistency_check(jc);
            EXPECT_LT(rep.r2_abs, 1e-10 * std::max(1.0, std::abs(jc.r3)));
            EXPECT_LT(rep.r1_plus_r3_abs, 1e-10 * std::max(1.0, std::abs(jc.r3)));
            ++checked;
        }
    }
}

TEST(LaguerreConstants, Examples) {
    for (int l = 0; l <= 4; ++l) {
        const double ll = l * (l + 1.0);
        EXPECT_NEAR(solve_laguerre_constants({2.0, 0.0, 0.0, 1.0, 1.0, ll}).q10, l, 1e-14);
    }
    const auto zero = solve_laguerre_constants({1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(zero.q10, 0.0);
    EXPECT_EQ(zero.k, 0.0);
    EXPECT_EQ(zero.p10, 0.0);

    const auto lc = solve_laguerre_constants({2.0, 0.0, 0.0, 0.25, 1.0, 0.0});
    EXPECT_NEAR(lc.p10, 0.5, 1e-15);
    EXPECT_NEAR((lc.p10 * lc.p10 - 0.25) / (4.0 * lc.p10 * lc.p10), 0.0, 1e-15);
    EXPECT_LT(std::abs(lc.gamma1), 1e-15);
}

TEST(LaguerreConstants, ThresholdAndBranchErrors) {
    // p10 = 0 at L1 = c2 = 0: the termination condition is undefined at threshold.
    EXPECT_TRUE(std::isnan(solve_laguerre_constants({1.0, 0.0, 0.0, 0.0, 0.0, 0.0}).gamma2));
    EXPECT_THROW(solve_laguerre_constants({2.0, 1.0, 0.0, -1.0, 0.0, 0.0}), NegativeDiscriminant);
    EXPECT_THROW(solve_laguerre_constants({1, -2, -1, 1, 1, 1}), BranchMismatch);
}

TEST(LaguerreConstants, KAndGamma3) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c1d(0.5, 3.0), l3d(0.0, 12.0), l1d(0.1, 5.0);
    for (int i = 0; i < 100; ++i) {
        const ParametricCoefficients pc{c1d(rng), 0.0, 0.0, l1d(rng), 1.0, l3d(rng)};
        const auto lc = solve_laguerre_constants(pc);
        EXPECT_DOUBLE_EQ(lc.k, pc.c1 + 2.0 * lc.q10 - 1.0);
        EXPECT_LT(std::abs(lc.gamma3), 1e-12 * std::max(1.0, pc.lambda3));
        EXPECT_LT(std::abs(lc.p10 * lc.p10 - pc.c2 * lc.p10 - pc.lambda1), 1e-12 * std::max(1.0, lc.p10 * lc.p10));
    }
}

TEST(LaguerreConstants, Gamma1VanishesIdentically) {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> c2d(-3.0, 3.0), extra(0.05, 6.0);
    for (int i = 0; i < 100; ++i) {
        const double c2 = c2d(rng);
        const double l1 = -(c2 / 2.0) * (c2 / 2.0) + extra(rng);
        ParametricCoefficients pc{2.0, c2, 0.0, l1, 1.0, 0.0};
        const auto lc = solve_laguerre_constants(pc);
        EXPECT_LT(std::abs(lc.gamma1), 1e-14) << "c2=" << c2 << " L1=" << l1;
    }
}

TEST(Residual, CoulombValues) {
    const auto form = coulomb_form(0);
    EXPECT_NEAR(quantization_residual(form, 0, -0.5), 0.0, 1e-12);
    EXPECT_NEAR(quantization_residual(form, 0, -0.125), 1.0, 1e-12);
    // gamma2 = L2 / (2 p) - q - 1 with p = sqrt(-2E), q = 0, L2 = 2
    const double e = -0.3;
    EXPECT_NEAR(quantization_residual(form, 2, e), 2.0 / (2.0 * std::sqrt(-2.0 * e)) - 1.0 - 2.0, 1e-12);
}

TEST(Residual, RejectsOutsideWindowAndNegativeN) {
    const auto form = coulomb_form(0);
    EXPECT_THROW(quantization_residual(form, 0, 0.1), OutOfDomain);
    EXPECT_THROW(quantization_residual(form, -1, -0.5), InvalidParameters);
}

TEST(SolveEnergy, CoulombExact) {
    const auto form0 = coulomb_form(0);
    for (int n0 = 1; n0 <= 5; ++n0) {
        const auto e = solve_energy(form0, n0 - 1);
        ASSERT_TRUE(e.has_value());
        EXPECT_NEAR(*e, -1.0 / (2.0 * n0 * n0), 1e-12);
        EXPECT_LT(std::abs(quantization_residual(form0, n0 - 1, *e)), residual_tolerance);
    }
    const auto e1 = solve_energy(coulomb_form(1), 0);
    ASSERT_TRUE(e1.has_value());
    EXPECT_NEAR(*e1, -0.125, 1e-12);
}

TEST(SolveEnergy, MorseExhaustsItsLevels) {
    const auto form = to_parametric(GeneralizedMorse{100.0, 20.0, 1.0}, 0, UnitsConfig{}).form;
    EXPECT_TRUE(solve_energy(form, 0).has_value());
    EXPECT_FALSE(solve_energy(form, 1).has_value());
    EXPECT_FALSE(solve_energy(form, 5).has_value());
}

TEST(SolveEnergy, DegenerateWindow) {
    EnergyDependentForm form = coulomb_form(0);
    form.window.hi = form.window.lo;
    EXPECT_THROW(solve_energy(form, 0), WindowDegenerate);
}

TEST(SolveEnergy, ResidualIsMonotoneInsideFinalBracket) {
    for (const PotentialSpec spec : {PotentialSpec{Coulomb{1.0}}, PotentialSpec{KratzerFues{10.0, 1.0}}}) {
        const auto form = to_parametric(spec, 0, UnitsConfig{}).form;
        const double step = (form.window.hi - form.window.lo) / (energy_scan_points + 1);
        for (int n = 0; n <= 2; ++n) {
            const auto e = solve_energy(form, n);
            ASSERT_TRUE(e.has_value());
            const double cell = std::floor((*e - form.window.lo) / step);
            const double a = form.window.lo + cell * step;
            const double b = std::min(a + step, form.window.hi);
            int sign_changes = 0;
            double prev = 0.0;
            bool increasing = true, decreasing = true;
            for (int i = 0; i <= 200; ++i) {
                const double x = a + (b - a) * i / 200.0;
                if (!(x > form.window.lo && x < form.window.hi)) continue;
                const double r = quantization_residual(form, n, x);
                if (i > 0) {
                    if ((r > 0) != (prev > 0)) ++sign_changes;
                    increasing = increasing && r >= prev;
                    decreasing = decreasing && r <= prev;
                }
                prev = r;
            }
            EXPECT_LE(sign_changes, 1);
            EXPECT_TRUE(increasing || decreasing);
        }
    }
}

TEST(Consistency, TrivialConstants) {
    const auto jc = solve_jacobi_constants({1.0, 0.5, 0.5, 0.0, 0.0, 0.0}, q_plus_p_plus);
    EXPECT_EQ(jc.q0, 0.0);
    EXPECT_EQ(jc.p0, 0.0);
    EXPECT_EQ(jc.r1, 0.0);
    EXPECT_EQ(jc.r2, 0.0);
    EXPECT_EQ(jc.r3, 0.0);
}

TEST(Consistency, SolvedJacobiLevels) {
    const UnitsConfig u;
    for (const PotentialSpec spec : {PotentialSpec{WoodsSaxon{5.0, 10.0, 1.0}},
                                     PotentialSpec{DeformedRosenMorse{4.0, 8.0, 0.5, 1.0}},
                                     PotentialSpec{PoschlTeller{10.0, 1.0, 1.0}}}) {
        const auto form = to_parametric(spec, 0, u).form;
        const auto e = solve_energy(form, 0);
        ASSERT_TRUE(e.has_value());
        const auto rep = consistency_check(solve_jacobi_constants(form.coeff_at(*e), form.roots));
        EXPECT_LT(rep.r2_abs, 1e-10);
        EXPECT_LT(rep.r1_plus_r3_abs, 1e-10);
        EXPECT_TRUE(rep.within());
    }
}

TEST(Consistency, ViolationIsReported) {
    auto jc = solve_jacobi_constants(woods_saxon_pc(5, 10, 1, -5.5), q_plus_p_minus);
    jc.r2 += 1e-6;
    EXPECT_THROW(consistency_check(jc), ConsistencyViolation);
}

TEST(ConsolidatedForm, AgreesWithJacobiResidualForWoodsSaxon) {
    for (double e : {-5.28125, -5.1, -5.6, -6.5, -7.25}) {
        const auto pc = woods_saxon_pc(5.0, 10.0, 1.0, e);
        for (int n = 0; n <= 4; ++n) {
            EXPECT_NEAR(printed_form_residual(pc, n, q_plus_p_minus), quantization_residual(pc, n, q_plus_p_minus),
                        1e-10)
                << "E=" << e << " n=" << n;
        }
    }
}

TEST(ConsolidatedForm, OtherJacobiCasesAreRecorded) {
    const UnitsConfig u;
    for (const PotentialSpec spec : {PotentialSpec{DeformedRosenMorse{4.0, 8.0, 0.5, 1.0}},
                                     PotentialSpec{PoschlTeller{10.0, 1.0, 1.0}}}) {
        const auto form = to_parametric(spec, 0, u).form;
        const double e = 0.5 * (form.window.lo + form.window.hi);
        const auto pc = form.coeff_at(e);
        const double gap = printed_form_residual(pc, 1, form.roots) - quantization_residual(pc, 1, form.roots);
        RecordProperty(std::string(family_name(spec)) + "_consolidated_gap", std::to_string(gap));
        SUCCEED();
    }
}
