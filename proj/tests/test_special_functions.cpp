#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "specbound/errors.hpp"
#include "specbound/numerics/quadrature.hpp"
#include "specbound/oracles/explicit_sums.hpp"
#include "specbound/special_functions.hpp"

using namespace specbound;

namespace {

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

}  // namespace

TEST(Jacobi, DegreeZeroIsOne) {
    EXPECT_EQ(jacobi_eval({0, 1.7, -0.3, 0.42}), 1.0);
    EXPECT_EQ(jacobi_eval({0, -2.5, 4.0, -7.0}), 1.0);
}

TEST(Jacobi, LegendreReduction) {
    // alpha = beta = 0 is Legendre: P3(z) = (5z^3 - 3z)/2
    EXPECT_NEAR(jacobi_eval({3, 0.0, 0.0, 0.5}), -0.4375, 1e-15);
}

TEST(Jacobi, MatchesSumOracleAtFractionalParameters) {
    const JacobiQuery q{5, 2.5, -0.5, 0.3};
    EXPECT_NEAR(jacobi_eval(q), oracles::jacobi_sum_oracle(q), 1e-10);
}

TEST(Jacobi, FirstDegreeSeed) {
    const double a = 0.7, b = 1.3, z = -0.4;
    EXPECT_NEAR(jacobi_eval({1, a, b, z}), (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0, 1e-15);
}

TEST(Jacobi, DegreeGuard) {
    EXPECT_THROW(jacobi_eval({1001, 0.0, 0.0, 0.1}), DegreeOverflow);
    EXPECT_THROW(jacobi_eval({-1, 0.0, 0.0, 0.1}), DegreeOverflow);
    EXPECT_NO_THROW(jacobi_eval({1000, 0.0, 0.0, 0.1}));
}

TEST(Jacobi, NegativeParameterCancellationIsFinite) {
    // alpha + beta = -2 makes the leading recurrence coefficient vanish.
    const JacobiQuery q{4, -0.5, -1.5, 0.2};
    EXPECT_NEAR(jacobi_eval(q), oracles::jacobi_sum_oracle(q), 1e-10);
}

TEST(JacobiSumOracle, Examples) {
    EXPECT_EQ(oracles::jacobi_sum_oracle({0, 0.3, 0.4, 0.9}), 1.0);
    EXPECT_NEAR(oracles::jacobi_sum_oracle({1, 1.0, 1.0, 1.0}), 2.0, 1e-15);
    const JacobiQuery q{4, 0.5, 1.5, -0.2};
    EXPECT_NEAR(oracles::jacobi_sum_oracle(q), jacobi_eval(q), 1e-10);
    EXPECT_THROW(oracles::jacobi_sum_oracle({21, 0.0, 0.0, 0.0}), DegreeOverflow);
}

TEST(Jacobi, RecurrenceAgreesWithSumOnRandomQueries) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> deg(0, 15);
    std::uniform_real_distribution<double> par(-0.9, 3.0);
    std::uniform_real_distribution<double> arg(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const JacobiQuery q{deg(rng), par(rng), par(rng), arg(rng)};
        EXPECT_LT(std::abs(jacobi_eval(q) - oracles::jacobi_sum_oracle(q)), 1e-10)
            << "n=" << q.n << " alpha=" << q.alpha << " beta=" << q.beta << " z=" << q.z;
    }
}

TEST(Jacobi, ParitySymmetry) {
    for (double a : {-0.5, 0.0, 1.25, 2.0}) {
        for (int n = 0; n <= 15; ++n) {
            for (double z : {0.1, 0.37, 0.8, 1.0}) {
                const double sign = n % 2 == 0 ? 1.0 : -1.0;
                EXPECT_NEAR(jacobi_eval({n, a, a, -z}), sign * jacobi_eval({n, a, a, z}), 1e-12);
            }
        }
    }
}

TEST(Jacobi, ZerosInsideOrthogonalityInterval) {
    std::vector<double> s(10000);
    for (double a : {-0.5, 0.0, 1.5}) {
        for (double b : {-0.7, 0.5, 2.0}) {
            for (int n = 0; n <= 12; ++n) {
                for (std::size_t i = 0; i < s.size(); ++i) {
                    const double z = -1.0 + 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(s.size());
                    s[i] = jacobi_eval({n, a, b, z});
                }
                EXPECT_EQ(numerics::count_nodes(s, 0.0), n) << "alpha=" << a << " beta=" << b;
            }
        }
    }
}

TEST(Jacobi, OdeResidualSmall) {
    EXPECT_EQ(ode_residual_check(JacobiQuery{0, 0.4, 0.9, 0.3}), 0.0);
    EXPECT_LT(ode_residual_check(JacobiQuery{2, 1.0, 1.0, 0.3}), 1e-4);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> par(-0.9, 3.0);
    std::uniform_real_distribution<double> arg(-0.95, 0.95);
    for (int n = 0; n <= 10; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const JacobiQuery q{n, par(rng), par(rng), arg(rng)};
            EXPECT_LT(ode_residual_check(q), 1e-4 * std::max(1.0, std::abs(jacobi_eval(q))));
        }
    }
}

TEST(Jacobi, PlusSignOperatorIsNotAnnihilated) {
    // The (alpha+beta+2)z term enters with a minus sign.
    const JacobiQuery q{3, 0.5, 1.0, 0.4};
    EXPECT_LT(ode_residual_check(q, JacobiDerivativeSign::minus), 1e-4);
    EXPECT_GT(ode_residual_check(q, JacobiDerivativeSign::plus), 1e-1);
}

TEST(Laguerre, Examples) {
    EXPECT_EQ(laguerre_eval({0, 3.3, 12.0}), 1.0);
    EXPECT_NEAR(laguerre_eval({1, 2.0, 0.5}), 2.5, 1e-15);
    EXPECT_NEAR(laguerre_eval({3, 2.0, 0.0}), 10.0, 1e-13);
    EXPECT_THROW(laguerre_eval({1001, 0.0, 0.0}), DegreeOverflow);
}

TEST(Laguerre, RecurrenceAgreesWithSumOnRandomQueries) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> deg(0, 15);
    std::uniform_real_distribution<double> kd(-0.9, 10.0);
    std::uniform_real_distribution<double> zd(0.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const LaguerreQuery q{deg(rng), kd(rng), zd(rng)};
        EXPECT_LT(std::abs(laguerre_eval(q) - oracles::laguerre_sum_oracle(q)), 1e-10)
            << "n=" << q.n << " k=" << q.k << " z=" << q.z;
    }
}

TEST(Laguerre, ValueAtOriginIsBinomial) {
    for (int k = 0; k <= 10; ++k) {
        for (int n = 0; n <= 15; ++n) {
            const double expected = binomial(n + k, n);
            EXPECT_NEAR(laguerre_eval({n, static_cast<double>(k), 0.0}), expected, 1e-10 * std::max(1.0, expected));
        }
    }
}

TEST(Laguerre, ZerosOnPositiveAxis) {
    std::vector<double> s(10000);
    for (double k : {-0.5, 0.0, 2.0, 5.5}) {
        for (int n = 0; n <= 12; ++n) {
            // every zero lies below 4n + 2k + 2
            const double top = 4.0 * n + 2.0 * k + 4.0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                s[i] = laguerre_eval({n, k, top * (static_cast<double>(i) + 0.5) / static_cast<double>(s.size())});
            }
            EXPECT_EQ(numerics::count_nodes(s, 0.0), n) << "k=" << k;
        }
    }
}

TEST(Laguerre, OdeResidualSmall) {
    EXPECT_EQ(ode_residual_check(LaguerreQuery{0, 1.5, 2.0}), 0.0);
    EXPECT_LT(ode_residual_check(LaguerreQuery{2, 3.0, 1.7}), 1e-4);
    for (int n = 0; n <= 10; ++n) {
        for (double z : {0.3, 1.0, 4.5}) {
            const LaguerreQuery q{n, 1.5, z};
            EXPECT_LT(ode_residual_check(q), 1e-4 * std::max(1.0, std::abs(laguerre_eval(q))));
        }
    }
}

TEST(LaguerreSumOracle, GeneralizedBinomial) {
    EXPECT_NEAR(static_cast<double>(oracles::generalized_binomial(5.0L, 2)), 10.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(oracles::generalized_binomial(0.5L, 2)), -0.125, 1e-15);
    EXPECT_EQ(static_cast<double>(oracles::generalized_binomial(3.7L, 0)), 1.0);
}
