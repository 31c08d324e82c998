#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "invgamma/real_inverse.hpp"
#include "oracles.hpp"

namespace ig = invgamma;

namespace {

const double sqrt_pi = std::sqrt(std::numbers::pi);

template <class E, class F>
std::string message_of(F f) {
    try {
        f();
    } catch (const E& e) {
        return e.what();
    }
    return "<no exception>";
}

/// Valid g on branch k: each sign that the branch attains, |g| from just
/// above the extremum to 1e3 times it (1e6 for the unbounded principal branch).
std::vector<double> sample_values(int k, int count, std::mt19937_64& rng) {
    std::vector<std::pair<double, double>> pieces;  // (signed start, log10 span)
    if (k == 0) {
        pieces.push_back({ig::critical_point(0).gamma, 6.0});
    } else {
        pieces.push_back({ig::critical_point(k).gamma, 3.0});
        pieces.push_back({ig::critical_point(k + 1).gamma, 3.0});
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        const auto [start, span] = pieces[i % pieces.size()];
        const double mag = std::abs(start) * (1.0 + 1e-6) * std::pow(10.0, span * u(rng));
        const double g = std::copysign(mag, start);
        try {
            ig::real_gamma_domain(g, k);
        } catch (const ig::Error&) {
            continue;  // the open end at gamma_{k+1}
        }
        out.push_back(g);
    }
    return out;
}

/// Argument range of branch k; callers skip the pole inside it.
std::pair<double, double> argument_range(int k) {
    if (k == 0) return {ig::psi_zero(0), 40.0};
    return {ig::psi_zero(k), ig::psi_zero(k + 1)};
}

}  // namespace

TEST(RealDomain, PrincipalBranch) {
    const ig::RealInterval iv = ig::real_gamma_domain(1.0, 0);
    EXPECT_NEAR(iv.lo, 1.461632, 1e-6);
    EXPECT_TRUE(iv.hi_infinite());
    EXPECT_FALSE(iv.lo_open);
}

TEST(RealDomain, BranchMinusOnePositive) {
    const ig::RealInterval iv = ig::real_gamma_domain(1.0, -1);
    EXPECT_EQ(iv.lo, 0.0);
    EXPECT_NEAR(iv.hi, 1.461632, 1e-6);
    EXPECT_TRUE(iv.lo_open);
    EXPECT_TRUE(iv.hi_open);
}

TEST(RealDomain, BranchMinusTwoAtItsExtremum) {
    // The six-decimal 2.302407 lies just below the true extremum 2.3024072583.
    const double g2 = ig::critical_point(-2).gamma;
    EXPECT_NEAR(g2, 2.302407, 1e-6);
    for (double g : {g2, 2.3025}) {
        const ig::RealInterval iv = ig::real_gamma_domain(g, -2);
        EXPECT_NEAR(iv.lo, -1.573498, 1e-6);
        EXPECT_EQ(iv.hi, -1.0);
        EXPECT_FALSE(iv.lo_open);
        EXPECT_TRUE(iv.hi_open);
    }
    EXPECT_THROW(ig::real_gamma_domain(2.302407, -2), ig::BelowExtremum);
}

TEST(RealDomain, BelowPrincipalExtremum) {
    EXPECT_THROW(ig::real_gamma_domain(0.5, 0), ig::BelowExtremum);
    const std::string msg = message_of<ig::BelowExtremum>([] { ig::real_gamma_domain(0.5, 0); });
    EXPECT_NE(msg.find("g >= gamma_0"), std::string::npos) << msg;
}

TEST(RealDomain, NonexistentBranches) {
    EXPECT_THROW(ig::real_gamma_domain(1.0, 1), ig::NoBranch);
    EXPECT_THROW(ig::real_gamma_domain(0.0, -2), ig::NoBranch);
    EXPECT_THROW(ig::real_gamma_domain(-1.0, 0), ig::NoBranch);
    const std::string msg = message_of<ig::NoBranch>([] { ig::real_gamma_domain(-1.0, 0); });
    EXPECT_NE(msg.find("k = 0 and g < 0"), std::string::npos) << msg;
    EXPECT_THROW(ig::real_gamma_domain(std::numeric_limits<double>::infinity(), 0), ig::DomainError);
}

TEST(RealDomain, NegativeSideBetweenPoles) {
    // g < 0: branch -1 lives on [psi_-1, 0), branch -2 on (-1, psi_-1).
    const ig::RealInterval a = ig::real_gamma_domain(-10.0, -1);
    EXPECT_NEAR(a.lo, ig::psi_zero(-1), 0.0);
    EXPECT_EQ(a.hi, 0.0);
    const ig::RealInterval b = ig::real_gamma_domain(-10.0, -2);
    EXPECT_EQ(b.lo, -1.0);
    EXPECT_EQ(b.hi, ig::psi_zero(-1));
    EXPECT_THROW(ig::real_gamma_domain(-3.0, -2), ig::BelowExtremum);
}

TEST(RealInverse, SpecialValues) {
    EXPECT_NEAR(ig::real_inv_gamma(1.0, 0), 2.0, 1e-12);
    EXPECT_NEAR(ig::real_inv_gamma(1.0, -1), 1.0, 1e-12);
    EXPECT_NEAR(ig::real_inv_gamma(sqrt_pi / 2.0, 0), 1.5, 1e-12);
    EXPECT_NEAR(ig::real_inv_gamma(sqrt_pi, -1), 0.5, 1e-12);
    EXPECT_NEAR(ig::real_inv_gamma(24.0, 0), 5.0, 1e-12);
}

TEST(RealInverse, MatchesTgammaBisection) {
    EXPECT_NEAR(ig::real_inv_gamma(4.0, 0), oracle::tgamma_inverse(4.0, 1.5, 5.0), 1e-12);
    EXPECT_NEAR(ig::real_inv_gamma(-5.0, -1), oracle::tgamma_inverse(-5.0, -0.5040830, -1e-6), 1e-12);
    EXPECT_NEAR(ig::real_inv_gamma(10.0, -3), oracle::tgamma_inverse(10.0, -1.999999, -1.5735), 1e-12);
}

TEST(RealInverse, RoundTripOverValues) {
    std::mt19937_64 rng(7);
    for (int k = 0; k >= -5; --k) {
        for (double g : sample_values(k, 1000, rng)) {
            const double x = ig::real_inv_gamma(g, k);
            EXPECT_LE(std::abs(std::tgamma(x) - g), 1e-10 * std::abs(g)) << "k=" << k << " g=" << g;
            EXPECT_TRUE(ig::real_gamma_domain(g, k).contains(x)) << "k=" << k << " g=" << g;
        }
    }
}

TEST(RealInverse, RoundTripOverArguments) {
    std::mt19937_64 rng(11);
    for (int k = 0; k >= -5; --k) {
        const auto [lo, hi] = argument_range(k);
        std::uniform_real_distribution<double> u(lo, hi);
        int checked = 0;
        while (checked < 1000) {
            const double x = u(rng);
            if (std::abs(x - ig::psi_zero(k)) < 1e-3 || (k < 0 && std::abs(x - ig::psi_zero(k + 1)) < 1e-3)) continue;
            if (std::abs(x - std::round(x)) < 1e-3 && x <= 0.0) continue;
            const int branch = ig::branch_containing(x);
            EXPECT_EQ(branch, k) << x;
            EXPECT_NEAR(ig::real_inv_gamma(ig::gamma(x), branch), x, 1e-9) << x;
            ++checked;
        }
    }
}

TEST(RealInverse, MonotoneOnEachPiece) {
    std::vector<double> g;
    for (double t = 0.0; t < 6.0; t += 0.01) g.push_back(ig::critical_point(0).gamma * (1.0 + 1e-6) * std::pow(10.0, t));
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(ig::real_inv_gamma(g[i - 1], 0), ig::real_inv_gamma(g[i], 0));

    for (int k = -1; k >= -5; --k) {
        for (double gc : {ig::critical_point(k).gamma, ig::critical_point(k + 1).gamma}) {
            double prev = std::numeric_limits<double>::quiet_NaN();
            int direction = 0;
            for (double t = 0.01; t < 3.0; t += 0.01) {
                const double value = gc * std::pow(10.0, t);
                double x;
                try {
                    x = ig::real_inv_gamma(value, k);
                } catch (const ig::Error&) {
                    continue;
                }
                if (!std::isnan(prev)) {
                    const int d = x > prev ? 1 : -1;
                    if (direction == 0) direction = d;
                    EXPECT_EQ(d, direction) << "k=" << k << " g=" << value;
                }
                prev = x;
            }
        }
    }
}

TEST(RealInverse, BranchesMeetAtPrincipalExtremum) {
    const double g = ig::critical_point(0).gamma + 1e-6;
    const double a = ig::real_inv_gamma(g, 0);
    const double b = ig::real_inv_gamma(g, -1);
    EXPECT_GT(a, ig::psi_zero(0));
    EXPECT_LT(b, ig::psi_zero(0));
    EXPECT_NEAR(a, ig::psi_zero(0), 1e-2);
    EXPECT_NEAR(b, ig::psi_zero(0), 1e-2);
}

TEST(RealInverse, ReducedAccuracyFlag) {
    const double g = ig::critical_point(0).gamma * (1.0 + 1e-10);
    const ig::RealInverse r = ig::solve_real_inverse(g, 0);
    EXPECT_TRUE(r.reduced_accuracy);
    EXPECT_NEAR(r.x, ig::psi_zero(0), 1e-4);
    EXPECT_FALSE(ig::solve_real_inverse(24.0, 0).reduced_accuracy);
}

TEST(RealInverse, NearPoles) {
    EXPECT_NEAR(ig::real_inv_gamma(1e6, -3), -2.0 + 0.5e-6, 1e-12);
    const double x = ig::real_inv_gamma(-1e12, -1);
    EXPECT_LT(x, 0.0);
    EXPECT_NEAR(x, -1e-12, 1e-18);
}

TEST(RealInverse, LargeArgument) {
    const double x = ig::real_inv_gamma(1e300, 0);
    EXPECT_NEAR(ig::log_abs_gamma(x), std::log(1e300), 1e-11 * std::log(1e300));
}

TEST(RealInverse, ConfigValidation) {
    EXPECT_THROW(ig::real_inv_gamma(2.0, 0, {1e-12, 1e-11, 5}), ig::DomainError);
    EXPECT_THROW(ig::real_inv_gamma(2.0, 0, {0.0, 1e-11, 200}), ig::DomainError);
}

TEST(StirlingApprox, KnownValues) {
    const double a24 = ig::stirling_inverse_approx(24.0);
    EXPECT_GE(a24, 4.98);
    EXPECT_LE(a24, 5.00);
    EXPECT_NEAR(ig::stirling_inverse_approx(4.0), 3.653, 5e-4);
}

TEST(StirlingApprox, ThresholdGivesThreeHalves) {
    const double threshold = std::sqrt(2.0 * std::numbers::pi) / std::numbers::e;
    EXPECT_NEAR(ig::stirling_inverse_approx(threshold), 1.5, 1e-7);
    EXPECT_THROW(ig::stirling_inverse_approx(0.9), ig::DomainError);
    EXPECT_THROW(ig::stirling_inverse_approx(-1.0), ig::DomainError);
}

TEST(StirlingApprox, UnderestimatesWithShrinkingGap) {
    double prev = 1.0;
    for (double t = std::log10(4.0); t <= 6.0; t += 0.01) {
        const double x = std::pow(10.0, t);
        const double gap = ig::real_inv_gamma(x, 0) - ig::stirling_inverse_approx(x);
        EXPECT_GT(gap, 0.0) << x;
        EXPECT_LT(gap, prev) << x;
        prev = gap;
    }
    EXPECT_LT(ig::real_inv_gamma(4.0, 0) - ig::stirling_inverse_approx(4.0), 0.0114);
    EXPECT_LT(ig::real_inv_gamma(24.0, 0) - ig::stirling_inverse_approx(24.0), 0.0062);
}

TEST(BranchContaining, Examples) {
    EXPECT_EQ(ig::branch_containing(2.0), 0);
    EXPECT_EQ(ig::branch_containing(0.5), -1);
    EXPECT_EQ(ig::branch_containing(-1.2), -2);
    EXPECT_EQ(ig::branch_containing(ig::psi_zero(0)), 0);
    EXPECT_EQ(ig::branch_containing(-0.504), -1);
    EXPECT_EQ(ig::branch_containing(-0.6), -2);
}

TEST(BranchContaining, PolesRaise) {
    EXPECT_THROW(ig::branch_containing(0.0), ig::PolePoint);
    EXPECT_THROW(ig::branch_containing(-4.0), ig::PolePoint);
}
