#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steklov/analytic_shell.hpp"

using namespace steklov;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(ShellSigma1, ClosedFormValues) {
    EXPECT_NEAR(shell_sigma1({2, 1.0, std::numbers::e}), 1.0 / std::numbers::e, 1e-15);
    EXPECT_NEAR(shell_sigma1({2, 1.0, std::numbers::e}), 0.36787944, 1e-8);
    EXPECT_NEAR(shell_sigma1({3, 1.0, 2.0}), 0.5, 1e-15);
    EXPECT_NEAR(shell_sigma1({2, 1.0, 2.0}), 1.0 / (2.0 * std::log(2.0)), 1e-15);
}

TEST(ShellSigma1, RejectsInvalidSpecs) {
    EXPECT_THROW(shell_sigma1({2, 2.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(shell_sigma1({2, 1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(shell_sigma1({1, 1.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(shell_sigma1({3, 0.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(shell_sigma1({3, -1.0, 2.0}), std::invalid_argument);
}

TEST(ShellSigma1, VanishingInnerRadius) {
    // n = 2 decays only like 1/log(1/R1): 1/(50 log 10) at R1 = 1e-50.
    EXPECT_NEAR(shell_sigma1({2, 1e-50, 1.0}), 1.0 / (50.0 * std::log(10.0)), 1e-15);
    double prev = shell_sigma1({2, 1e-2, 1.0});
    for (double r1 : {1e-5, 1e-10, 1e-50, 1e-100, 1e-300}) {
        const double s = shell_sigma1({2, r1, 1.0});
        EXPECT_LT(s, prev);
        prev = s;
    }
    EXPECT_LT(prev, 2e-3);
    EXPECT_LT(shell_sigma1({3, 1e-50, 1.0}), 1e-3);
    EXPECT_LT(shell_sigma1({5, 1e-5, 1.0}), 1e-3);
}

TEST(ShellSigma1, MatchesRadialQuadratureRayleighQuotient) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> r1d(0.1, 3.0), ratio(1.05, 6.0);
    std::uniform_int_distribution<int> nd(2, 6);
    for (int i = 0; i < 40; ++i) {
        const int n = nd(rng);
        const double R1 = r1d(rng);
        const double R2 = R1 * ratio(rng);
        EXPECT_LT(rel(shell_sigma1({n, R1, R2}), oracle::shell_rayleigh_quadrature(n, R1, R2)), 1e-10)
            << "n=" << n << " R1=" << R1 << " R2=" << R2;
    }
}

TEST(ShellSigma1, IncreasingInInnerRadius) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 4;
        const double R2 = 0.5 + 5.0 * u(rng);
        const double a = R2 * (0.01 + 0.98 * u(rng));
        const double b = R2 * (0.01 + 0.98 * u(rng));
        if (a == b) continue;
        const double lo = std::min(a, b);
        const double hi = std::max(a, b);
        EXPECT_GT(shell_sigma1({n, hi, R2}), shell_sigma1({n, lo, R2}));
    }
}

TEST(ShellSigma1, ScalesInverselyWithDilation) {
    for (int n : {2, 3, 4, 7}) {
        const double base = shell_sigma1({n, 0.7, 1.9});
        for (double t : {0.1, 2.0, 17.0}) {
            EXPECT_LT(rel(shell_sigma1({n, 0.7 * t, 1.9 * t}), base / t), 1e-12);
        }
    }
}

TEST(ShellSigma1, NearlyDegenerateGap) {
    // log1p/expm1 forms: compare with series in eps = R2/R1 - 1
    // 1 + eps must be exact in double
    const double eps = std::ldexp(1.0, -30);
    const double l = eps - eps * eps / 2.0 + eps * eps * eps / 3.0;
    EXPECT_LT(rel(shell_sigma1({2, 1.0, 1.0 + eps}), 1.0 / ((1.0 + eps) * l)), 1e-12);
    // (1+eps)^1 - 1 = eps exactly for n = 3
    EXPECT_LT(rel(shell_sigma1({3, 1.0, 1.0 + eps}), 1.0 / ((1.0 + eps) * eps)), 1e-12);
}

TEST(ShellEigenfunction, Values) {
    EXPECT_DOUBLE_EQ(shell_eigenfunction({2, 1.0, 2.0}, 1.0), 0.0);
    EXPECT_NEAR(shell_eigenfunction({3, 1.0, 3.0}, 2.0), 0.5, 1e-15);
    EXPECT_NEAR(shell_eigenfunction({2, 0.5, 3.0}, std::numbers::e * 0.5), 1.0, 1e-15);
    EXPECT_THROW(shell_eigenfunction({2, 1.0, 2.0}, 0.9), std::invalid_argument);
}

TEST(ShellEigenfunction, StrictlyIncreasingAndVanishingOnInnerSphere) {
    for (int n : {2, 3, 4, 6}) {
        const ShellSpec spec{n, 0.8, 3.0};
        EXPECT_EQ(shell_eigenfunction(spec, 0.8), 0.0);
        double prev = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double r = 0.8 + 2.2 * i / 100.0;
            const double w = shell_eigenfunction(spec, r);
            EXPECT_GT(w, prev);
            EXPECT_NEAR(w, oracle::w_radial(n, 0.8, r), 1e-13 * std::max(1.0, std::abs(w)));
            prev = w;
        }
    }
}

TEST(UpperBoundVolume, DominatesEqualVolumeShell) {
    const double V2 = std::numbers::pi * (std::exp(2.0) - 1.0);
    const double b2 = upper_bound_volume(2, 1.0, V2);
    EXPECT_TRUE(std::isfinite(b2));
    EXPECT_GE(b2, shell_sigma1({2, 1.0, std::numbers::e}));

    const double V3 = 4.0 * std::numbers::pi / 3.0 * (8.0 - 1.0);
    EXPECT_GE(upper_bound_volume(3, 1.0, V3), 0.5);
}

TEST(UpperBoundVolume, DecaysForLargeVolume) {
    double prev = upper_bound_volume(2, 1.0, 1.0);
    for (double V : {1e2, 1e4, 1e8, 1e12}) {
        const double b = upper_bound_volume(2, 1.0, V);
        EXPECT_GT(b, 0.0);
        EXPECT_LT(b, prev);
        prev = b;
    }
    EXPECT_LT(prev, 1e-5);
}

TEST(UpperBoundVolume, PerimeterChainMemberAgrees) {
    for (int n : {2, 3, 4}) {
        for (double V : {0.01, 1.0, 37.0}) {
            EXPECT_LT(rel(upper_bound_perimeter_chain(n, 0.6, V), upper_bound_volume(n, 0.6, V)), 1e-12);
        }
    }
    EXPECT_THROW(upper_bound_volume(2, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(upper_bound_volume(2, 0.0, 1.0), std::invalid_argument);
}

TEST(Rbar, Values) {
    EXPECT_NEAR(rbar(2, 1.0), std::exp(std::numbers::sqrt2), 1e-14);
    EXPECT_NEAR(rbar(2, 1.0), 4.11325, 1e-5);
    EXPECT_NEAR(rbar(3, 1.0), 2.0, 1e-14);
    EXPECT_NEAR(rbar(4, 1.0), std::sqrt((3.0 + 2.0 * std::sqrt(6.0)) / 3.0), 1e-14);
    EXPECT_NEAR(rbar(4, 1.0), 1.62265, 1e-5);
    EXPECT_NEAR(rbar(3, 2.5), 5.0, 1e-14);
}

TEST(Rbar, ConsistentWithAlphaPlus) {
    for (int n = 2; n <= 10; ++n) {
        for (double R1 : {0.3, 1.0, 4.0}) {
            EXPECT_LT(rel(std::pow(rbar(n, R1), n), alpha_pm(n).second * std::pow(R1, n)), 1e-12) << n;
        }
    }
}

TEST(AlphaPm, Values) {
    const auto [m2, p2] = alpha_pm(2);
    EXPECT_NEAR(m2, std::exp(-2.0 * std::numbers::sqrt2), 1e-15);
    EXPECT_NEAR(m2, 0.05910, 1e-5);
    EXPECT_NEAR(p2, 16.91883, 1e-5);
    const auto [m3, p3] = alpha_pm(3);
    EXPECT_EQ(m3, 0.0);
    EXPECT_NEAR(p3, 8.0, 1e-13);
    const auto [m4, p4] = alpha_pm(4);
    EXPECT_EQ(m4, 0.0);
    EXPECT_NEAR(p4, std::pow((3.0 + 2.0 * std::sqrt(6.0)) / 3.0, 2.0), 1e-12);
    EXPECT_NEAR(p4, 6.93264, 2e-5);
    for (int n = 3; n <= 12; ++n) {
        EXPECT_EQ(alpha_pm(n).first, 0.0);
        EXPECT_LT(alpha_pm(n).first, alpha_pm(n).second);
    }
}

TEST(FProfile, ZeroAtInnerRadiusSquared) {
    EXPECT_EQ(f_profile(1.0, 2, 1.0), 0.0);
    EXPECT_NEAR(f_profile(0.49, 2, 0.7), 0.0, 1e-16);
    EXPECT_NEAR(f_profile(8.0, 3, 2.0), 0.0, 1e-16);
    EXPECT_THROW(f_profile(0.0, 2, 1.0), std::invalid_argument);
    EXPECT_THROW(f_second(-1.0, 3, 1.0), std::invalid_argument);
}

TEST(FProfile, SecondDerivativeVanishesAtConvexityBoundary) {
    EXPECT_LT(std::abs(f_second(alpha_pm(2).second, 2, 1.0)), 1e-10);
    EXPECT_LT(std::abs(f_second(alpha_pm(2).first, 2, 1.0)), 1e-10);
    for (int n = 3; n <= 6; ++n) EXPECT_LT(std::abs(f_second(alpha_pm(n).second, n, 1.0)), 1e-10) << n;
}

TEST(FProfile, ConcaveBeyondAlphaPlus) {
    const double t = 1.5 * alpha_pm(3).second;
    const double an = f_second(t, 3, 1.0);
    EXPECT_LT(an, 0.0);
    const double fd = oracle::central_second_difference([](double s) { return f_profile(s, 3, 1.0); }, t, 1e-5 * t);
    EXPECT_LT(fd, 0.0);
    EXPECT_LT(rel(fd, an), 1e-4);
}

TEST(FProfile, ConvexOnIntervalAndMatchesFiniteDifferences) {
    for (int n : {2, 3, 4, 5}) {
        for (double R1 : {1.0, 0.4}) {
            const auto [am, ap] = alpha_pm(n);
            const double lo = am * std::pow(R1, n);
            const double hi = ap * std::pow(R1, n);
            const auto f = [n, R1](double s) { return f_profile(s, n, R1); };
            std::vector<double> an, err;
            for (int i = 0; i < 1000; ++i) {
                // left endpoint 0 is outside the domain t > 0 for n >= 3
                const double t = lo > 0.0 ? lo + (hi - lo) * i / 999.0 : hi * (i + 1) / 1000.0;
                an.push_back(f_second(t, n, R1));
                EXPECT_GE(an.back(), -1e-10) << "n=" << n << " t=" << t;
                err.push_back(std::abs(oracle::central_second_difference(f, t, 1e-5 * t) - an.back()));
            }
            double scale = 0.0;
            for (double v : an) scale = std::max(scale, std::abs(v));
            for (double e : err) EXPECT_LT(e / scale, 1e-4) << "n=" << n;
        }
    }
}

TEST(BoundsReport, Fields) {
    const auto rep = bounds_report(2, 1.0, 3.0 * std::numbers::pi, 2.0);
    EXPECT_TRUE(rep.inside_rbar);
    EXPECT_LT(rep.alpha_minus, rep.alpha_plus);
    EXPECT_NEAR(std::pow(rep.rbar, 2), rep.alpha_plus, 1e-12 * rep.alpha_plus);
    EXPECT_GE(rep.sigma_upper_volume, shell_sigma1({2, 1.0, 2.0}));
    EXPECT_FALSE(bounds_report(2, 1.0, 3.0, 5.0).inside_rbar);
}
