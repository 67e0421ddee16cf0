#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dcp/abscissa.hpp"
#include "dcp/inversion.hpp"

using namespace dcp;

namespace {

const auto zeta2 = AnalyticDescriptor::zeta_shift(2);
const auto logw = AnalyticDescriptor::log_weighted(2, 3);

// Slow oracle for f(-1) of log_weighted(2,3): sum_{n<=M} 1/(n ln^3 n) + 1/(2 ln^2 M).
double slow_log_weighted_boundary(std::uint32_t M)
{
    double acc = 0.0;
    for (std::uint32_t n = M; n >= 2; --n) {
        double l = std::log(static_cast<double>(n));
        acc += 1.0 / (n * l * l * l);
    }
    double L = std::log(static_cast<double>(M));
    return acc + 1.0 / (2.0 * L * L);
}

}  // namespace

TEST(EvalF, ZetaAtZero)
{
    auto r = eval_f(zeta2, 0.0, 1e-13);
    EXPECT_NEAR(r.value, std::numbers::pi * std::numbers::pi / 6.0 - 1.0, 1e-13);
    EXPECT_LT(r.error, 1e-13);
}

TEST(EvalF, ZetaOddValue)
{
    // zeta(3) - 1 at s = 1
    EXPECT_NEAR(eval_f(zeta2, 1.0, 1e-14).value, 0.2020569031595942854, 1e-14);
}

TEST(EvalF, LeadingTermForLargeS)
{
    double v = eval_f(zeta2, 20.0, 1e-20).value;
    EXPECT_NEAR(v / std::ldexp(1.0, -22), 1.0, 2e-4);
}

TEST(EvalF, DerivativeNegativeAndIncreasing)
{
    double prev = -std::numeric_limits<double>::infinity();
    for (double s = -0.9; s <= 3.0; s += 0.1) {
        double d = eval_f(zeta2, s, 1e-12, 1).value;
        EXPECT_LT(d, 0.0);
        EXPECT_GT(d, prev);
        prev = d;
    }
}

TEST(EvalF, DerivativeMatchesFiniteDifference)
{
    for (double s : {-0.5, 0.0, 1.5}) {
        double h = 1e-5;
        double fd = (eval_f(zeta2, s + h, 1e-13).value - eval_f(zeta2, s - h, 1e-13).value) / (2 * h);
        EXPECT_NEAR(eval_f(zeta2, s, 1e-13, 1).value, fd, 1e-6);
    }
}

TEST(EvalF, TruncationBoundShrinksWithCutoff)
{
    // The roundoff share of the bound grows slowly with M; the truncation share must not.
    for (double sigma : {1.2, 2.0, 3.5}) {
        double prev = std::numeric_limits<double>::infinity();
        for (std::uint32_t M = 64; M <= 1U << 14; M *= 2) {
            auto r = detail::power_log_sum(sigma, -3.0, M);
            EXPECT_LE(r.truncation, prev) << sigma << " " << M;
            EXPECT_GE(r.error, r.truncation);
            prev = r.truncation;
        }
    }
}

TEST(EvalF, BoundCertifiesAgainstDirectSum)
{
    // Exact value from a long direct sum with an integral tail; the certified bound must cover it.
    double direct = slow_log_weighted_boundary(2'000'000);
    auto r = eval_f(logw, -1.0, 1e-12);
    EXPECT_NEAR(r.value, direct, 1e-8);
}

TEST(EvalF, Errors)
{
    EXPECT_THROW(eval_f(zeta2, -1.5, 1e-10), AbscissaError);
    EXPECT_THROW(eval_f(zeta2, -1.0, 1e-10), AbscissaError);  // diverges at the boundary
    EXPECT_NO_THROW(eval_f(logw, -1.0, 1e-10));
    EXPECT_THROW(eval_f(logw, -1.0, 1e-300), AbscissaError);
}

TEST(SigmaG, ZetaInteriorDualRoute)
{
    for (double w : {0.25, 1.0, 4.0}) {
        auto r = sigma_g(zeta2, w);
        ASSERT_EQ(r.case_tag, AbscissaCase::interior_min);
        ASSERT_TRUE(r.s0.has_value());
        EXPECT_LT(std::abs(eval_f(zeta2, *r.s0, 1e-14, 1).value + 1.0 / w), 1e-10);
        EXPECT_NEAR(r.sigma_g, minimize_F(zeta2, w).second, 1e-8) << w;
        EXPECT_LT(r.certified_error, 1e-10);
    }
}

TEST(SigmaG, LogWeightedBoundaryCase)
{
    auto r = sigma_g(logw, 0.25);
    EXPECT_EQ(r.case_tag, AbscissaCase::boundary_min);
    EXPECT_FALSE(r.s0.has_value());
    double oracle = -1.0 + 0.25 * slow_log_weighted_boundary(1'000'000);
    EXPECT_NEAR(r.sigma_g, oracle, 1e-2);
    EXPECT_NEAR(r.sigma_g, minimize_F(logw, 0.25).second, 1e-8);
    // f'(sigma_f+) is finite and above -1/w.
    EXPECT_GT(r.boundary_derivative, -4.0);
}

TEST(SigmaG, DualRouteOnAllBuiltins)
{
    for (const auto& d : {zeta2, logw, AnalyticDescriptor::zeta_shift(3)})
        for (double w : {0.25, 1.0, 4.0}) EXPECT_NEAR(sigma_g(d, w).sigma_g, minimize_F(d, w).second, 1e-8) << d.name() << " " << w;
}

TEST(SigmaG, NondecreasingInW)
{
    for (const auto& d : {zeta2, logw}) {
        double prev = -std::numeric_limits<double>::infinity();
        for (double w = 0.1; w <= 6.0; w *= 1.5) {
            double v = sigma_g(d, w).sigma_g;
            EXPECT_GE(v, prev - 1e-12) << d.name() << " " << w;
            prev = v;
        }
    }
}

TEST(SigmaG, RejectsNonpositiveW)
{
    EXPECT_THROW(sigma_g(zeta2, 0.0), std::invalid_argument);
    EXPECT_THROW(minimize_F(zeta2, -1.0), std::invalid_argument);
}

TEST(SigmaG, InconclusiveClassificationReported)
{
    // Place -1/w exactly at the boundary derivative of log_weighted(2,3).
    double fp = boundary_derivative(logw, {}).first;
    EXPECT_THROW(sigma_g(logw, -1.0 / fp), AbscissaError);
}

TEST(MinimizeF, ConvexityProbe)
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-0.95, 4.0);
    for (int i = 0; i < 100; ++i) {
        double a = u(rng), b = u(rng);
        double mid = objective(zeta2, 1.0, 0.5 * (a + b));
        EXPECT_LE(mid, 0.5 * (objective(zeta2, 1.0, a) + objective(zeta2, 1.0, b)) + 1e-12);
    }
}

TEST(MinimizeF, MinimizerIncreasesWithW)
{
    double prev = -std::numeric_limits<double>::infinity();
    for (double w : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        double s = minimize_F(zeta2, w).first;
        EXPECT_GT(s, prev);
        prev = s;
    }
}

TEST(CurveDump, Examples)
{
    EXPECT_TRUE(curve_dump(zeta2, 1.0, {}).empty());
    EXPECT_EQ(curve_csv({}), "s,F,f,fprime,err\n");
    EXPECT_EQ(curve_dump(zeta2, 1.0, {0.5}).size(), 1U);

    std::vector<double> grid;
    for (int i = 0; i < 100; ++i) grid.push_back(-0.9 + 3.9 * i / 99.0);
    auto rows = curve_dump(zeta2, 1.0, grid);
    ASSERT_EQ(rows.size(), 100U);
    auto s0 = *sigma_g(zeta2, 1.0).s0;
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].F < rows[argmin].F) argmin = i;
    EXPECT_NEAR(rows[argmin].s, s0, 3.9 / 99.0);
    // decreasing before the minimum, increasing after
    for (std::size_t i = 1; i <= argmin; ++i) EXPECT_LT(rows[i].F, rows[i - 1].F);
    for (std::size_t i = argmin + 1; i < rows.size(); ++i) EXPECT_GT(rows[i].F, rows[i - 1].F);
}

TEST(CurveDump, CsvFormat)
{
    auto csv = curve_csv(curve_dump(zeta2, 1.0, {0.0}));
    EXPECT_EQ(csv.substr(0, 17), "s,F,f,fprime,err\n");
    EXPECT_NE(csv.find("0.64493406684822"), std::string::npos) << csv;
}

TEST(Nonnegativity, NumericSolutionForDescriptor)
{
    for (double w : {0.25, 1.0, 4.0}) {
        auto g = solve(zeta2.truncated(256), Complex(w)).g;
        for (std::uint32_t n = 1; n <= 256; ++n) ASSERT_GE(g[n].real(), -1e-12) << n;
    }
}
