#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "dcp/dseries.hpp"
#include "dcp/sieve.hpp"
#include "support.hpp"

using namespace dcp;
using namespace dcp::testing;
using SS = DirichletSeries<S>;
using CS = DirichletSeries<Complex>;

namespace {

SS ones(std::uint32_t N)
{
    SS z(N);
    for (std::uint32_t n = 1; n <= N; ++n) z[n] = S(1);
    return z;
}

// Brute force: number of divisors by trial division.
long divisor_count(std::uint32_t n)
{
    long c = 0;
    for (std::uint32_t d = 1; d <= n; ++d) c += (n % d == 0);
    return c;
}

// Brute force: 1/k if n = p^k, else 0.
Rational lambda_over_log(std::uint32_t n)
{
    for (std::uint32_t p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        long k = 0;
        std::uint32_t m = n;
        while (m % p == 0) m /= p, ++k;
        return m == 1 ? Rational(1, k) : Rational(0);
    }
    return Rational(0);
}

CS random_numeric(std::mt19937_64& rng, std::uint32_t N, double scale = 0.5)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    CS f(N);
    for (std::uint32_t n = 2; n <= N; ++n) f[n] = Complex(u(rng), u(rng));
    return f;
}

}  // namespace

TEST(Sieve, FactorizationAndDivisors)
{
    Sieve sv(100);
    EXPECT_EQ(sv.big_omega(12), 3U);
    EXPECT_EQ(sv.big_omega(97), 1U);
    EXPECT_EQ(sv.divisors(12), (std::vector<std::uint32_t>{1, 2, 3, 4, 6, 12}));
    for (std::uint32_t n = 1; n <= 100; ++n) EXPECT_EQ(static_cast<long>(sv.divisors(n).size()), divisor_count(n));
}

TEST(Dmul, UnitIsIdentity)
{
    std::mt19937_64 rng(3);
    auto b = random_series(rng, 24, 2);
    EXPECT_EQ(dmul(SS::unit(24), b), b);
}

TEST(Dmul, ZetaSquaredIsDivisorCount)
{
    auto d = dmul(ones(60), ones(60));
    EXPECT_EQ(d[6], S(4));
    for (std::uint32_t n = 1; n <= 60; ++n) EXPECT_EQ(d[n], S(divisor_count(n))) << n;
}

TEST(Dmul, TwoPowerSquared)
{
    auto a = SS::monomial(16, 2, S(1));
    auto sq = dmul(a, a);
    for (std::uint32_t n = 1; n <= 16; ++n) EXPECT_EQ(sq[n], S(n == 4 ? 1 : 0)) << n;
}

TEST(Dmul, OrderMismatch) { EXPECT_THROW(dmul(SS(4), SS(5)), SeriesError); }

TEST(Dmul, AssociativeAndCommutative)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        std::mt19937_64 rng(seed);
        auto a = random_series(rng, 32, 1), b = random_series(rng, 32, 0), c = random_series(rng, 32, 2);
        ASSERT_EQ(dmul(dmul(a, b), c), dmul(a, dmul(b, c))) << seed;
        ASSERT_EQ(dmul(a, b), dmul(b, a)) << seed;
    }
}

TEST(Dexp, Examples)
{
    EXPECT_EQ(dexp(SS(10)), SS::unit(10));

    auto h = SS::monomial(16, 2, sym("x"));
    auto e = dexp(h);
    EXPECT_EQ(e[8], sym("1/6*x^3"));
    EXPECT_EQ(e[16], sym("1/24*x^4"));
    EXPECT_EQ(e[4], sym("1/2*x^2"));
    EXPECT_TRUE(e[6].is_zero());

    SS ab(12);
    ab[2] = sym("w");
    ab[3] = sym("y");
    EXPECT_EQ(dexp(ab)[6], sym("w*y"));
}

TEST(Dexp, RejectsConstantTerm) { EXPECT_THROW(dexp(SS::unit(4)), SeriesError); }

TEST(Dlog, Examples)
{
    EXPECT_TRUE(dlog(SS::unit(9)).is_zero());
    auto l = dlog(ones(64));
    EXPECT_EQ(l[4], S(Rational(1, 2)));
    for (std::uint32_t n = 1; n <= 64; ++n) EXPECT_EQ(l[n], S(lambda_over_log(n))) << n;
    EXPECT_THROW(dlog(SS(4)), SeriesError);
}

TEST(Dlog, InvertsDexp)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(seed);
        auto h = random_series(rng, 32, 0);
        ASSERT_EQ(dlog(dexp(h)), h) << seed;
        auto u = random_series(rng, 32, 1);
        ASSERT_EQ(dexp(dlog(u)), u) << seed;
    }
}

TEST(Dpow, Examples)
{
    std::mt19937_64 rng(11);
    auto u = random_series(rng, 20, 1);
    EXPECT_EQ(dpow(u, S(0)), SS::unit(20));
    EXPECT_EQ(dpow(u, S(1)), u);
    EXPECT_EQ(dpow(ones(16), sym("x"))[4], sym("1/2*x^2 + 1/2*x"));
    EXPECT_EQ(dpow_x(ones(16))[4], UniPoly<S>({S(0), S(Rational(1, 2)), S(Rational(1, 2))}));
    EXPECT_THROW(dpow(SS(4), S(2)), SeriesError);
}

TEST(Dpow, IntegerPowerMatchesRepeatedProduct)
{
    std::mt19937_64 rng(5);
    auto u = random_series(rng, 30, 1);
    EXPECT_EQ(dpow(u, S(3)), dmul(dmul(u, u), u));
    EXPECT_EQ(dmul(dpow(u, S(Rational(1, 2))), dpow(u, S(Rational(1, 2)))), u);
}

TEST(Dpow, AdditiveInExponent)
{
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        std::mt19937_64 rng(seed);
        auto u = random_series(rng, 32, 1, 0.4);
        ASSERT_EQ(dmul(dpow(u, sym("x")), dpow(u, sym("y"))), dpow(u, sym("x + y"))) << seed;
    }
}

TEST(Dderiv, Examples)
{
    EXPECT_TRUE(dderiv(SS::unit(5)).is_zero());
    EXPECT_EQ(dderiv(SS::monomial(4, 2, S(1)))[2], sym("-L2"));
    EXPECT_EQ(dderiv(SS::monomial(12, 12, S(1)))[12], sym("-2*L2 - L3"));
}

TEST(Dderiv, IsADerivation)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(seed);
        auto a = random_series(rng, 32, 1), b = random_series(rng, 32, 3);
        ASSERT_EQ(dderiv(dmul(a, b)), dmul(dderiv(a), b) + dmul(a, dderiv(b))) << seed;
    }
}

TEST(Dshift, Examples)
{
    std::mt19937_64 rng(1);
    auto f = random_numeric(rng, 12);
    EXPECT_EQ(dshift(f, 0.0), f);
    EXPECT_EQ(dshift(CS::monomial(4, 2, 1.0), 1.0)[2], Complex(2.0));
    EXPECT_EQ(dshift(SS::monomial(4, 3, S(Rational(1, 3))), Rational(2))[3], S(3));
    EXPECT_THROW(dshift(SS::monomial(4, 3, S(1)), Rational(1, 2)), SeriesError);
}

TEST(ComposeInner, Examples)
{
    std::mt19937_64 rng(2);
    auto f = random_series(rng, 24), g = random_series(rng, 24);
    EXPECT_EQ(compose_inner(f, g, S(0)), f);
    EXPECT_EQ(compose_inner(f, SS(24), sym("w")), f);

    auto f2 = SS::monomial(8, 2, S(1));
    auto gb = SS::monomial(8, 2, sym("y"));
    auto out = compose_inner(f2, gb, sym("w"));
    EXPECT_EQ(out[2], S(1));
    EXPECT_EQ(out[4], sym("w*L2*y"));

    EXPECT_THROW(compose_inner(SS::unit(8), gb, sym("w")), SeriesError);
    EXPECT_THROW(compose_inner(f2, SS::unit(8), sym("w")), SeriesError);
}

TEST(ComposeInner, MatchesAnalyticComposition)
{
    // Oracle: sum_k c_k k^{-(s - w g(s))} evaluated directly at large Re(s).
    const std::uint32_t N = 16;
    const Complex w(0.7, -0.2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(seed);
        auto f = random_numeric(rng, N), g = random_numeric(rng, N);
        auto h = compose_inner(f, g, w);
        for (Complex s : {Complex(20.0, 0.0), Complex(25.0, 3.0), Complex(30.0, -7.0)}) {
            Complex gs = evaluate(g, s), direct = 0.0;
            for (std::uint32_t k = 2; k <= N; ++k) direct += f[k] * std::pow(static_cast<double>(k), -(s - w * gs));
            Complex series = evaluate(h, s);
            EXPECT_LT(std::abs(series - direct), 1e-9 * std::abs(direct)) << "seed " << seed << " s " << s;
        }
    }
}

TEST(ComposeInner, ExactAgreesWithNumeric)
{
    std::mt19937_64 rng(9);
    auto f = random_series(rng, 32), g = random_series(rng, 32);
    auto exact = to_numeric(compose_inner(f, g, S(Rational(3, 7))));
    auto numeric = compose_inner(to_numeric(f), to_numeric(g), Complex(3.0 / 7.0));
    for (std::uint32_t n = 1; n <= 32; ++n)
        EXPECT_NEAR(std::abs(exact[n] - numeric[n]), 0.0, 1e-12 * (1.0 + std::abs(exact[n]))) << n;
}

TEST(DexpRecursive, AgreesWithPowerSums)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(seed);
        auto h = random_numeric(rng, 128);
        EXPECT_LT(max_abs(dexp(h) - dexp_recursive(h)), 1e-12) << seed;
    }
}

TEST(Truncate, KeepsPrefix)
{
    std::mt19937_64 rng(4);
    auto f = random_series(rng, 20, 1);
    auto t = f.truncate(7);
    ASSERT_EQ(t.order(), 7U);
    for (std::uint32_t n = 1; n <= 7; ++n) EXPECT_EQ(t[n], f[n]);
}
