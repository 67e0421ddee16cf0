#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "dcp/dseries.hpp"
#include "dcp/symbolic.hpp"

namespace dcp::testing {

using S = SymbolicScalar;

inline S sym(const std::string& text) { return S::parse(text); }

inline Rational random_rational(std::mt19937_64& rng, long max_num = 6, long max_den = 5)
{
    std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
    return Rational(num(rng), den(rng));
}

/// Random element of Q[x, y, w, L2, L3, L5] with a few terms of low degree.
inline S random_symbolic(std::mt19937_64& rng)
{
    static const Var pool[] = {vars::x, vars::y, vars::w, vars::log_of_prime(2), vars::log_of_prime(3),
                               vars::log_of_prime(5)};
    std::uniform_int_distribution<int> nterms(0, 4), nvars(0, 3), pick(0, 5), expo(1, 2);
    S out;
    for (int t = nterms(rng); t > 0; --t) {
        S term(random_rational(rng));
        for (int v = nvars(rng); v > 0; --v) term = term * S::variable(pool[pick(rng)]).pow(expo(rng));
        out = out + term;
    }
    return out;
}

/// Random rational series of order N; c_1 = lead.
inline DirichletSeries<S> random_series(std::mt19937_64& rng, std::uint32_t N, long lead = 0, double density = 0.6)
{
    std::bernoulli_distribution on(density);
    DirichletSeries<S> f(N);
    f[1] = S(lead);
    for (std::uint32_t n = 2; n <= N; ++n)
        if (on(rng)) f[n] = S(random_rational(rng));
    return f;
}

}  // namespace dcp::testing
