#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcp/classical.hpp"
#include "dcp/dseries.hpp"
#include "dcp/inversion.hpp"
#include "dcp/symbolic.hpp"

namespace dcp {

struct BridgeRow {
    unsigned n = 0;            // compares index 2^n
    SymbolicScalar dirichlet;  // g_{2^n} with w*L2 -> v
    SymbolicScalar classical;  // hat(a_n)(n v) = [x^1] b_n(x)
    SymbolicScalar dirichlet_exp;  // [2^n] exp(x g) with w*L2 -> v
    SymbolicScalar classical_exp;  // b_n(x)
    bool match = false;
};

struct BridgeReport {
    bool passed = true;
    std::vector<BridgeRow> rows;
};

/// For f supported on powers of two, A(z) = exp(sum_k c_{2^k} z^k) and z = 2^{-s}.
/// Compares the Dirichlet solution of f(s - w g) = g with the power-series
/// solution of A(z B(z)^v) = B(z), identifying w L2 with v.
inline BridgeReport bridge(const DirichletSeries<SymbolicScalar>& f2)
{
    using S = SymbolicScalar;
    const std::uint32_t N = f2.order();
    for (std::uint32_t n = 1; n <= N; ++n) {
        if ((n & (n - 1)) != 0 && !f2[n].is_zero())
            throw SeriesError("bridge: coefficient at " + std::to_string(n) + " is off the powers of 2");
    }
    if (!f2.in_d0()) throw SeriesError("bridge: f must have zero constant term");
    for (auto& c : f2.coeffs())
        if (!c.is_constant()) throw SeriesError("bridge: coefficients must be rational");

    const unsigned K = floor_log2(N);
    std::vector<S> h(K + 1);
    for (unsigned k = 1; k <= K; ++k) h[k] = f2[1U << k];
    PowerSeriesCoeffs<S> A{ps::exp(h, K)};
    const S x = S::variable(vars::x), v = S::variable(vars::v);
    auto B = classical_oracle(A, v, x, K);

    auto g = solve(f2, S::variable(vars::w)).g;
    auto to_v = [](const S& s) { return s.substitute(vars::log_of_prime(2), S(1)).substitute(vars::w, S::variable(vars::v)); };
    auto eg = dexp(g.map([](const S& c) { return UniPoly<S>::monomial(1, c); }));

    BridgeReport rep;
    for (unsigned n = 1; n <= K; ++n) {
        BridgeRow row;
        row.n = n;
        row.dirichlet = to_v(g[1U << n]);
        auto parts = B[n].collect(vars::x);
        row.classical = parts.size() > 1 ? parts[1] : S();
        row.dirichlet_exp = to_v(to_symbolic(eg[1U << n]));
        row.classical_exp = B[n];
        row.match = row.dirichlet == row.classical && row.dirichlet_exp == row.classical_exp;
        rep.passed = rep.passed && row.match;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace dcp
