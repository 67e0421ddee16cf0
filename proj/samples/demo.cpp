// Solves f(s - w g(s)) = g(s) for f = 2^{-s} with symbolic w, prints g, and
// cross-checks the three solvers.

#include <iostream>

#include "dcp/inversion.hpp"
#include "dcp/spec_io.hpp"

int main()
{
    using namespace dcp;
    using S = SymbolicScalar;

    auto f = builtin_series("two_power", 32);
    const S w = S::variable(vars::w);

    auto closed = solve(f, w, SolveMethod::closed_form);
    auto tri = solve(f, w, SolveMethod::triangular);
    auto fix = solve(f, w, SolveMethod::fixed_point);

    for (std::uint32_t n = 1; n <= f.order(); ++n)
        if (!tri.g[n].is_zero()) std::cout << "g_" << n << " = " << tri.g[n].str() << "\n";

    bool agree = closed.g == tri.g && tri.g == fix.g;
    std::cout << "solvers agree: " << (agree ? "yes" : "no") << ", residual zero: " << (tri.residual_zero ? "yes" : "no")
              << ", fixed-point iterations: " << fix.iterations << "\n";

    auto fam = family_from_generator(builtin_series("log_zeta", 12));
    std::cout << "alpha_12(x) for log zeta: " << to_string(fam[12]) << "\n";
    return agree && tri.residual_zero ? 0 : 1;
}
