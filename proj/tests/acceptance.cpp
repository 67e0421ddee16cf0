// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dcp/abscissa.hpp"
#include "dcp/bridge.hpp"
#include "dcp/classical.hpp"
#include "dcp/families.hpp"
#include "dcp/inversion.hpp"
#include "dcp/spec_io.hpp"

using namespace dcp;
using S = SymbolicScalar;
using SS = DirichletSeries<S>;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass) detail = why;
        pass = false;
    }
};

/// Builtins {two_power, log_zeta, prime_zeta} plus random_rational seeds 1..5.
std::vector<std::pair<std::string, SS>> corpus(std::uint32_t N)
{
    std::vector<std::pair<std::string, SS>> out;
    for (const char* name : {"two_power", "log_zeta", "prime_zeta"}) out.emplace_back(name, builtin_series(name, N));
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        out.emplace_back("random_rational#" + std::to_string(seed), random_rational_series(N, seed, {}));
    return out;
}

const S W = S::variable(vars::w);

Outcome three_way_equivalence()
{
    Outcome o;
    const S w(Rational(1, 2));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto f = random_rational_series(64, seed, {});
        auto a = solve(f, w, SolveMethod::closed_form);
        auto b = solve(f, w, SolveMethod::triangular);
        auto c = solve(f, w, SolveMethod::fixed_point);
        if (!(a.g == b.g) || !(b.g == c.g)) o.fail("solvers disagree at seed " + std::to_string(seed));
        if (!a.residual_zero || !b.residual_zero || !c.residual_zero)
            o.fail("nonzero residual at seed " + std::to_string(seed));
        for (auto& coeff : b.g.coeffs())
            for (auto v : coeff.variables())
                if (!v.is_log() || v.log_prime() > 61) o.fail("coefficient outside Q[L_2..L_61] at seed " + std::to_string(seed));
    }
    if (o.pass) o.detail = "20 seeds, N=64, w=1/2";
    return o;
}

Outcome beta_transform_identity()
{
    Outcome o;
    for (auto& [name, f] : corpus(32)) {
        auto rep = verify_family(beta_transform(family_from_generator(f), W));
        auto& c = rep.check("convolution");
        if (!c.passed) o.fail(name + " fails at n=" + std::to_string(c.first_failure));
    }
    if (o.pass) o.detail = "8 families, N=32, w symbolic";
    return o;
}

Outcome family_checks_and_faults()
{
    Outcome o;
    std::vector<ConvolutionFamily<S>> fams;
    for (auto& [name, f] : corpus(64)) {
        fams.push_back(family_from_generator(f));
        auto rep = verify_family(fams.back());
        for (auto& c : rep.checks)
            if (!c.passed) o.fail(name + ": check " + c.name + " fails at n=" + std::to_string(c.first_failure));
    }
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::uint32_t> index(2, 64);
    std::uniform_int_distribution<long> num(1, 9), den(1, 7);
    int detected = 0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
        auto fam = fams[static_cast<std::size_t>(t) % fams.size()];
        std::uint32_t n = index(rng);
        Rational r(num(rng) * (rng() % 2 ? 1 : -1), den(rng));
        fam[n] = fam[n] + UniPoly<S>::monomial(2, S(r));
        auto& c = verify_family(fam).check("convolution");
        if (!c.passed && c.first_failure == n) ++detected;
    }
    if (detected != trials) o.fail("fault located in " + std::to_string(detected) + "/" + std::to_string(trials) + " trials");
    if (o.pass) o.detail = "checks (a)-(f) on 8 families at N=64; 50/50 faults located";
    return o;
}

Outcome classical_bridge()
{
    Outcome o;
    std::vector<SS> inputs{builtin_series("two_power", 32)};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
        SS f(32);
        for (unsigned k = 1; k <= 5; ++k) f[1U << k] = S(Rational(num(rng), den(rng)));
        inputs.push_back(f);
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        auto rep = bridge(inputs[i]);
        if (!rep.passed) o.fail("bridge mismatch for input " + std::to_string(i));
    }
    // Tree function: A = exp(z), x = 1, v = 1 gives b_2 = 3/2 on both sides.
    auto tree = bridge(builtin_series("two_power", 32));
    auto at11 = [](const S& s) { return s.substitute(vars::x, S(1)).substitute(vars::v, S(1)); };
    S dirichlet_b2 = at11(tree.rows.at(1).dirichlet_exp), classical_b2 = at11(tree.rows.at(1).classical_exp);
    if (!(dirichlet_b2 == S(Rational(3, 2))) || !(classical_b2 == S(Rational(3, 2))))
        o.fail("tree function b_2 = " + dirichlet_b2.str() + " / " + classical_b2.str());
    if (o.pass) o.detail = "6 inputs on {2^k}, k<=5; b_2 = 3/2 at x = v = 1";
    return o;
}

Outcome exp_and_inverse_identities()
{
    Outcome o;
    for (auto& [name, f] : corpus(32)) {
        auto e = exp_identity(f, W);
        if (!e.passed) o.fail(name + ": exp identity fails at n=" + std::to_string(e.first_failure));
        auto r = inverse_check_residual(f, W);
        if (!r.is_zero()) o.fail(name + ": inverse identity fails at n=" + std::to_string(r.first_nonzero()));
    }
    if (o.pass) o.detail = "8 series, N=32, x and w symbolic";
    return o;
}

Outcome float_exact_agreement()
{
    Outcome o;
    const S w_exact(Rational(37, 100));
    const Complex w_num(0.37);
    double worst = 0.0;
    for (auto& [name, f] : corpus(64)) {
        auto exact = to_numeric(solve(f, w_exact).g);
        auto numeric = solve(to_numeric(f), w_num).g;
        auto ex_fam = family_from_generator(f);
        auto nu_fam = family_from_generator(to_numeric(f));
        double scale = max_abs(exact);
        for (std::uint32_t n = 1; n <= 64; ++n) {
            double err = std::abs(numeric[n] - exact[n]);
            double rel = exact[n] != 0.0 ? err / std::abs(exact[n]) : err / (1.0 + scale);
            worst = std::max(worst, rel);
            if (rel > 1e-9) o.fail(name + ": g_" + std::to_string(n) + " relative error " + std::to_string(rel));
            // family coefficients at x = w ln n, i.e. the closed-form evaluation point
            Complex x = w_num * std::log(static_cast<double>(n));
            Complex fe = eval_numeric(ex_fam[n], {{vars::x, x}}), fn = nu_fam[n].eval(x);
            double frel = std::abs(fe - fn) / std::max(std::abs(fe), 1e-300);
            if (fe != 0.0 && frel > 1e-9) o.fail(name + ": alpha_" + std::to_string(n) + " relative error");
        }
    }
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "8 series, N=64, w=0.37, worst relative error %.2e", worst);
        o.detail = buf;
    }
    return o;
}

// f(-1) for log_weighted(2,3) by direct summation to 10^6 plus the integral tail 1/(2 ln^2 M).
double slow_boundary_value()
{
    const std::uint32_t M = 1'000'000;
    double acc = 0.0;
    for (std::uint32_t n = M; n >= 2; --n) {
        double l = std::log(static_cast<double>(n));
        acc += 1.0 / (static_cast<double>(n) * l * l * l);
    }
    double L = std::log(static_cast<double>(M));
    return acc + 1.0 / (2.0 * L * L);
}

Outcome abscissa_proposition()
{
    Outcome o;
    auto zeta2 = AnalyticDescriptor::zeta_shift(2);
    std::string detail;
    for (auto [w_num, w_den] : {std::pair{1L, 4L}, {1L, 1L}, {4L, 1L}}) {
        double w = static_cast<double>(w_num) / static_cast<double>(w_den);
        auto r = sigma_g(zeta2, w);
        auto [s_star, F_star] = minimize_F(zeta2, w);
        if (std::abs(r.sigma_g - F_star) >= 1e-8) o.fail("dual route differs at w=" + std::to_string(w));
        if (r.case_tag != AbscissaCase::interior_min || !r.s0) {
            o.fail("zeta_shift(2) not interior at w=" + std::to_string(w));
            continue;
        }
        double fp = eval_f(zeta2, *r.s0, 1e-14, 1).value;
        if (std::abs(fp + 1.0 / w) >= 1e-10) o.fail("interior condition violated at w=" + std::to_string(w));
        // nonnegative coefficients: exact with c_n = 1/n^2, and numeric at N = 256
        SS f(32);
        for (std::uint32_t n = 2; n <= 32; ++n) f[n] = S(Rational(1, static_cast<long>(n) * n));
        auto g = solve(f, S(Rational(w_num, w_den))).g;
        for (std::uint32_t n = 1; n <= 32; ++n)
            if (!g[n].has_nonnegative_coefficients()) o.fail("negative exact coefficient g_" + std::to_string(n));
        auto gn = solve(zeta2.truncated(256), Complex(w)).g;
        for (std::uint32_t n = 1; n <= 256; ++n)
            if (gn[n].real() < -1e-12) o.fail("negative numeric coefficient g_" + std::to_string(n));
        char buf[96];
        std::snprintf(buf, sizeof buf, "w=%g sigma_g=%.12f; ", w, r.sigma_g);
        detail += buf;
    }
    auto lw = AnalyticDescriptor::log_weighted(2, 3);
    const double w = 0.25;
    auto r = sigma_g(lw, w);
    double oracle = -1.0 + w * slow_boundary_value();
    if (r.case_tag != AbscissaCase::boundary_min) o.fail("log_weighted(2,3) not classified as boundary_min");
    if (std::abs(r.sigma_g - oracle) >= 1e-2) o.fail("log_weighted boundary value off by " + std::to_string(r.sigma_g - oracle));
    char buf[128];
    std::snprintf(buf, sizeof buf, "log_weighted(2,3) w=0.25 boundary sigma_g=%.10f vs slow sum %.10f", r.sigma_g, oracle);
    if (o.pass) o.detail = detail + buf;
    return o;
}

Outcome nonzero_constant_term()
{
    Outcome o;
    DirichletSeries<Complex> f = DirichletSeries<Complex>::unit(16);
    f[2] = 1.0;
    auto r = solve_general(f, Complex(0.5));
    if (!(r.residual_norm < 1e-12)) o.fail("residual max-norm " + std::to_string(r.residual_norm));
    char buf[64];
    std::snprintf(buf, sizeof buf, "residual max-norm %.2e", r.residual_norm);
    if (o.pass) o.detail = buf;
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"three-way solver equivalence", 30, three_way_equivalence},
        {"beta-transform convolution identity", 20, beta_transform_identity},
        {"family checks (a)-(f) and fault injection", 30, family_checks_and_faults},
        {"classical power-series bridge", 5, classical_bridge},
        {"exp and inverse functional identities", 20, exp_and_inverse_identities},
        {"float/exact agreement", 0, float_exact_agreement},
        {"abscissa of the solution", 10, abscissa_proposition},
        {"nonzero constant term wrapper", 0, nonzero_constant_term},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto& c = criteria[i];
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && secs > c.budget_s) out.fail("runtime " + std::to_string(secs) + " s over budget");
        std::printf("[%s] criterion %zu: %s (%s; %.2f s)\n", out.pass ? "PASS" : "FAIL", i + 1, c.name,
                    out.detail.c_str(), secs);
        failed += out.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
