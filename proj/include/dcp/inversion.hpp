#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dcp/dseries.hpp"
#include "dcp/families.hpp"
#include "dcp/scalar.hpp"
#include "dcp/sieve.hpp"
#include "dcp/unipoly.hpp"

namespace dcp {

enum class SolveMethod { closed_form, triangular, fixed_point };

inline std::string to_string(SolveMethod m)
{
    switch (m) {
    case SolveMethod::closed_form: return "closed_form";
    case SolveMethod::triangular: return "triangular";
    case SolveMethod::fixed_point: return "fixed_point";
    }
    return "?";
}

inline SolveMethod parse_method(const std::string& s)
{
    if (s == "closed_form") return SolveMethod::closed_form;
    if (s == "triangular") return SolveMethod::triangular;
    if (s == "fixed_point") return SolveMethod::fixed_point;
    throw std::invalid_argument("unknown solve method '" + s + "'");
}

/// Solution g of f(s - w g(s)) = g(s) with its residual.
template <class T>
struct InversionResult {
    DirichletSeries<T> g;
    SolveMethod method = SolveMethod::triangular;
    /// Exact mode: true iff the residual vanishes identically through N.
    bool residual_zero = false;
    /// Largest residual coefficient magnitude (binary64 image in exact mode).
    double residual_norm = 0.0;
    /// Iterations used by the fixed-point method.
    unsigned iterations = 0;
};

/// compose_inner(f, g, w) - g.
template <class T>
DirichletSeries<T> residual(const DirichletSeries<T>& f, const DirichletSeries<T>& g, const T& w)
{
    return compose_inner(f, g, w) - g;
}

namespace detail {

inline double residual_magnitude(const DirichletSeries<Complex>& r) { return max_abs(r); }

inline double residual_magnitude(const DirichletSeries<SymbolicScalar>& r)
{
    double m = 0.0;
    for (auto& c : r.coeffs())
        if (!c.is_zero()) m = std::max(m, std::abs(eval_numeric(c, {{vars::w, 1.0}, {vars::x, 1.0}, {vars::v, 1.0}})));
    return m;
}

template <class T>
DirichletSeries<T> solve_closed_form(const DirichletSeries<T>& f, const T& w)
{
    using tr = scalar_traits<T>;
    auto fam = family_from_generator(f);
    auto sv = sieve_upto(f.order());
    DirichletSeries<T> g(f.order());
    for (std::uint32_t n = 2; n <= f.order(); ++n) g[n] = fam.hat(n).eval(w * tr::log_int(n, *sv));
    return g;
}

/// Coefficients of exp(a g) filled in increasing index as g becomes final.
/// Power tables pw[j][m] hold the coefficient of (a g)^j / j! at m.
template <class T>
class LazyExp {
    using tr = scalar_traits<T>;

public:
    LazyExp(T a, std::uint32_t limit) : a_(std::move(a)), limit_(limit)
    {
        pw_.assign(floor_log2(std::max<std::uint32_t>(limit, 1)) + 1, std::vector<T>(limit + 1, tr::zero()));
        pw_[0][1] = tr::one();
    }

    /// Coefficient at m; requires g final on indices <= m.
    const T& at(std::uint32_t m, const DirichletSeries<T>& g)
    {
        while (done_ < m) extend(++done_, g);
        return sum_[m];
    }

private:
    void extend(std::uint32_t m, const DirichletSeries<T>& g)
    {
        if (sum_.size() <= m) sum_.resize(limit_ + 1, tr::zero());
        if (m == 1) {
            sum_[1] = tr::one();
            return;
        }
        T total = tr::zero();
        // (ag)^j/j! at m = (1/j) sum_{d | m, d >= 2} a g_d * (ag)^{j-1}/(j-1)! at m/d
        for (std::size_t j = 1; j < pw_.size() && (std::uint32_t{1} << j) <= m; ++j) {
            T acc = tr::zero();
            for (std::uint32_t d = 2; d <= m; ++d) {
                if (m % d != 0 || tr::is_zero(g[d])) continue;
                const T& prev = pw_[j - 1][m / d];
                if (tr::is_zero(prev)) continue;
                acc = acc + g[d] * prev;
            }
            if (tr::is_zero(acc)) continue;
            pw_[j][m] = acc * a_ * tr::from_rational(Rational(1, static_cast<long>(j)));
            total = total + pw_[j][m];
        }
        sum_[m] = total;
    }

    T a_;
    std::uint32_t limit_;
    std::uint32_t done_ = 0;
    std::vector<std::vector<T>> pw_;
    std::vector<T> sum_;
};

template <class T>
DirichletSeries<T> solve_triangular(const DirichletSeries<T>& f, const T& w)
{
    using tr = scalar_traits<T>;
    const std::uint32_t N = f.order();
    auto sv = sieve_upto(N);
    DirichletSeries<T> g(N);
    std::vector<std::unique_ptr<LazyExp<T>>> exps(N + 1);
    for (std::uint32_t k = 2; k <= N; ++k)
        if (!tr::is_zero(f[k])) exps[k] = std::make_unique<LazyExp<T>>(w * tr::log_int(k, *sv), N / k);
    // g_n = sum_{k | n, k >= 2} c_k [exp(w ln(k) g)]_{n/k}; n/k <= n/2 keeps this triangular.
    for (std::uint32_t n = 2; n <= N; ++n) {
        T acc = tr::zero();
        for (auto k : sv->divisors(n)) {
            if (k < 2 || !exps[k]) continue;
            const T& e = exps[k]->at(n / k, g);
            if (!tr::is_zero(e)) acc = acc + f[k] * e;
        }
        g[n] = acc;
    }
    return g;
}

inline bool iterates_converged(const DirichletSeries<SymbolicScalar>& a, const DirichletSeries<SymbolicScalar>& b)
{
    return a == b;
}

inline bool iterates_converged(const DirichletSeries<Complex>& a, const DirichletSeries<Complex>& b)
{
    return max_abs(a - b) < 1e-14 * (1.0 + max_abs(a));
}

template <class T>
DirichletSeries<T> solve_fixed_point(const DirichletSeries<T>& f, const T& w, unsigned& iterations,
                                     std::vector<DirichletSeries<T>>* trace = nullptr)
{
    const std::uint32_t N = f.order();
    const unsigned cap = static_cast<unsigned>(std::bit_width(N > 1 ? N - 1 : 1)) + 2;  // ceil(log2 N) + 2
    auto g = f;
    if (trace) trace->push_back(g);
    iterations = 0;
    while (iterations < cap) {
        auto next = compose_inner(f, g, w);
        ++iterations;
        if (trace) trace->push_back(next);
        bool done = iterates_converged(g, next);
        g = std::move(next);
        if (done) break;
    }
    return g;
}

}  // namespace detail

/// Solves f(s - w g(s)) = g(s) for f in D_0.
template <class T>
InversionResult<T> solve(const DirichletSeries<T>& f, const T& w, SolveMethod method = SolveMethod::triangular)
{
    if (!f.in_d0()) throw SeriesError("solve: f must have zero constant term");
    InversionResult<T> r;
    r.method = method;
    switch (method) {
    case SolveMethod::closed_form: r.g = detail::solve_closed_form(f, w); break;
    case SolveMethod::triangular: r.g = detail::solve_triangular(f, w); break;
    case SolveMethod::fixed_point: r.g = detail::solve_fixed_point(f, w, r.iterations); break;
    }
    auto res = residual(f, r.g, w);
    r.residual_zero = res.is_zero();
    r.residual_norm = detail::residual_magnitude(res);
    return r;
}

/// Both sides of exp(x g) = 1 + x sum_{n>=2} hat(alpha_n)(x + w ln n) n^{-s}, as polynomials in x.
template <class T>
struct ExpIdentityReport {
    bool passed = false;
    std::uint32_t first_failure = 0;
    DirichletSeries<UniPoly<T>> lhs;
    DirichletSeries<UniPoly<T>> rhs;
};

template <class T>
ExpIdentityReport<T> exp_identity(const DirichletSeries<T>& f, const T& w)
{
    using tr = scalar_traits<T>;
    auto g = solve(f, w, SolveMethod::closed_form).g;
    auto fam = family_from_generator(f);
    auto sv = sieve_upto(f.order());
    ExpIdentityReport<T> rep;
    rep.lhs = dexp(g.map([](const T& c) { return UniPoly<T>::monomial(1, c); }));
    rep.rhs = DirichletSeries<UniPoly<T>>::unit(f.order());
    for (std::uint32_t n = 2; n <= f.order(); ++n)
        rep.rhs[n] = poly_shift(fam.hat(n), w * tr::log_int(n, *sv)).times_x();
    rep.passed = true;
    for (std::uint32_t n = 1; n <= f.order(); ++n) {
        if (!(rep.lhs[n] == rep.rhs[n])) {
            rep.passed = false;
            rep.first_failure = n;
            break;
        }
    }
    return rep;
}

/// Same identity with x specialized to a ring element.
template <class T>
std::pair<DirichletSeries<T>, DirichletSeries<T>> exp_identity_at(const DirichletSeries<T>& f, const T& w, const T& x)
{
    auto rep = exp_identity(f, w);
    auto ev = [&](const UniPoly<T>& p) { return p.eval(x); };
    return {rep.lhs.map(ev), rep.rhs.map(ev)};
}

/// g(s + w f(s)) - f(s) for g = solve(f, w); identically zero for a valid solution.
template <class T>
DirichletSeries<T> inverse_check_residual(const DirichletSeries<T>& f, const T& w)
{
    auto g = solve(f, w).g;
    return compose_inner(g, f, scalar_traits<T>::zero() - w) - f;
}

template <class T>
bool inverse_check(const DirichletSeries<T>& f, const T& w)
{
    return inverse_check_residual(f, w).is_zero();
}

/// Solution when f_1 != 0: F = f(s - w f_1) - f_1 is in D_0, and g = f_1 + G.
inline InversionResult<Complex> solve_general(const DirichletSeries<Complex>& f, Complex w,
                                              SolveMethod method = SolveMethod::triangular)
{
    const Complex c1 = f[1];
    auto F = dshift(f, w * c1);
    F[1] = 0.0;
    auto r = solve(F, w, method);
    r.g[1] = c1;
    r.residual_norm = max_abs(compose_general(f, r.g, w) - r.g);
    r.residual_zero = r.residual_norm == 0.0;
    return r;
}

}  // namespace dcp
