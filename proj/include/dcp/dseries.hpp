#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dcp/scalar.hpp"
#include "dcp/sieve.hpp"
#include "dcp/unipoly.hpp"

namespace dcp {

class SeriesError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dirichlet series sum c_n n^{-s} known modulo terms with n > N.
template <class T>
class DirichletSeries {
    using tr = scalar_traits<T>;

public:
    DirichletSeries() = default;
    explicit DirichletSeries(std::uint32_t order) : c_(order, tr::zero())
    {
        if (order == 0) throw SeriesError("DirichletSeries: order must be >= 1");
    }
    explicit DirichletSeries(std::vector<T> coeffs) : c_(std::move(coeffs))
    {
        if (c_.empty()) throw SeriesError("DirichletSeries: order must be >= 1");
    }

    /// Convolution unit: c_1 = 1.
    static DirichletSeries unit(std::uint32_t order)
    {
        DirichletSeries s(order);
        s.c_[0] = tr::one();
        return s;
    }

    /// Single term c * n^{-s}, dropped if n > order.
    static DirichletSeries monomial(std::uint32_t order, std::uint32_t n, const T& c)
    {
        DirichletSeries s(order);
        if (n >= 1 && n <= order) s.c_[n - 1] = c;
        return s;
    }

    [[nodiscard]] std::uint32_t order() const { return static_cast<std::uint32_t>(c_.size()); }

    /// Coefficient at index n (1-based).
    [[nodiscard]] const T& operator[](std::uint32_t n) const { return c_.at(n - 1); }
    T& operator[](std::uint32_t n) { return c_.at(n - 1); }
    [[nodiscard]] const std::vector<T>& coeffs() const { return c_; }

    [[nodiscard]] bool in_d0() const { return tr::is_zero(c_[0]); }
    [[nodiscard]] bool is_unit_leading() const { return c_[0] == tr::one(); }
    [[nodiscard]] bool is_zero() const
    {
        for (auto& c : c_)
            if (!tr::is_zero(c)) return false;
        return true;
    }

    /// First index with a nonzero coefficient, 0 if none.
    [[nodiscard]] std::uint32_t first_nonzero() const
    {
        for (std::uint32_t n = 1; n <= order(); ++n)
            if (!tr::is_zero(c_[n - 1])) return n;
        return 0;
    }

    [[nodiscard]] DirichletSeries truncate(std::uint32_t m) const
    {
        if (m == 0) throw SeriesError("truncate: order must be >= 1");
        std::vector<T> v(m, tr::zero());
        for (std::uint32_t i = 0; i < std::min(m, order()); ++i) v[i] = c_[i];
        return DirichletSeries(std::move(v));
    }

    DirichletSeries& operator+=(const DirichletSeries& o)
    {
        same_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        return *this;
    }
    DirichletSeries& operator-=(const DirichletSeries& o)
    {
        same_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        return *this;
    }
    friend DirichletSeries operator+(DirichletSeries a, const DirichletSeries& b) { return a += b; }
    friend DirichletSeries operator-(DirichletSeries a, const DirichletSeries& b) { return a -= b; }

    friend DirichletSeries operator*(const T& s, DirichletSeries a)
    {
        for (auto& c : a.c_) c = s * c;
        return a;
    }

    friend bool operator==(const DirichletSeries& a, const DirichletSeries& b) { return a.c_ == b.c_; }

    /// Coefficientwise image under a ring map.
    template <class F>
    [[nodiscard]] auto map(F&& f) const -> DirichletSeries<decltype(f(std::declval<const T&>()))>
    {
        using U = decltype(f(std::declval<const T&>()));
        std::vector<U> v;
        v.reserve(c_.size());
        for (auto& c : c_) v.push_back(f(c));
        return DirichletSeries<U>(std::move(v));
    }

private:
    void same_order(const DirichletSeries& o) const
    {
        if (o.order() != order()) throw SeriesError("order mismatch");
    }

    std::vector<T> c_;
};

/// floor(log2 n) for n >= 1: the largest j with 2^j <= n.
inline unsigned floor_log2(std::uint32_t n) { return static_cast<unsigned>(std::bit_width(n)) - 1; }

/// Dirichlet convolution: c_n = sum_{d|n} a_d b_{n/d}.
template <class T>
DirichletSeries<T> dmul(const DirichletSeries<T>& a, const DirichletSeries<T>& b)
{
    using tr = scalar_traits<T>;
    if (a.order() != b.order()) throw SeriesError("dmul: order mismatch");
    const std::uint32_t n = a.order();
    DirichletSeries<T> out(n);
    for (std::uint32_t d = 1; d <= n; ++d) {
        if (tr::is_zero(a[d])) continue;
        for (std::uint32_t m = 1; m <= n / d; ++m) {
            if (tr::is_zero(b[m])) continue;
            out[d * m] = out[d * m] + a[d] * b[m];
        }
    }
    return out;
}

/// exp(h) for h in D_0, via sum_j h^j / j! with h^j supported on n >= 2^j.
template <class T>
DirichletSeries<T> dexp(const DirichletSeries<T>& h)
{
    using tr = scalar_traits<T>;
    if (!h.in_d0()) throw SeriesError("dexp: argument must have zero constant term");
    const std::uint32_t n = h.order();
    auto acc = DirichletSeries<T>::unit(n);
    if (n == 1) return acc;
    acc += h;
    auto power = h;  // h^j / j!
    for (unsigned j = 2; j <= floor_log2(n); ++j) {
        power = tr::from_rational(Rational(1, j)) * dmul(power, h);
        acc += power;
    }
    return acc;
}

/// log(u) for u with c_1 = 1, via the alternating power sum of u - 1.
template <class T>
DirichletSeries<T> dlog(const DirichletSeries<T>& u)
{
    using tr = scalar_traits<T>;
    if (!u.is_unit_leading()) throw SeriesError("dlog: argument must have constant term 1");
    const std::uint32_t n = u.order();
    auto v = u - DirichletSeries<T>::unit(n);
    DirichletSeries<T> acc(n);
    auto power = v;
    for (unsigned j = 1; j <= floor_log2(n); ++j) {
        if (j > 1) power = dmul(power, v);
        long sgn = (j % 2 == 1) ? 1 : -1;
        acc += tr::from_rational(Rational(sgn, j)) * power;
    }
    return acc;
}

/// u^t = sum_j C(t, j) (u - 1)^j for u with c_1 = 1 and any ring element t.
template <class T>
DirichletSeries<T> dpow(const DirichletSeries<T>& u, const T& t)
{
    if (!u.is_unit_leading()) throw SeriesError("dpow: argument must have constant term 1");
    const std::uint32_t n = u.order();
    auto v = u - DirichletSeries<T>::unit(n);
    auto acc = DirichletSeries<T>::unit(n);
    auto power = DirichletSeries<T>::unit(n);
    for (unsigned j = 1; j <= floor_log2(n); ++j) {
        power = dmul(power, v);
        acc += binomial(t, j) * power;
    }
    return acc;
}

/// Lifts a series to coefficients in UniPoly<T> (constants in x).
template <class T>
DirichletSeries<UniPoly<T>> lift_to_poly(const DirichletSeries<T>& s)
{
    return s.map([](const T& c) { return UniPoly<T>::constant(c); });
}

/// u^x with x the polynomial indeterminate: coefficient n is a polynomial c_n(x).
template <class T>
DirichletSeries<UniPoly<T>> dpow_x(const DirichletSeries<T>& u)
{
    return dpow(lift_to_poly(u), UniPoly<T>::x());
}

/// d/ds: c_n -> -ln(n) c_n.
template <class T>
DirichletSeries<T> dderiv(const DirichletSeries<T>& f)
{
    using tr = scalar_traits<T>;
    auto sv = sieve_upto(f.order());
    DirichletSeries<T> out(f.order());
    for (std::uint32_t n = 2; n <= f.order(); ++n) {
        if (tr::is_zero(f[n])) continue;
        out[n] = (tr::zero() - tr::log_int(n, *sv)) * f[n];
    }
    return out;
}

/// f(s - a): c_n -> c_n n^a.
inline DirichletSeries<Complex> dshift(const DirichletSeries<Complex>& f, Complex a)
{
    DirichletSeries<Complex> out(f.order());
    for (std::uint32_t n = 1; n <= f.order(); ++n) out[n] = f[n] * std::pow(static_cast<double>(n), a);
    return out;
}

/// Exact vertical shift; only integer a keeps n^a rational.
inline DirichletSeries<SymbolicScalar> dshift(const DirichletSeries<SymbolicScalar>& f, const Rational& a)
{
    if (!a.is_integer()) throw SeriesError("dshift: exact mode requires an integer shift, got " + a.str());
    long e = a.numerator().get_si();
    DirichletSeries<SymbolicScalar> out(f.order());
    for (std::uint32_t n = 1; n <= f.order(); ++n)
        out[n] = f[n] * Rational(static_cast<long>(n)).pow(e);
    return out;
}

namespace detail {

/// Adds coeff * k^{-s} * exp(w ln k * g) into out, with g in D_0. Only the first
/// order/k coefficients of the exponential contribute.
template <class T>
void accumulate_composed_term(DirichletSeries<T>& out, std::uint32_t k, const T& coeff,
                              const DirichletSeries<T>& g, const T& w, const Sieve& sv)
{
    using tr = scalar_traits<T>;
    const std::uint32_t m = out.order() / k;
    if (m == 0) return;
    auto e = dexp((w * tr::log_int(k, sv)) * g.truncate(m));
    for (std::uint32_t j = 1; j <= m; ++j)
        if (!tr::is_zero(e[j])) out[k * j] = out[k * j] + coeff * e[j];
}

}  // namespace detail

/// Truncation of f(s - w g(s)) = sum_k c_k k^{-s} exp(w ln(k) g(s)) for f, g in D_0.
template <class T>
DirichletSeries<T> compose_inner(const DirichletSeries<T>& f, const DirichletSeries<T>& g, const T& w)
{
    using tr = scalar_traits<T>;
    if (f.order() != g.order()) throw SeriesError("compose_inner: order mismatch");
    if (!f.in_d0() || !g.in_d0()) throw SeriesError("compose_inner: arguments must have zero constant term");
    auto sv = sieve_upto(f.order());
    DirichletSeries<T> out(f.order());
    for (std::uint32_t k = 2; k <= f.order(); ++k)
        if (!tr::is_zero(f[k])) detail::accumulate_composed_term(out, k, f[k], g, w, *sv);
    return out;
}

/// f(s - w g(s)) with arbitrary constant terms (numeric). The inner constant g_1
/// contributes the factor k^{w g_1}.
inline DirichletSeries<Complex> compose_general(const DirichletSeries<Complex>& f,
                                                const DirichletSeries<Complex>& g, Complex w)
{
    if (f.order() != g.order()) throw SeriesError("compose_general: order mismatch");
    auto sv = sieve_upto(f.order());
    auto g0 = g;
    g0[1] = 0.0;
    DirichletSeries<Complex> out(f.order());
    out[1] = f[1];
    for (std::uint32_t k = 2; k <= f.order(); ++k) {
        if (f[k] == 0.0) continue;
        Complex c = f[k] * std::pow(static_cast<double>(k), w * g[1]);
        detail::accumulate_composed_term(out, k, c, g0, w, *sv);
    }
    return out;
}

/// exp(h) by the log-derivative recursion E_n = (1/ln n) sum_{d|n, d>=2} ln(d) h_d E_{n/d}.
/// Divides by ln n, so numeric only; used to cross-check dexp.
inline DirichletSeries<Complex> dexp_recursive(const DirichletSeries<Complex>& h)
{
    if (!h.in_d0()) throw SeriesError("dexp_recursive: argument must have zero constant term");
    const std::uint32_t n = h.order();
    auto sv = sieve_upto(n);
    auto e = DirichletSeries<Complex>::unit(n);
    for (std::uint32_t i = 2; i <= n; ++i) {
        Complex acc = 0.0;
        for (auto d : sv->divisors(i)) {
            if (d < 2) continue;
            acc += std::log(static_cast<double>(d)) * h[d] * e[i / d];
        }
        e[i] = acc / std::log(static_cast<double>(i));
    }
    return e;
}

/// Max-norm of a numeric series.
inline double max_abs(const DirichletSeries<Complex>& s)
{
    double m = 0.0;
    for (auto& c : s.coeffs()) m = std::max(m, std::abs(c));
    return m;
}

/// Sum c_n n^{-s} over the retained window.
inline Complex evaluate(const DirichletSeries<Complex>& f, Complex s)
{
    Complex acc = 0.0;
    for (std::uint32_t n = 1; n <= f.order(); ++n)
        if (f[n] != 0.0) acc += f[n] * std::pow(static_cast<double>(n), -s);
    return acc;
}

/// Exact series evaluated coefficientwise in binary64.
inline DirichletSeries<Complex> to_numeric(const DirichletSeries<SymbolicScalar>& s, const Assignment& at = {})
{
    return s.map([&](const SymbolicScalar& c) { return eval_numeric(c, at); });
}

}  // namespace dcp
