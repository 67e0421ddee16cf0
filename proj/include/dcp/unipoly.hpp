#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dcp/scalar.hpp"

namespace dcp {

/// Dense univariate polynomial in x with coefficients in T. Trailing zeros are trimmed.
template <class T>
class UniPoly {
    using tr = scalar_traits<T>;

public:
    UniPoly() = default;
    explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    UniPoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static UniPoly constant(const T& c) { return UniPoly(std::vector<T>{c}); }
    static UniPoly x() { return UniPoly(std::vector<T>{tr::zero(), tr::one()}); }
    static UniPoly monomial(unsigned k, const T& c = tr::one())
    {
        std::vector<T> v(k + 1, tr::zero());
        v[k] = c;
        return UniPoly(std::move(v));
    }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] const std::vector<T>& coeffs() const { return c_; }
    [[nodiscard]] T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : tr::zero(); }

    /// Horner evaluation at a ring element.
    template <class U>
    [[nodiscard]] U eval(const U& at) const
    {
        U acc = scalar_traits<U>::zero();
        for (auto i = c_.size(); i-- > 0;) acc = acc * at + U(c_[i]);
        return acc;
    }

    /// p(x)/x; requires p(0) = 0.
    [[nodiscard]] UniPoly hat() const
    {
        if (c_.empty()) return {};
        if (!tr::is_zero(c_[0])) throw std::domain_error("UniPoly::hat: nonzero constant term");
        return UniPoly(std::vector<T>(c_.begin() + 1, c_.end()));
    }

    [[nodiscard]] UniPoly times_x() const
    {
        if (c_.empty()) return {};
        std::vector<T> v;
        v.reserve(c_.size() + 1);
        v.push_back(tr::zero());
        v.insert(v.end(), c_.begin(), c_.end());
        return UniPoly(std::move(v));
    }

    /// p(w*x)
    [[nodiscard]] UniPoly scale_argument(const T& w) const
    {
        std::vector<T> v = c_;
        T pw = tr::one();
        for (auto& ci : v) {
            ci = ci * pw;
            pw = pw * w;
        }
        return UniPoly(std::move(v));
    }

    UniPoly& operator+=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), tr::zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), tr::zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(const UniPoly& a) { return UniPoly() - a; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> v(a.c_.size() + b.c_.size() - 1, tr::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (tr::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(v));
    }

    friend UniPoly operator*(const UniPoly& a, const T& s)
    {
        std::vector<T> v = a.c_;
        for (auto& ci : v) ci = ci * s;
        return UniPoly(std::move(v));
    }
    friend UniPoly operator*(const T& s, const UniPoly& a) { return a * s; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

private:
    void trim()
    {
        while (!c_.empty() && tr::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

template <class T>
struct scalar_traits<UniPoly<T>> {
    using base = scalar_traits<T>;
    static constexpr bool exact = base::exact;
    static UniPoly<T> zero() { return {}; }
    static UniPoly<T> one() { return UniPoly<T>::constant(base::one()); }
    static UniPoly<T> from_rational(const Rational& r) { return UniPoly<T>::constant(base::from_rational(r)); }
    static bool is_zero(const UniPoly<T>& p) { return p.is_zero(); }
    static UniPoly<T> log_int(std::uint32_t n, const Sieve& sv) { return UniPoly<T>::constant(base::log_int(n, sv)); }
    static UniPoly<T> inverse(const UniPoly<T>& p)
    {
        if (p.degree() != 0) throw std::domain_error("inverse: polynomial is not a nonzero constant");
        return UniPoly<T>::constant(base::inverse(p.coeff(0)));
    }
};

/// C(x, k) = x(x-1)...(x-k+1)/k!
template <class T = SymbolicScalar>
UniPoly<T> binomial_poly(unsigned k)
{
    return binomial(UniPoly<T>::x(), k);
}

/// q(x) = p(x + a), expanded as q_j = sum_{i>=j} C(i,j) p_i a^{i-j}.
template <class T>
UniPoly<T> poly_shift(const UniPoly<T>& p, const T& a)
{
    using tr = scalar_traits<T>;
    const auto& c = p.coeffs();
    const std::size_t n = c.size();
    std::vector<T> apow(n, tr::one());
    for (std::size_t i = 1; i < n; ++i) apow[i] = apow[i - 1] * a;
    // Pascal row, updated in place.
    std::vector<Rational> binom(n, Rational(0));
    std::vector<T> out(n, tr::zero());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j > 0; --j) binom[j] += binom[j - 1];
        binom[0] = Rational(1);
        if (tr::is_zero(c[i])) continue;
        for (std::size_t j = 0; j <= i; ++j)
            out[j] = out[j] + c[i] * apow[i - j] * tr::from_rational(binom[j]);
    }
    return UniPoly<T>(std::move(out));
}

/// Antiderivative vanishing at 0.
template <class T>
UniPoly<T> poly_integrate(const UniPoly<T>& p)
{
    using tr = scalar_traits<T>;
    if (p.is_zero()) return {};
    std::vector<T> v(p.coeffs().size() + 1, tr::zero());
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        v[i + 1] = p.coeffs()[i] * tr::from_rational(Rational(1, static_cast<long>(i + 1)));
    return UniPoly<T>(std::move(v));
}

/// Exact polynomial as an element of the multivariate ring in variable v.
inline SymbolicScalar to_symbolic(const UniPoly<SymbolicScalar>& p, Var v = vars::x)
{
    return p.eval(SymbolicScalar::variable(v));
}

/// Inverse of to_symbolic: coefficients of powers of v.
inline UniPoly<SymbolicScalar> from_symbolic(const SymbolicScalar& s, Var v = vars::x)
{
    return UniPoly<SymbolicScalar>(s.collect(v));
}

inline std::string to_string(const UniPoly<SymbolicScalar>& p) { return to_symbolic(p).str(); }

inline Complex eval_numeric(const UniPoly<SymbolicScalar>& p, const Assignment& at)
{
    return eval_numeric(to_symbolic(p), at);
}

}  // namespace dcp
