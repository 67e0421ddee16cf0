#pragma once

// Classical power-series Lagrange inversion, written without any Dirichlet
// series code so it can serve as an independent oracle.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dcp/scalar.hpp"
#include "dcp/unipoly.hpp"

namespace dcp {

/// Coefficients a_0..a_M of a power series in z.
template <class T>
struct PowerSeriesCoeffs {
    std::vector<T> a;

    [[nodiscard]] std::size_t order() const { return a.empty() ? 0 : a.size() - 1; }
    [[nodiscard]] const T& operator[](std::size_t i) const { return a.at(i); }
    friend bool operator==(const PowerSeriesCoeffs&, const PowerSeriesCoeffs&) = default;
};

namespace ps {

/// Cauchy product truncated at degree m.
template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b, std::size_t m)
{
    using tr = scalar_traits<T>;
    std::vector<T> out(m + 1, tr::zero());
    for (std::size_t i = 0; i < a.size() && i <= m; ++i) {
        if (tr::is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= m; ++j) out[i + j] = out[i + j] + a[i] * b[j];
    }
    return out;
}

/// (1 + h)^t for h with zero constant term, truncated at degree m.
template <class T>
std::vector<T> pow1p(const std::vector<T>& h, const T& t, std::size_t m)
{
    using tr = scalar_traits<T>;
    std::vector<T> acc(m + 1, tr::zero()), power(m + 1, tr::zero());
    acc[0] = power[0] = tr::one();
    for (unsigned j = 1; j <= m; ++j) {
        power = mul(power, h, m);
        T bj = binomial(t, j);
        for (std::size_t i = 0; i <= m; ++i) acc[i] = acc[i] + bj * power[i];
    }
    return acc;
}

/// exp(h) for h with zero constant term, truncated at degree m.
template <class T>
std::vector<T> exp(const std::vector<T>& h, std::size_t m)
{
    using tr = scalar_traits<T>;
    std::vector<T> acc(m + 1, tr::zero()), power(m + 1, tr::zero());
    acc[0] = power[0] = tr::one();
    for (unsigned j = 1; j <= m; ++j) {
        power = mul(power, h, m);
        T inv = tr::from_rational(Rational(1) / factorial(j));
        for (std::size_t i = 0; i <= m; ++i) acc[i] = acc[i] + inv * power[i];
    }
    return acc;
}

}  // namespace ps

/// a_n(t): coefficients of A(z)^t as polynomials in t.
template <class T>
std::vector<UniPoly<T>> power_coefficient_polys(const PowerSeriesCoeffs<T>& A, std::size_t m)
{
    using P = UniPoly<T>;
    if (A.a.empty() || !(A.a[0] == scalar_traits<T>::one())) throw std::invalid_argument("classical_oracle: a_0 must be 1");
    std::vector<P> h(m + 1);
    for (std::size_t i = 1; i <= m && i < A.a.size(); ++i) h[i] = P::constant(A.a[i]);
    return ps::pow1p(h, P::x(), m);
}

/// Coefficients b_0..b_M of B(z)^x where A(z B(z)^w) = B(z):
/// b_n(x) = x/(x + n w) a_n(x + n w), taken in the polynomial form x * hat(a_n)(x + n w).
template <class T>
PowerSeriesCoeffs<T> classical_oracle(const PowerSeriesCoeffs<T>& A, const T& w, const T& x, std::size_t m)
{
    using tr = scalar_traits<T>;
    auto an = power_coefficient_polys(A, m);
    PowerSeriesCoeffs<T> B;
    B.a.assign(m + 1, tr::zero());
    B.a[0] = tr::one();
    for (std::size_t n = 1; n <= m; ++n) {
        T arg = x + tr::from_rational(Rational(static_cast<long>(n))) * w;
        B.a[n] = x * an[n].hat().eval(arg);
    }
    return B;
}

}  // namespace dcp
