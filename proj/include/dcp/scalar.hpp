#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <stdexcept>

#include "dcp/rational.hpp"
#include "dcp/sieve.hpp"
#include "dcp/symbolic.hpp"

namespace dcp {

using Complex = std::complex<double>;

/// Ring-specific hooks used by the generic series and polynomial code.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<SymbolicScalar> {
    static constexpr bool exact = true;
    static SymbolicScalar zero() { return {}; }
    static SymbolicScalar one() { return SymbolicScalar(1); }
    static SymbolicScalar from_rational(const Rational& r) { return SymbolicScalar(r); }
    static bool is_zero(const SymbolicScalar& s) { return s.is_zero(); }
    static SymbolicScalar log_int(std::uint32_t n, const Sieve& sv) { return log_symbol(n, sv); }
    static SymbolicScalar inverse(const SymbolicScalar& s)
    {
        if (!s.is_constant() || s.is_zero())
            throw std::domain_error("inverse: not an invertible constant: " + s.str());
        return SymbolicScalar(Rational(1) / s.constant_value());
    }
    static double magnitude(const SymbolicScalar& s) { return std::abs(eval_numeric(s)); }
};

template <>
struct scalar_traits<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return 0.0; }
    static Complex one() { return 1.0; }
    static Complex from_rational(const Rational& r) { return r.to_double(); }
    static bool is_zero(const Complex& c) { return c == 0.0; }
    static Complex log_int(std::uint32_t n, const Sieve&) { return std::log(static_cast<double>(n)); }
    static Complex inverse(const Complex& c)
    {
        if (c == 0.0) throw std::domain_error("inverse: zero");
        return 1.0 / c;
    }
    static double magnitude(const Complex& c) { return std::abs(c); }
};

template <class T>
concept Scalar = requires(const T& a, const T& b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { scalar_traits<T>::zero() } -> std::convertible_to<T>;
    { scalar_traits<T>::is_zero(a) } -> std::convertible_to<bool>;
};

/// Generalized binomial coefficient t(t-1)...(t-j+1)/j! in any scalar ring.
template <class T>
T binomial(const T& t, unsigned j)
{
    using tr = scalar_traits<T>;
    T acc = tr::one();
    for (unsigned i = 0; i < j; ++i) acc = acc * (t - tr::from_rational(Rational(static_cast<long>(i))));
    return acc * tr::from_rational(Rational(1) / factorial(j));
}

}  // namespace dcp
