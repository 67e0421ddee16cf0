#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dcp/dseries.hpp"
#include "dcp/scalar.hpp"
#include "dcp/sieve.hpp"
#include "dcp/unipoly.hpp"

namespace dcp {

class FamilyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dirichlet convolution polynomials alpha_1..alpha_N, alpha_1 = 1.
template <class T>
class ConvolutionFamily {
public:
    using Poly = UniPoly<T>;

    ConvolutionFamily() = default;
    explicit ConvolutionFamily(std::vector<Poly> polys) : p_(std::move(polys))
    {
        if (p_.empty()) throw FamilyError("ConvolutionFamily: order must be >= 1");
    }

    /// alpha_1 = 1, alpha_n = 0 otherwise.
    static ConvolutionFamily trivial(std::uint32_t order)
    {
        std::vector<Poly> v(order);
        v[0] = Poly::constant(scalar_traits<T>::one());
        return ConvolutionFamily(std::move(v));
    }

    /// Family read from a series with polynomial coefficients.
    static ConvolutionFamily from_series(const DirichletSeries<Poly>& s) { return ConvolutionFamily(s.coeffs()); }

    [[nodiscard]] std::uint32_t order() const { return static_cast<std::uint32_t>(p_.size()); }
    [[nodiscard]] const Poly& operator[](std::uint32_t n) const { return p_.at(n - 1); }
    Poly& operator[](std::uint32_t n) { return p_.at(n - 1); }
    [[nodiscard]] const std::vector<Poly>& polys() const { return p_; }

    /// hat(alpha_n)(x) = alpha_n(x)/x for n >= 2.
    [[nodiscard]] Poly hat(std::uint32_t n) const { return (*this)[n].hat(); }

    /// sum alpha_n(x) n^{-s}
    [[nodiscard]] DirichletSeries<Poly> as_series() const { return DirichletSeries<Poly>(p_); }

    /// Generating series: coefficients hat(alpha_n)(0).
    [[nodiscard]] DirichletSeries<T> generator() const
    {
        DirichletSeries<T> f(order());
        for (std::uint32_t n = 2; n <= order(); ++n) f[n] = (*this)[n].coeff(1);
        return f;
    }

    /// alpha_n evaluated at a point, as a series.
    [[nodiscard]] DirichletSeries<T> values_at(const T& at) const
    {
        DirichletSeries<T> s(order());
        for (std::uint32_t n = 1; n <= order(); ++n) s[n] = (*this)[n].eval(at);
        return s;
    }

    friend bool operator==(const ConvolutionFamily& a, const ConvolutionFamily& b) { return a.p_ == b.p_; }

private:
    std::vector<Poly> p_;
};

/// alpha_n(x) = coefficient of n^{-s} in exp(x f(s)).
template <class T>
ConvolutionFamily<T> family_from_generator(const DirichletSeries<T>& f)
{
    if (!f.in_d0()) throw FamilyError("family_from_generator: generator must have zero constant term");
    auto xf = f.map([](const T& c) { return UniPoly<T>::monomial(1, c); });
    return ConvolutionFamily<T>::from_series(dexp(xf));
}

/// Rebuilds a family from its values alpha_n(y0): the series (1 + sum values_n n^{-s})^{x / y0}.
template <class T>
ConvolutionFamily<T> family_from_values(const DirichletSeries<T>& values, const T& y0)
{
    using tr = scalar_traits<T>;
    if (tr::is_zero(y0)) throw FamilyError("family_from_values: y0 must be nonzero");
    if (!values.is_unit_leading()) throw FamilyError("family_from_values: alpha_1(y0) must equal 1");
    auto exponent = UniPoly<T>::monomial(1, tr::inverse(y0));
    return ConvolutionFamily<T>::from_series(dpow(lift_to_poly(values), exponent));
}

/// beta_1 = 1; hat(beta_n)(x) = hat(alpha_n)(x + w ln n).
template <class T>
ConvolutionFamily<T> beta_transform(const ConvolutionFamily<T>& fam, const T& w)
{
    auto sv = sieve_upto(fam.order());
    auto out = fam;
    for (std::uint32_t n = 2; n <= fam.order(); ++n) {
        T shift = w * scalar_traits<T>::log_int(n, *sv);
        out[n] = poly_shift(fam.hat(n), shift).times_x();
    }
    return out;
}

/// gamma_n(x) = alpha_n(w x)
template <class T>
struct ScaleKind {
    T w;
};

/// gamma_n(x) = sum_{d|n} alpha_d(x) beta_{n/d}(x)
template <class T>
struct ProductKind {
    ConvolutionFamily<T> other;
};

/// gamma_n(x) = c_n alpha_n(x) for completely multiplicative c.
template <class T>
struct TwistKind {
    DirichletSeries<T> c;
};

template <class T>
using TransformKind = std::variant<ScaleKind<T>, ProductKind<T>, TwistKind<T>>;

/// Checks c_{mn} = c_m c_n for all mn <= N. Returns the first offending (m, n).
template <class T>
std::optional<std::pair<std::uint32_t, std::uint32_t>> complete_multiplicativity_violation(const DirichletSeries<T>& c)
{
    for (std::uint32_t m = 1; m <= c.order(); ++m)
        for (std::uint32_t n = m; n <= c.order() / m; ++n)
            if (!(c[m * n] == c[m] * c[n])) return std::pair{m, n};
    return std::nullopt;
}

template <class T>
ConvolutionFamily<T> transform(const ConvolutionFamily<T>& fam, const TransformKind<T>& kind)
{
    return std::visit(
        [&](const auto& k) -> ConvolutionFamily<T> {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ScaleKind<T>>) {
                auto out = fam;
                for (std::uint32_t n = 1; n <= fam.order(); ++n) out[n] = fam[n].scale_argument(k.w);
                return out;
            } else if constexpr (std::is_same_v<K, ProductKind<T>>) {
                if (k.other.order() != fam.order()) throw FamilyError("transform(product): order mismatch");
                return ConvolutionFamily<T>::from_series(dmul(fam.as_series(), k.other.as_series()));
            } else {
                if (k.c.order() != fam.order()) throw FamilyError("transform(twist): order mismatch");
                if (auto bad = complete_multiplicativity_violation(k.c))
                    throw FamilyError("transform(twist): sequence is not completely multiplicative at (" +
                                      std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")");
                auto out = fam;
                for (std::uint32_t n = 1; n <= fam.order(); ++n) out[n] = fam[n] * k.c[n];
                return out;
            }
        },
        kind);
}

/// Outcome of one identity check over n = 1..N.
struct CheckResult {
    std::string name;
    bool passed = true;
    std::uint32_t first_failure = 0;  // 0 when passed
    std::string lhs;
    std::string rhs;
};

struct FamilyReport {
    std::vector<CheckResult> checks;

    [[nodiscard]] bool all_passed() const
    {
        for (auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    [[nodiscard]] const CheckResult& check(const std::string& name) const
    {
        for (auto& c : checks)
            if (c.name == name) return c;
        throw std::out_of_range("FamilyReport: no check named " + name);
    }
};

namespace detail {

inline void record_failure(CheckResult& r, std::uint32_t n, const std::string& lhs, const std::string& rhs)
{
    if (!r.passed) return;
    r.passed = false;
    r.first_failure = n;
    r.lhs = lhs;
    r.rhs = rhs;
}

}  // namespace detail

/// Exact verification of the defining identity and its consequences:
///   convolution   alpha_n(x+y) = sum_{d|n} alpha_d(x) alpha_{n/d}(y)
///   degree        deg alpha_n <= Omega(n)
///   vanishing     alpha_n(0) = 0 for n >= 2
///   prime_hat     hat(alpha_p) constant for prime p
///   integral      alpha_n(x) = sum_{d|n, d>=2} hat(alpha_d)(0) int_0^x alpha_{n/d}
///   log_weighted  ln(n) hat(alpha_n)(x) = sum_{d|n, d>=2} ln(d) hat(alpha_d)(0) alpha_{n/d}(x)
/// Logarithms are L-symbol linear forms, so nothing is divided by ln n.
inline FamilyReport verify_family(const ConvolutionFamily<SymbolicScalar>& fam)
{
    using S = SymbolicScalar;
    using P = UniPoly<S>;
    const std::uint32_t N = fam.order();
    auto sv = sieve_upto(N);
    const S x = S::variable(vars::x), y = S::variable(vars::y), xy = x + y;

    auto named = [](const char* name) {
        CheckResult c;
        c.name = name;
        return c;
    };
    CheckResult unit = named("unit"), conv = named("convolution"), deg = named("degree"), vanish = named("vanishing"),
                prime = named("prime_hat"), integ = named("integral"), logw = named("log_weighted");

    if (!(fam[1] == P::constant(S(1)))) detail::record_failure(unit, 1, to_string(fam[1]), "1");

    std::vector<S> at_x(N + 1), at_y(N + 1);
    for (std::uint32_t n = 1; n <= N; ++n) {
        at_x[n] = fam[n].eval(x);
        at_y[n] = fam[n].eval(y);
    }

    for (std::uint32_t n = 1; n <= N; ++n) {
        auto divs = sv->divisors(n);

        S lhs = fam[n].eval(xy), rhs;
        for (auto d : divs) rhs += at_x[d] * at_y[n / d];
        if (!(lhs == rhs)) detail::record_failure(conv, n, lhs.str(), rhs.str());

        if (n < 2) continue;
        auto omega = static_cast<int>(sv->big_omega(n));
        if (fam[n].degree() > omega)
            detail::record_failure(deg, n, std::to_string(fam[n].degree()), "<= " + std::to_string(omega));

        auto c0 = fam[n].coeff(0);
        if (!c0.is_zero()) {
            detail::record_failure(vanish, n, c0.str(), "0");
            // The remaining checks use the hat operation.
            continue;
        }

        if (sv->is_prime(n) && fam.hat(n).degree() > 0)
            detail::record_failure(prime, n, to_string(fam.hat(n)), "constant");

        P integral_rhs, log_rhs;
        for (auto d : divs) {
            if (d < 2) continue;
            const P& ad = fam[d];
            if (!ad.coeff(0).is_zero()) continue;
            S hat0 = ad.coeff(1);
            if (hat0.is_zero()) continue;
            integral_rhs += poly_integrate(fam[n / d]) * hat0;
            log_rhs += fam[n / d] * (log_symbol(d, *sv) * hat0);
        }
        if (!(fam[n] == integral_rhs)) detail::record_failure(integ, n, to_string(fam[n]), to_string(integral_rhs));
        P log_lhs = fam.hat(n) * log_symbol(n, *sv);
        if (!(log_lhs == log_rhs)) detail::record_failure(logw, n, to_string(log_lhs), to_string(log_rhs));
    }
    return FamilyReport{{unit, conv, deg, vanish, prime, integ, logw}};
}

/// True iff alpha_{mn} = alpha_m alpha_n for every coprime pair with mn <= N.
template <class T>
bool is_multiplicative(const ConvolutionFamily<T>& fam)
{
    const std::uint32_t N = fam.order();
    for (std::uint32_t m = 2; m <= N; ++m)
        for (std::uint32_t n = m + 1; n <= N / m; ++n)
            if (std::gcd(m, n) == 1 && !(fam[m * n] == fam[m] * fam[n])) return false;
    return true;
}

}  // namespace dcp
