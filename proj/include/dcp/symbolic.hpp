#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcp/rational.hpp"
#include "dcp/sieve.hpp"

namespace dcp {

/// Indeterminate of the exact coefficient ring. Ids 0..3 are x, y, w, v;
/// id 16 + p is the log symbol L_p standing for ln p.
struct Var {
    std::uint32_t id = 0;

    friend auto operator<=>(const Var&, const Var&) = default;

    [[nodiscard]] bool is_log() const { return id >= kLogBase; }
    [[nodiscard]] std::uint32_t log_prime() const { return id - kLogBase; }

    [[nodiscard]] std::string name() const
    {
        switch (id) {
        case 0: return "x";
        case 1: return "y";
        case 2: return "w";
        case 3: return "v";
        default: break;
        }
        if (is_log()) return "L" + std::to_string(log_prime());
        return "z" + std::to_string(id);
    }

    static constexpr std::uint32_t kLogBase = 16;
};

namespace vars {
inline constexpr Var x{0};
inline constexpr Var y{1};
inline constexpr Var w{2};
inline constexpr Var v{3};
inline Var log_of_prime(std::uint32_t p) { return Var{Var::kLogBase + p}; }
}  // namespace vars

/// Product of variable powers, stored as (var id, exponent) pairs sorted by id.
class Monomial {
public:
    using Entry = std::pair<std::uint32_t, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(Var v, std::uint32_t e = 1)
    {
        if (e > 0) entries_.emplace_back(v.id, e);
    }

    [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
    [[nodiscard]] bool is_one() const { return entries_.empty(); }

    [[nodiscard]] std::uint32_t degree() const
    {
        std::uint32_t d = 0;
        for (auto& [v, e] : entries_) d += e;
        return d;
    }

    [[nodiscard]] std::uint32_t exponent(Var v) const
    {
        for (auto& [id, e] : entries_)
            if (id == v.id) return e;
        return 0;
    }

    [[nodiscard]] Monomial without(Var v) const
    {
        Monomial m;
        for (auto& en : entries_)
            if (en.first != v.id) m.entries_.push_back(en);
        return m;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial m;
        m.entries_.reserve(a.entries_.size() + b.entries_.size());
        auto i = a.entries_.begin(), j = b.entries_.begin();
        while (i != a.entries_.end() || j != b.entries_.end()) {
            if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
                m.entries_.push_back(*i++);
            } else if (i == a.entries_.end() || j->first < i->first) {
                m.entries_.push_back(*j++);
            } else {
                m.entries_.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        return m;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

    /// Graded lexicographic: lower total degree first; ties broken so that
    /// a higher power of an earlier variable (x < y < w < v < L2 < L3 ...) comes first.
    friend bool operator<(const Monomial& a, const Monomial& b)
    {
        auto da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        auto i = a.entries_.begin(), j = b.entries_.begin();
        for (; i != a.entries_.end() && j != b.entries_.end(); ++i, ++j) {
            if (i->first != j->first) return i->first < j->first;
            if (i->second != j->second) return i->second > j->second;
        }
        return false;
    }

    [[nodiscard]] std::string str() const
    {
        std::string s;
        for (auto& [id, e] : entries_) {
            if (!s.empty()) s += '*';
            s += Var{id}.name();
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    std::vector<Entry> entries_;
};

/// Sparse multivariate polynomial with rational coefficients over x, y, w, v and
/// the log symbols L_p. Terms are kept sorted in monomial order with no zero
/// coefficients, so structural equality is ring equality.
class SymbolicScalar {
public:
    using Term = std::pair<Monomial, Rational>;

    SymbolicScalar() = default;
    SymbolicScalar(const Rational& c)  // NOLINT(google-explicit-constructor)
    {
        if (!c.is_zero()) terms_.emplace_back(Monomial{}, c);
    }
    SymbolicScalar(long c) : SymbolicScalar(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static SymbolicScalar variable(Var v) { return term(Monomial(v), Rational(1)); }

    static SymbolicScalar term(Monomial m, Rational c)
    {
        SymbolicScalar s;
        if (!c.is_zero()) s.terms_.emplace_back(std::move(m), std::move(c));
        return s;
    }

    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }

    /// Value of a constant element. Throws if any variable occurs.
    [[nodiscard]] Rational constant_value() const
    {
        if (!is_constant()) throw std::domain_error("SymbolicScalar: not a constant: " + str());
        return terms_.empty() ? Rational(0) : terms_[0].second;
    }

    /// Constant term (coefficient of the empty monomial).
    [[nodiscard]] Rational constant_term() const
    {
        if (!terms_.empty() && terms_[0].first.is_one()) return terms_[0].second;
        return Rational(0);
    }

    [[nodiscard]] std::uint32_t degree_in(Var v) const
    {
        std::uint32_t d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
        return d;
    }

    [[nodiscard]] std::set<Var> variables() const
    {
        std::set<Var> out;
        for (auto& [m, c] : terms_)
            for (auto& [id, e] : m.entries()) out.insert(Var{id});
        return out;
    }

    [[nodiscard]] bool has_nonnegative_coefficients() const
    {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const Term& t) { return t.second.sign() >= 0; });
    }

    /// Coefficients of v^0, v^1, ... as elements free of v.
    [[nodiscard]] std::vector<SymbolicScalar> collect(Var v) const
    {
        std::vector<std::vector<Term>> parts(degree_in(v) + 1);
        for (auto& [m, c] : terms_) parts[m.exponent(v)].emplace_back(m.without(v), c);
        std::vector<SymbolicScalar> out;
        out.reserve(parts.size());
        for (auto& p : parts) out.push_back(from_terms(std::move(p)));
        return out;
    }

    /// Replaces every occurrence of v by value.
    [[nodiscard]] SymbolicScalar substitute(Var v, const SymbolicScalar& value) const
    {
        auto parts = collect(v);
        SymbolicScalar acc;
        for (auto i = parts.size(); i-- > 0;) acc = acc * value + parts[i];
        return acc;
    }

    SymbolicScalar& operator+=(const SymbolicScalar& o) { return *this = add(*this, o, false); }
    SymbolicScalar& operator-=(const SymbolicScalar& o) { return *this = add(*this, o, true); }
    SymbolicScalar& operator*=(const SymbolicScalar& o) { return *this = *this * o; }

    friend SymbolicScalar operator+(const SymbolicScalar& a, const SymbolicScalar& b) { return add(a, b, false); }
    friend SymbolicScalar operator-(const SymbolicScalar& a, const SymbolicScalar& b) { return add(a, b, true); }
    friend SymbolicScalar operator-(SymbolicScalar a)
    {
        for (auto& t : a.terms_) t.second = -t.second;
        return a;
    }

    friend SymbolicScalar operator*(const SymbolicScalar& a, const SymbolicScalar& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_constant()) return scale(b, a.terms_[0].second);
        if (b.is_constant()) return scale(a, b.terms_[0].second);
        std::vector<Term> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) prod.emplace_back(ma * mb, ca * cb);
        return from_terms(std::move(prod));
    }

    friend SymbolicScalar operator*(const SymbolicScalar& a, const Rational& r) { return scale(a, r); }
    friend SymbolicScalar operator*(const Rational& r, const SymbolicScalar& a) { return scale(a, r); }

    friend bool operator==(const SymbolicScalar& a, const SymbolicScalar& b) { return a.terms_ == b.terms_; }

    [[nodiscard]] SymbolicScalar pow(unsigned e) const
    {
        SymbolicScalar acc(1), base = *this;
        while (e > 0) {
            if (e & 1U) acc *= base;
            e >>= 1U;
            if (e > 0) base *= base;
        }
        return acc;
    }

    /// Canonical text form, e.g. "1/2*x^2 + w*L2 - 3".
    [[nodiscard]] std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [m, c] : terms_) {
            bool neg = c.sign() < 0;
            Rational mag = neg ? -c : c;
            if (first) {
                if (neg) s += '-';
            } else {
                s += neg ? " - " : " + ";
            }
            first = false;
            if (m.is_one()) {
                s += mag.str();
            } else {
                if (!mag.is_one()) s += mag.str() + "*";
                s += m.str();
            }
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const SymbolicScalar& s) { return os << s.str(); }

    static SymbolicScalar parse(std::string_view text);

    /// Sorts, merges equal monomials and drops zeros.
    static SymbolicScalar from_terms(std::vector<Term> ts)
    {
        std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        SymbolicScalar s;
        for (auto& t : ts) {
            if (!s.terms_.empty() && s.terms_.back().first == t.first) {
                s.terms_.back().second += t.second;
                if (s.terms_.back().second.is_zero()) s.terms_.pop_back();
            } else if (!t.second.is_zero()) {
                s.terms_.push_back(std::move(t));
            }
        }
        return s;
    }

private:
    static SymbolicScalar scale(const SymbolicScalar& a, const Rational& r)
    {
        if (r.is_zero()) return {};
        SymbolicScalar s = a;
        for (auto& t : s.terms_) t.second *= r;
        return s;
    }

    static SymbolicScalar add(const SymbolicScalar& a, const SymbolicScalar& b, bool negate_b)
    {
        SymbolicScalar s;
        s.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin(), j = b.terms_.begin();
        auto push_b = [&](const Term& t) {
            s.terms_.emplace_back(t.first, negate_b ? -t.second : t.second);
        };
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                s.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                push_b(*j++);
            } else {
                Rational c = negate_b ? i->second - j->second : i->second + j->second;
                if (!c.is_zero()) s.terms_.emplace_back(i->first, std::move(c));
                ++i;
                ++j;
            }
        }
        return s;
    }

    std::vector<Term> terms_;
};

/// Error raised by SymbolicScalar::parse with the offending character offset.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " at position " + std::to_string(pos)), pos_(pos)
    {
    }
    [[nodiscard]] std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

class ScalarParser {
public:
    explicit ScalarParser(std::string_view s) : s_(s) {}

    SymbolicScalar run()
    {
        skip();
        if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
        bool neg = false;
        if (peek('-')) {
            ++pos_;
            neg = true;
        } else if (peek('+')) {
            ++pos_;
        }
        SymbolicScalar acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip();
            if (pos_ == s_.size()) break;
            if (peek('+')) {
                ++pos_;
                acc += term();
            } else if (peek('-')) {
                ++pos_;
                acc -= term();
            } else {
                throw ParseError("expected '+' or '-'", pos_);
            }
        }
        return acc;
    }

private:
    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string digits()
    {
        skip();
        auto start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected digits", pos_);
        return std::string(s_.substr(start, pos_ - start));
    }

    SymbolicScalar term()
    {
        SymbolicScalar acc = factor();
        while (peek('*')) {
            ++pos_;
            acc *= factor();
        }
        return acc;
    }

    SymbolicScalar factor()
    {
        skip();
        if (pos_ == s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto at = pos_;
            std::string num = digits();
            std::string den = "1";
            if (peek('/')) {
                ++pos_;
                den = digits();
            }
            try {
                return SymbolicScalar(Rational::parse(num + "/" + den));
            } catch (const std::exception& e) {
                throw ParseError(e.what(), at);
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            auto at = pos_;
            auto start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Var v = name_to_var(std::string(s_.substr(start, pos_ - start)), at);
            std::uint32_t e = 1;
            if (peek('^')) {
                ++pos_;
                e = static_cast<std::uint32_t>(std::stoul(digits()));
            }
            return SymbolicScalar::term(Monomial(v, e), Rational(1));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    static Var name_to_var(const std::string& name, std::size_t at)
    {
        if (name == "x") return vars::x;
        if (name == "y") return vars::y;
        if (name == "w") return vars::w;
        if (name == "v") return vars::v;
        if (name.size() > 1 && name[0] == 'L') {
            auto rest = name.substr(1);
            if (std::all_of(rest.begin(), rest.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                auto p = static_cast<std::uint32_t>(std::stoul(rest));
                if (p >= 2 && Sieve(p).is_prime(p)) return vars::log_of_prime(p);
            }
        }
        throw ParseError("unknown variable '" + name + "'", at);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline SymbolicScalar SymbolicScalar::parse(std::string_view text)
{
    return detail::ScalarParser(text).run();
}

/// ln n as the linear form sum m_i * L_{p_i} over the factorization n = prod p_i^{m_i}.
inline SymbolicScalar log_symbol(std::uint32_t n, const Sieve& sieve)
{
    std::vector<SymbolicScalar::Term> ts;
    for (auto [p, m] : sieve.factorize(n)) ts.emplace_back(Monomial(vars::log_of_prime(p)), Rational(m));
    return SymbolicScalar::from_terms(std::move(ts));
}

inline SymbolicScalar log_symbol(std::uint32_t n) { return log_symbol(n, *sieve_upto(n)); }

using Assignment = std::map<Var, std::complex<double>>;

/// Evaluates in binary64. Log symbols default to ln p; other variables must be assigned.
inline std::complex<double> eval_numeric(const SymbolicScalar& s, const Assignment& at = {})
{
    std::complex<double> acc = 0.0;
    for (auto& [m, c] : s.terms()) {
        std::complex<double> t = c.to_double();
        for (auto& [id, e] : m.entries()) {
            Var v{id};
            std::complex<double> val;
            if (auto it = at.find(v); it != at.end()) {
                val = it->second;
            } else if (v.is_log()) {
                val = std::log(static_cast<double>(v.log_prime()));
            } else {
                throw std::invalid_argument("eval_numeric: variable '" + v.name() + "' is unassigned");
            }
            t *= std::pow(val, static_cast<int>(e));
        }
        acc += t;
    }
    return acc;
}

}  // namespace dcp
