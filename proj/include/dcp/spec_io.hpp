#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dcp/dseries.hpp"
#include "dcp/families.hpp"
#include "dcp/sieve.hpp"
#include "dcp/symbolic.hpp"

namespace dcp {

using ojson = nlohmann::ordered_json;

enum class Mode { exact, numeric };

inline std::string to_string(Mode m) { return m == Mode::exact ? "exact" : "numeric"; }

inline Mode parse_mode(const std::string& s)
{
    if (s == "exact") return Mode::exact;
    if (s == "numeric") return Mode::numeric;
    throw std::invalid_argument("unknown mode '" + s + "' (expected exact|numeric)");
}

/// Malformed or invalid input document.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters of the seeded random corpus.
struct RandomParams {
    double density = 0.5;
    long max_num = 5;
    long max_den = 4;
    bool nonnegative = false;

    friend bool operator==(const RandomParams&, const RandomParams&) = default;
};

/// Input series: explicit coefficients or a builtin generator.
struct SeriesSpec {
    std::uint32_t N = 1;
    Mode mode = Mode::exact;
    /// Explicit coefficients by index (exact strings are parsed into SymbolicScalar).
    std::map<std::uint32_t, SymbolicScalar> exact_coeffs;
    std::map<std::uint32_t, Complex> numeric_coeffs;
    std::optional<std::string> builtin;
    std::optional<std::uint64_t> seed;
    RandomParams random;

    friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

inline const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names{"zeta_minus_1", "log_zeta", "prime_zeta", "two_power", "random_rational"};
    return names;
}

/// Seeded random rationals c_2..c_N. Portable: only raw mt19937_64 output is used.
inline DirichletSeries<SymbolicScalar> random_rational_series(std::uint32_t N, std::uint64_t seed, const RandomParams& p)
{
    std::mt19937_64 gen(seed);
    auto uniform01 = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    auto pick = [&](long lo, long hi) { return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1)); };
    DirichletSeries<SymbolicScalar> f(N);
    for (std::uint32_t n = 2; n <= N; ++n) {
        bool on = uniform01() < p.density;
        long num = p.nonnegative ? pick(1, p.max_num) : pick(1, p.max_num) * (gen() % 2 == 0 ? 1 : -1);
        long den = pick(1, p.max_den);
        if (on) f[n] = SymbolicScalar(Rational(num, den));
    }
    return f;
}

/// Builtin corpus series of order N.
inline DirichletSeries<SymbolicScalar> builtin_series(const std::string& name, std::uint32_t N,
                                                      std::uint64_t seed = 0, const RandomParams& rp = {})
{
    auto sv = sieve_upto(N);
    DirichletSeries<SymbolicScalar> f(N);
    if (name == "zeta_minus_1") {
        for (std::uint32_t n = 2; n <= N; ++n) f[n] = SymbolicScalar(1);
    } else if (name == "log_zeta") {
        for (std::uint32_t n = 2; n <= N; ++n) {
            auto fac = sv->factorize(n);
            if (fac.size() == 1) f[n] = SymbolicScalar(Rational(1, fac[0].exponent));
        }
    } else if (name == "prime_zeta") {
        for (std::uint32_t n = 2; n <= N; ++n)
            if (sv->is_prime(n)) f[n] = SymbolicScalar(1);
    } else if (name == "two_power") {
        if (N >= 2) f[2] = SymbolicScalar(1);
    } else if (name == "random_rational") {
        return random_rational_series(N, seed, rp);
    } else {
        throw SpecError("unknown builtin '" + name + "'");
    }
    return f;
}

inline DirichletSeries<SymbolicScalar> materialize_exact(const SeriesSpec& s)
{
    if (s.builtin) return builtin_series(*s.builtin, s.N, s.seed.value_or(0), s.random);
    DirichletSeries<SymbolicScalar> f(s.N);
    for (auto& [n, c] : s.exact_coeffs) f[n] = c;
    return f;
}

inline DirichletSeries<Complex> materialize_numeric(const SeriesSpec& s)
{
    if (s.builtin || s.mode == Mode::exact) return to_numeric(materialize_exact(s));
    DirichletSeries<Complex> f(s.N);
    for (auto& [n, c] : s.numeric_coeffs) f[n] = c;
    return f;
}

/// Parses one JSON document. With require_d0, a nonzero c_1 is rejected.
inline SeriesSpec parse_spec(const std::string& text, bool require_d0 = false)
{
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object()) throw SpecError("spec must be a JSON object");
    for (auto& [k, v] : j.items())
        if (k != "N" && k != "mode" && k != "coeffs" && k != "builtin" && k != "seed" && k != "params")
            throw SpecError("unknown field '" + k + "'");

    SeriesSpec s;
    if (!j.contains("N") || !j["N"].is_number_integer() || j["N"].get<long long>() < 1)
        throw SpecError("field N must be an integer >= 1");
    s.N = static_cast<std::uint32_t>(j["N"].get<long long>());
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) throw SpecError("field mode must be a string");
        try {
            s.mode = parse_mode(j["mode"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw SpecError(e.what());
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw SpecError("field seed must be a nonnegative integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("builtin")) {
        if (j.contains("coeffs")) throw SpecError("coeffs and builtin are mutually exclusive");
        auto name = j["builtin"].get<std::string>();
        bool known = false;
        for (auto& b : builtin_names()) known = known || b == name;
        if (!known) throw SpecError("unknown builtin '" + name + "'");
        s.builtin = name;
        if (j.contains("params")) {
            auto& p = j["params"];
            if (name != "random_rational") throw SpecError("params apply to random_rational only");
            if (p.contains("density")) s.random.density = p["density"].get<double>();
            if (p.contains("max_num")) s.random.max_num = p["max_num"].get<long>();
            if (p.contains("max_den")) s.random.max_den = p["max_den"].get<long>();
            if (p.contains("nonnegative")) s.random.nonnegative = p["nonnegative"].get<bool>();
            if (s.random.density < 0 || s.random.density > 1 || s.random.max_num < 1 || s.random.max_den < 1)
                throw SpecError("random_rational params out of range");
        }
        return s;
    }
    if (j.contains("params")) throw SpecError("params require builtin");
    if (!j.contains("coeffs")) return s;
    if (!j["coeffs"].is_object()) throw SpecError("coeffs must be an object");
    for (auto& [key, val] : j["coeffs"].items()) {
        std::uint32_t n = 0;
        try {
            std::size_t used = 0;
            long long parsed = std::stoll(key, &used);
            if (used != key.size() || parsed < 1 || parsed > static_cast<long long>(s.N)) throw std::out_of_range(key);
            n = static_cast<std::uint32_t>(parsed);
        } catch (const std::exception&) {
            throw SpecError("coefficient index '" + key + "' is not in 1.." + std::to_string(s.N));
        }
        if (s.mode == Mode::exact) {
            if (!val.is_string()) throw SpecError("exact mode requires string coefficients (index " + key + ")");
            try {
                auto c = SymbolicScalar::parse(val.get<std::string>());
                if (!c.is_zero()) s.exact_coeffs[n] = c;
            } catch (const std::exception& e) {
                throw SpecError("coefficient at index " + key + ": " + e.what());
            }
        } else {
            Complex c;
            if (val.is_number()) {
                c = val.get<double>();
            } else if (val.is_array() && val.size() == 2 && val[0].is_number() && val[1].is_number()) {
                c = Complex(val[0].get<double>(), val[1].get<double>());
            } else if (val.is_string()) {
                try {
                    c = Rational::parse(val.get<std::string>()).to_double();
                } catch (const std::exception& e) {
                    throw SpecError("coefficient at index " + key + ": " + e.what());
                }
            } else {
                throw SpecError("numeric coefficient at index " + key + " must be a number, [re, im] or rational string");
            }
            if (c != 0.0) s.numeric_coeffs[n] = c;
        }
    }
    if (require_d0) {
        bool nonzero_c1 = s.exact_coeffs.contains(1) || s.numeric_coeffs.contains(1);
        if (nonzero_c1) throw SpecError("c_1 must be 0 (series must lie in D_0)");
    }
    return s;
}

/// Parses newline-separated documents, skipping blank lines.
inline std::vector<SeriesSpec> parse_specs(const std::string& text, bool require_d0 = false)
{
    std::vector<SeriesSpec> out;
    std::istringstream in(text);
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(parse_spec(line, require_d0));
        } catch (const SpecError& e) {
            throw SpecError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

inline ojson complex_json(Complex c)
{
    if (c.imag() == 0.0) return c.real();
    return ojson::array({c.real(), c.imag()});
}

inline ojson to_json(const SeriesSpec& s)
{
    ojson j;
    j["N"] = s.N;
    j["mode"] = to_string(s.mode);
    if (s.builtin) {
        j["builtin"] = *s.builtin;
        if (s.seed) j["seed"] = *s.seed;
        if (*s.builtin == "random_rational")
            j["params"] = {{"density", s.random.density},
                           {"max_num", s.random.max_num},
                           {"max_den", s.random.max_den},
                           {"nonnegative", s.random.nonnegative}};
        return j;
    }
    if (s.seed) j["seed"] = *s.seed;
    ojson c = ojson::object();
    if (s.mode == Mode::exact) {
        for (auto& [n, v] : s.exact_coeffs) c[std::to_string(n)] = v.str();
    } else {
        for (auto& [n, v] : s.numeric_coeffs) c[std::to_string(n)] = complex_json(v);
    }
    j["coeffs"] = c;
    return j;
}

inline std::string serialize(const SeriesSpec& s) { return to_json(s).dump(); }

/// Series as a spec document with explicit nonzero coefficients.
inline ojson series_json(const DirichletSeries<SymbolicScalar>& f)
{
    ojson j;
    j["N"] = f.order();
    j["mode"] = "exact";
    ojson c = ojson::object();
    for (std::uint32_t n = 1; n <= f.order(); ++n)
        if (!f[n].is_zero()) c[std::to_string(n)] = f[n].str();
    j["coeffs"] = c;
    return j;
}

inline ojson series_json(const DirichletSeries<Complex>& f)
{
    ojson j;
    j["N"] = f.order();
    j["mode"] = "numeric";
    ojson c = ojson::object();
    for (std::uint32_t n = 1; n <= f.order(); ++n)
        if (f[n] != 0.0) c[std::to_string(n)] = complex_json(f[n]);
    j["coeffs"] = c;
    return j;
}

/// Family as a list of [n, polynomial] pairs; zero polynomials are omitted.
inline ojson family_json(const ConvolutionFamily<SymbolicScalar>& fam)
{
    ojson arr = ojson::array();
    for (std::uint32_t n = 1; n <= fam.order(); ++n)
        if (!fam[n].is_zero()) arr.push_back(ojson::array({n, to_string(fam[n])}));
    return arr;
}

/// Numeric family: [n, [c_0, c_1, ...]] with complex entries as [re, im] when needed.
inline ojson family_json(const ConvolutionFamily<Complex>& fam)
{
    ojson arr = ojson::array();
    for (std::uint32_t n = 1; n <= fam.order(); ++n) {
        if (fam[n].is_zero()) continue;
        ojson cs = ojson::array();
        for (auto& c : fam[n].coeffs()) cs.push_back(complex_json(c));
        arr.push_back(ojson::array({n, cs}));
    }
    return arr;
}

/// Machine-readable command report.
struct Report {
    std::string command;
    std::vector<CheckResult> checks;
    ojson result = ojson::object();
    double timing_ms = 0.0;

    void add(CheckResult c) { checks.push_back(std::move(c)); }

    void add(const std::string& name, bool passed, std::uint32_t first_failure = 0, std::string lhs = {},
             std::string rhs = {})
    {
        checks.push_back({name, passed, passed ? 0U : first_failure, passed ? "" : std::move(lhs),
                          passed ? "" : std::move(rhs)});
    }

    [[nodiscard]] bool all_passed() const
    {
        for (auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    [[nodiscard]] ojson to_json(bool include_timing = true) const
    {
        ojson j;
        j["command"] = command;
        j["status"] = all_passed() ? "pass" : "fail";
        ojson cs = ojson::array();
        for (auto& c : checks) {
            ojson e;
            e["name"] = c.name;
            e["status"] = c.passed ? "pass" : "fail";
            if (!c.passed) {
                e["first_failure"] = c.first_failure;
                e["lhs"] = c.lhs;
                e["rhs"] = c.rhs;
            }
            cs.push_back(e);
        }
        j["checks"] = cs;
        j["result"] = result;
        if (include_timing) j["timing_ms"] = timing_ms;
        return j;
    }
};

}  // namespace dcp
