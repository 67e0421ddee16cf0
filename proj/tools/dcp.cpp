// dcp: command-line front end for Dirichlet convolution polynomials and
// Lagrange inversion of Dirichlet series. Exit codes: 0 all checks pass,
// 1 a check failed, 2 input error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcp/abscissa.hpp"
#include "dcp/bridge.hpp"
#include "dcp/families.hpp"
#include "dcp/inversion.hpp"
#include "dcp/spec_io.hpp"

namespace {

using namespace dcp;
using S = SymbolicScalar;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::uint32_t order = 16;
    std::string mode;
    std::string w;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    std::vector<std::string> json_docs;
    std::string spec_path;
    std::vector<std::string> builtins;
    // leaf-specific
    std::string method = "triangular";
    std::string kind = "scale";
    std::string exponent = "x";
    std::uint32_t corrupt = 0;
    std::string desc = "zeta_shift:2";
    std::string grid;
};

struct Output {
    Report report;
    std::string csv;  // set by commands that support --format csv
};

// ---- input -----------------------------------------------------------------

std::vector<SeriesSpec> load_specs(const Options& o, bool require_d0)
{
    std::string text;
    for (auto& j : o.json_docs) text += j + "\n";
    if (!o.spec_path.empty()) {
        if (o.spec_path == "-") {
            text.append(std::istreambuf_iterator<char>(std::cin), {});
        } else {
            std::ifstream in(o.spec_path);
            if (!in) throw InputError("cannot open spec file '" + o.spec_path + "'");
            text.append(std::istreambuf_iterator<char>(in), {});
        }
        text += "\n";
    }
    for (auto& b : o.builtins) {
        ojson j;
        j["N"] = o.order;
        j["builtin"] = b;
        j["seed"] = o.seed;
        text += j.dump() + "\n";
    }
    auto specs = parse_specs(text, require_d0);
    if (specs.empty()) throw InputError("no input series (use --json, --spec or --builtin)");
    return specs;
}

Mode resolve_mode(const Options& o, const std::vector<SeriesSpec>& specs)
{
    if (!o.mode.empty()) return parse_mode(o.mode);
    return specs.empty() ? Mode::exact : specs.front().mode;
}

template <class T>
DirichletSeries<T> materialize(const SeriesSpec& s)
{
    if constexpr (std::is_same_v<T, S>) {
        if (s.mode == Mode::numeric && !s.builtin) throw InputError("exact mode requires rational string coefficients");
        return materialize_exact(s);
    } else {
        return materialize_numeric(s);
    }
}

void require_d0(const SeriesSpec& s, const char* what)
{
    bool c1 = s.exact_coeffs.contains(1) || s.numeric_coeffs.contains(1);
    if (c1) throw InputError(std::string(what) + ": c_1 must be 0 (series must lie in D_0)");
}

Rational parse_decimal(const std::string& t)
{
    auto dot = t.find('.');
    if (dot == std::string::npos) return Rational::parse(t);
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits.find_first_not_of("-0123456789") != std::string::npos)
        throw InputError("malformed decimal '" + t + "'");
    std::string den = "1" + std::string(t.size() - dot - 1, '0');
    return Rational::parse(digits + "/" + den);
}

template <class T>
T parse_scalar(const std::string& text, const char* what)
{
    if constexpr (std::is_same_v<T, S>) {
        try {
            return S(parse_decimal(text));
        } catch (const std::exception&) {
        }
        try {
            return S::parse(text);
        } catch (const std::exception& e) {
            throw InputError(std::string(what) + ": " + e.what());
        }
    } else {
        auto comma = text.find(',');
        auto real = [&](const std::string& t) {
            try {
                std::size_t used = 0;
                double v = std::stod(t, &used);
                if (used == t.size()) return v;
            } catch (const std::exception&) {
            }
            try {
                return Rational::parse(t).to_double();
            } catch (const std::exception&) {
                throw InputError(std::string(what) + ": cannot parse '" + t + "' as a number");
            }
        };
        if (comma == std::string::npos) return Complex(real(text), 0.0);
        return Complex(real(text.substr(0, comma)), real(text.substr(comma + 1)));
    }
}

template <class T>
T parse_w(const Options& o)
{
    if (o.w.empty()) {
        if constexpr (std::is_same_v<T, S>)
            return S::variable(vars::w);
        else
            return Complex(1.0);
    }
    return parse_scalar<T>(o.w, "--w");
}

// ---- formatting ------------------------------------------------------------

std::string scalar_str(const S& s) { return s.str(); }

std::string scalar_str(const Complex& c)
{
    char buf[96];
    if (c.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.17g", c.real());
    else
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
    return buf;
}

std::string poly_str(const UniPoly<S>& p) { return to_string(p); }

std::string poly_str(const UniPoly<Complex>& p)
{
    std::string out = "[";
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) out += (i ? ", " : "") + scalar_str(p.coeffs()[i]);
    return out + "]";
}

template <class T>
std::string series_csv(const DirichletSeries<T>& f)
{
    std::string out;
    if constexpr (std::is_same_v<T, S>) {
        out = "n,value\n";
        for (std::uint32_t n = 1; n <= f.order(); ++n) out += std::to_string(n) + "," + f[n].str() + "\n";
    } else {
        out = "n,re,im\n";
        char buf[96];
        for (std::uint32_t n = 1; n <= f.order(); ++n) {
            std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g\n", n, f[n].real(), f[n].imag());
            out += buf;
        }
    }
    return out;
}

template <class T>
std::string family_csv(const ConvolutionFamily<T>& fam)
{
    std::string out = "n,polynomial\n";
    for (std::uint32_t n = 1; n <= fam.order(); ++n) out += std::to_string(n) + ",\"" + poly_str(fam[n]) + "\"\n";
    return out;
}

// ---- checks ----------------------------------------------------------------

double numeric_tolerance(double scale) { return 1e-10 * (1.0 + scale); }

/// Coefficientwise equality with the first differing index reported.
template <class T>
CheckResult series_equal(const std::string& name, const DirichletSeries<T>& lhs, const DirichletSeries<T>& rhs)
{
    CheckResult c;
    c.name = name;
    double tol = 0.0;
    if constexpr (!std::is_same_v<T, S>) tol = numeric_tolerance(std::max(max_abs(lhs), max_abs(rhs)));
    for (std::uint32_t n = 1; n <= lhs.order(); ++n) {
        bool same;
        if constexpr (std::is_same_v<T, S>)
            same = lhs[n] == rhs[n];
        else
            same = std::abs(lhs[n] - rhs[n]) <= tol;
        if (!same) {
            c.passed = false;
            c.first_failure = n;
            c.lhs = scalar_str(lhs[n]);
            c.rhs = scalar_str(rhs[n]);
            break;
        }
    }
    return c;
}

template <class T>
CheckResult poly_series_equal(const std::string& name, const DirichletSeries<UniPoly<T>>& lhs,
                              const DirichletSeries<UniPoly<T>>& rhs)
{
    CheckResult c;
    c.name = name;
    for (std::uint32_t n = 1; n <= lhs.order(); ++n) {
        bool same = true;
        if constexpr (std::is_same_v<T, S>) {
            same = lhs[n] == rhs[n];
        } else {
            auto diff = lhs[n] - rhs[n];
            double scale = 0.0;
            for (auto& v : lhs[n].coeffs()) scale = std::max(scale, std::abs(v));
            for (auto& v : diff.coeffs()) same = same && std::abs(v) <= numeric_tolerance(scale);
        }
        if (!same) {
            c.passed = false;
            c.first_failure = n;
            c.lhs = poly_str(lhs[n]);
            c.rhs = poly_str(rhs[n]);
            break;
        }
    }
    return c;
}

// ---- family ----------------------------------------------------------------

template <class T>
void family_checks(Report& rep, const ConvolutionFamily<T>& fam, bool all)
{
    if constexpr (std::is_same_v<T, S>) {
        auto fr = verify_family(fam);
        for (auto& c : fr.checks)
            if (all || c.name == "convolution") rep.add(c);
    }
}

template <class T>
void family_cmd(const std::string& leaf, const Options& o, Output& out)
{
    auto specs = load_specs(o, false);
    require_d0(specs[0], "family generator");
    auto fam = family_from_generator(materialize<T>(specs[0]));
    auto& rep = out.report;
    if (leaf == "gen") {
        // nothing further
    } else if (leaf == "verify") {
        if constexpr (!std::is_same_v<T, S>) {
            throw InputError("family verify requires exact mode");
        } else {
            if (o.corrupt != 0) {
                if (o.corrupt < 2 || o.corrupt > fam.order()) throw InputError("--corrupt index out of range");
                fam[o.corrupt] = fam[o.corrupt] + UniPoly<S>::monomial(2, S(1));
                rep.result["corrupted_index"] = o.corrupt;
            }
            family_checks(rep, fam, true);
        }
    } else if (leaf == "beta") {
        fam = beta_transform(fam, parse_w<T>(o));
        family_checks(rep, fam, false);
    } else if (leaf == "transform") {
        if (o.kind == "scale") {
            fam = transform(fam, TransformKind<T>{ScaleKind<T>{parse_w<T>(o)}});
        } else if (o.kind == "product") {
            if (specs.size() < 2) throw InputError("transform product needs a second generator series");
            require_d0(specs[1], "product generator");
            auto other = family_from_generator(materialize<T>(specs[1]));
            if (other.order() != fam.order()) throw InputError("transform product: order mismatch");
            fam = transform(fam, TransformKind<T>{ProductKind<T>{other}});
        } else if (o.kind == "twist") {
            if (specs.size() < 2) throw InputError("transform twist needs a second series c");
            auto c = materialize<T>(specs[1]);
            if (c.order() != fam.order()) throw InputError("transform twist: order mismatch");
            try {
                fam = transform(fam, TransformKind<T>{TwistKind<T>{c}});
            } catch (const FamilyError& e) {
                throw InputError(e.what());
            }
        } else {
            throw InputError("unknown --kind '" + o.kind + "' (expected scale|product|twist)");
        }
        rep.result["kind"] = o.kind;
        family_checks(rep, fam, false);
    } else if (leaf == "multiplicative") {
        rep.result["multiplicative"] = is_multiplicative(fam);
        return;
    }
    rep.result["family"] = family_json(fam);
    out.csv = family_csv(fam);
}

// ---- series ----------------------------------------------------------------

template <class T>
void series_cmd(const std::string& leaf, const Options& o, Output& out)
{
    using tr = scalar_traits<T>;
    auto specs = load_specs(o, false);
    auto f = materialize<T>(specs[0]);
    auto& rep = out.report;
    DirichletSeries<T> r;
    if (leaf == "mul") {
        if (specs.size() < 2) throw InputError("series mul needs two series");
        auto g = materialize<T>(specs[1]);
        if (g.order() != f.order()) throw InputError("series mul: order mismatch");
        r = dmul(f, g);
        rep.add(series_equal("commutative", r, dmul(g, f)));
    } else if (leaf == "exp") {
        require_d0(specs[0], "series exp");
        r = dexp(f);
        rep.add(series_equal("log_roundtrip", dlog(r), f));
    } else if (leaf == "log") {
        if (!(f[1] == tr::one())) throw InputError("series log: c_1 must be 1");
        r = dlog(f);
        rep.add(series_equal("exp_roundtrip", dexp(r), f));
    } else if (leaf == "pow") {
        if (!(f[1] == tr::one())) throw InputError("series pow: c_1 must be 1");
        if (o.exponent == "x") {
            auto p = dpow_x(f);
            auto fam = ConvolutionFamily<T>::from_series(p);
            rep.result["exponent"] = "x";
            rep.result["family"] = family_json(fam);
            out.csv = family_csv(fam);
            return;
        }
        r = dpow(f, parse_scalar<T>(o.exponent, "--t"));
        rep.result["exponent"] = o.exponent;
    } else if (leaf == "deriv") {
        r = dderiv(f);
    }
    rep.result["series"] = series_json(r);
    out.csv = series_csv(r);
}

// ---- invert ----------------------------------------------------------------

template <class T>
CheckResult residual_check(const DirichletSeries<T>& f, const DirichletSeries<T>& g, const T& w)
{
    return series_equal("residual", compose_inner(f, g, w), g);
}

template <class T>
void invert_cmd(const std::string& leaf, const Options& o, Output& out)
{
    auto specs = load_specs(o, false);
    auto& rep = out.report;
    if (leaf == "general") {
        if constexpr (std::is_same_v<T, S>) {
            throw InputError("invert general requires numeric mode");
        } else {
            auto f = materialize<T>(specs[0]);
            Complex w = parse_w<T>(o);
            auto r = solve_general(f, w, parse_method(o.method));
            rep.result["g"] = series_json(r.g);
            rep.result["residual_norm"] = r.residual_norm;
            CheckResult c;
            c.name = "residual";
            c.passed = r.residual_norm < 1e-12 * (1.0 + max_abs(r.g));
            if (!c.passed) {
                auto res = compose_general(f, r.g, w) - r.g;
                std::uint32_t n = 1;
                while (n < res.order() && std::abs(res[n]) < 1e-12) ++n;
                c.first_failure = n;
                c.lhs = scalar_str(compose_general(f, r.g, w)[n]);
                c.rhs = scalar_str(r.g[n]);
            }
            rep.add(c);
            out.csv = series_csv(r.g);
        }
        return;
    }
    require_d0(specs[0], ("invert " + leaf).c_str());
    auto f = materialize<T>(specs[0]);
    if (leaf == "bridge") {
        if constexpr (!std::is_same_v<T, S>) {
            throw InputError("invert bridge requires exact mode");
        } else {
            BridgeReport br;
            try {
                br = bridge(f);
            } catch (const SeriesError& e) {
                throw InputError(e.what());
            }
            ojson rows = ojson::array();
            CheckResult c;
            c.name = "bridge";
            for (auto& row : br.rows) {
                rows.push_back({{"index", 1U << row.n},
                                {"dirichlet", row.dirichlet.str()},
                                {"classical", row.classical.str()},
                                {"dirichlet_exp", row.dirichlet_exp.str()},
                                {"classical_exp", row.classical_exp.str()},
                                {"match", row.match}});
                if (!row.match && c.passed) {
                    c.passed = false;
                    c.first_failure = 1U << row.n;
                    c.lhs = row.dirichlet.str() + " ; " + row.dirichlet_exp.str();
                    c.rhs = row.classical.str() + " ; " + row.classical_exp.str();
                }
            }
            rep.result["rows"] = rows;
            rep.add(c);
        }
        return;
    }
    const T w = parse_w<T>(o);
    if (leaf == "solve") {
        std::vector<SolveMethod> methods;
        if (o.method == "all")
            methods = {SolveMethod::closed_form, SolveMethod::triangular, SolveMethod::fixed_point};
        else
            methods = {parse_method(o.method)};
        std::vector<InversionResult<T>> results;
        for (auto m : methods) results.push_back(solve(f, w, m));
        auto& main = results.size() > 1 ? results[1] : results[0];
        rep.result["g"] = series_json(main.g);
        rep.result["method"] = o.method;
        rep.result["residual_zero"] = main.residual_zero;
        rep.result["residual_norm"] = main.residual_norm;
        rep.result["iterations"] = results.back().iterations;
        rep.add(residual_check(f, main.g, w));
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (&results[i] == &main) continue;
            rep.add(series_equal("agree_" + to_string(results[i].method), results[i].g, main.g));
        }
        out.csv = series_csv(main.g);
    } else if (leaf == "residual") {
        if (specs.size() < 2) throw InputError("invert residual needs f and g");
        require_d0(specs[1], "invert residual");
        auto g = materialize<T>(specs[1]);
        if (g.order() != f.order()) throw InputError("invert residual: order mismatch");
        auto r = residual(f, g, w);
        rep.result["residual"] = series_json(r);
        rep.add(residual_check(f, g, w));
        out.csv = series_csv(r);
    } else if (leaf == "expcheck") {
        auto e = exp_identity(f, w);
        rep.add(poly_series_equal("exp_identity", e.lhs, e.rhs));
    } else if (leaf == "inversecheck") {
        auto g = solve(f, w).g;
        T minus_w = scalar_traits<T>::zero() - w;
        rep.add(series_equal("inverse_identity", compose_inner(g, f, minus_w), f));
        rep.result["g"] = series_json(g);
    }
}

// ---- abscissa --------------------------------------------------------------

AnalyticDescriptor parse_desc(const std::string& text)
{
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) args.push_back(parse_scalar<Complex>(item, "--desc").real());
    }
    if (name == "zeta_shift" && args.size() == 1) return AnalyticDescriptor::zeta_shift(args[0]);
    if (name == "log_weighted" && args.size() == 2) return AnalyticDescriptor::log_weighted(args[0], args[1]);
    throw InputError("unknown descriptor '" + text + "' (expected zeta_shift:k or log_weighted:a,b)");
}

std::vector<double> parse_grid(const std::string& text, double sigma_f)
{
    if (text.empty()) {
        std::vector<double> g;
        for (int i = 0; i < 50; ++i) g.push_back(sigma_f + 0.1 + 3.9 * i / 49.0);
        return g;
    }
    if (text == "none") return {};
    std::stringstream ss(text);
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n))
        throw InputError("--grid must be lo:hi:count");
    double lo = parse_scalar<Complex>(a, "--grid").real(), hi = parse_scalar<Complex>(b, "--grid").real();
    long count = std::stol(n);
    if (count < 0) throw InputError("--grid count must be nonnegative");
    std::vector<double> g;
    for (long i = 0; i < count; ++i) g.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    for (double s : g)
        if (s <= sigma_f) throw InputError("--grid point " + std::to_string(s) + " is not above sigma_f");
    return g;
}

void abscissa_cmd(const std::string& leaf, const Options& o, Output& out)
{
    auto d = parse_desc(o.desc);
    double w = o.w.empty() ? 1.0 : parse_scalar<Complex>(o.w, "--w").real();
    if (!(w > 0.0)) throw InputError("--w must be positive for abscissa commands");
    auto& rep = out.report;
    rep.result["descriptor"] = d.name();
    rep.result["sigma_f"] = d.sigma_f();
    rep.result["w"] = w;
    if (leaf == "solve") {
        CheckResult cls;
        cls.name = "classification";
        try {
            auto r = sigma_g(d, w);
            rep.result["sigma_g"] = r.sigma_g;
            rep.result["case"] = to_string(r.case_tag);
            rep.result["s0"] = r.s0 ? ojson(*r.s0) : ojson(nullptr);
            rep.result["certified_error"] = r.certified_error;
            rep.result["boundary_derivative"] = std::isinf(r.boundary_derivative) ? ojson("-inf") : ojson(r.boundary_derivative);
            rep.add(cls);
            auto [s_star, F_star] = minimize_F(d, w);
            rep.result["minimize_F"] = {{"s", s_star}, {"F", F_star}};
            rep.add("dual_route", std::abs(F_star - r.sigma_g) < 1e-8, 0, std::to_string(r.sigma_g), std::to_string(F_star));
            if (r.s0) {
                double fp = eval_f(d, *r.s0, 1e-14, 1).value;
                rep.add("interior_condition", std::abs(fp + 1.0 / w) < 1e-10, 0, std::to_string(fp),
                        std::to_string(-1.0 / w));
            }
        } catch (const AbscissaError& e) {
            cls.passed = false;
            cls.lhs = e.what();
            rep.add(cls);
        }
    } else if (leaf == "minimize") {
        auto [s_star, F_star] = minimize_F(d, w);
        rep.result["s"] = s_star;
        rep.result["F"] = F_star;
    } else if (leaf == "curve") {
        auto rows = curve_dump(d, w, parse_grid(o.grid, d.sigma_f()));
        ojson arr = ojson::array();
        for (auto& r : rows) arr.push_back({{"s", r.s}, {"F", r.F}, {"f", r.f}, {"fprime", r.fprime}, {"err", r.err}});
        rep.result["rows"] = arr;
        out.csv = curve_csv(rows);
    }
}

// ---- dispatch --------------------------------------------------------------

void dispatch(const std::string& group, const std::string& leaf, const Options& o, Output& out)
{
    if (group == "abscissa") return abscissa_cmd(leaf, o, out);
    // Mode comes from --mode or from the first document.
    Mode mode = o.mode.empty() ? resolve_mode(o, load_specs(o, false)) : parse_mode(o.mode);
    auto run = [&]<class T>() {
        if (group == "family") family_cmd<T>(leaf, o, out);
        else if (group == "series") series_cmd<T>(leaf, o, out);
        else if (group == "invert") invert_cmd<T>(leaf, o, out);
    };
    if (mode == Mode::exact)
        run.template operator()<S>();
    else
        run.template operator()<Complex>();
}

int emit(const std::string& text, const Options& o)
{
    if (o.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(o.out);
    if (!f) {
        std::cerr << "error: cannot write '" << o.out << "'\n";
        return 2;
    }
    f << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dirichlet convolution polynomials and Lagrange inversion of Dirichlet series"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;

    app.add_option("--order", o.order, "truncation order N for --builtin series")->check(CLI::PositiveNumber);
    app.add_option("--mode", o.mode, "exact|numeric (default: mode of the first document)")
        ->check(CLI::IsMember({"exact", "numeric"}));
    app.add_option("--w", o.w, "w: rational, decimal, symbol (exact) or float / re,im (numeric)");
    app.add_option("--seed", o.seed, "seed for random builtins");
    app.add_option("--out", o.out, "write output to this path");
    app.add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--json", o.json_docs, "inline SeriesSpec document (repeatable)");
    app.add_option("--spec", o.spec_path, "file of SeriesSpec documents, one per line ('-' for stdin)");
    app.add_option("--builtin", o.builtins, "builtin series name (repeatable)");

    std::string group, leaf;
    auto add_group = [&](const std::string& name, const std::string& help, std::vector<std::pair<std::string, std::string>> leaves) {
        auto* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        g->fallthrough();
        std::vector<CLI::App*> subs;
        for (auto& [l, h] : leaves) {
            auto* s = g->add_subcommand(l, h);
            s->fallthrough();
            s->callback([&, name, l = l] {
                group = name;
                leaf = l;
            });
            subs.push_back(s);
        }
        return subs;
    };

    auto fam = add_group("family", "convolution polynomial families", 
                         {{"gen", "family generated by one series"},
                          {"verify", "run the family checks (exact mode)"},
                          {"beta", "beta-transform a family by w"},
                          {"transform", "scale, product or twist a family"},
                          {"multiplicative", "test whether a series is multiplicative"}});
    fam[1]->add_option("--corrupt", o.corrupt, "add x^2 to alpha_n before verifying (fault injection)");
    fam[3]->add_option("--kind", o.kind, "scale|product|twist");

    auto ser = add_group("series", "Dirichlet series arithmetic", 
                         {{"mul", "product of two series"},
                          {"exp", "Dirichlet exponential"},
                          {"log", "Dirichlet logarithm"},
                          {"pow", "power by --t"},
                          {"deriv", "derivation L"}});
    ser[3]->add_option("--t", o.exponent, "exponent: x, rational or symbolic");

    auto inv = add_group("invert", "solve f(s - w g(s)) = g(s)",
                         {{"solve", "solve for g with one or all methods"},
                          {"residual", "residual of a candidate g (second document)"},
                          {"expcheck", "exponential identity in x"},
                          {"inversecheck", "inverse-relation check"},
                          {"general", "solve with a nonzero constant term (numeric)"},
                          {"bridge", "compare with the power-series oracle on {2^k}"}});
    inv[0]->add_option("--method", o.method, "closed_form|triangular|fixed_point|all");
    inv[4]->add_option("--method", o.method, "closed_form|triangular|fixed_point");

    auto abs = add_group("abscissa", "abscissa of absolute convergence of g", 
                         {{"solve", "sigma_g by the stationarity equation"},
                          {"minimize", "sigma_g by direct minimization"},
                          {"curve", "tabulate F, f, f' on a grid"}});
    for (auto* s : abs) s->add_option("--desc", o.desc, "zeta_shift:k or log_weighted:a,b");
    abs[2]->add_option("--grid", o.grid, "lo:hi:count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    std::string command;
    for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);

    Output out;
    out.report.command = command;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (o.method != "all") (void)parse_method(o.method);
        dispatch(group, leaf, o, out);
    } catch (const AbscissaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {  // SpecError, ParseError, SeriesError, FamilyError, InputError
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    out.report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::string text;
    if (o.format == "csv") {
        if (out.csv.empty()) {
            std::cerr << "input error: --format csv is not available for " << group << " " << leaf << "\n";
            return 2;
        }
        text = out.csv;
    } else {
        text = out.report.to_json().dump(2) + "\n";
    }
    if (int rc = emit(text, o); rc != 0) return rc;
    return out.report.all_passed() ? 0 : 1;
}
