#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/tools/roots.hpp>

#include "dcp/dseries.hpp"

namespace dcp {

class AbscissaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dirichlet series f(s) = sum_{n>=2} n^{-a} (ln n)^{-b} n^{-s} with nonnegative
/// coefficients and known abscissa of absolute convergence 1 - a.
///   zeta_shift(k)      = (a, b) = (k, 0):  f(s) = zeta(s + k) - 1
///   log_weighted(a, b) = n^{-a} (ln n)^{-b}
class AnalyticDescriptor {
public:
    AnalyticDescriptor(std::string name, double a, double b, std::uint32_t max_cutoff = 1U << 20)
        : name_(std::move(name)), a_(a), b_(b), max_cutoff_(max_cutoff)
    {
    }

    static AnalyticDescriptor zeta_shift(double k)
    {
        return {"zeta_shift(" + fmt(k) + ")", k, 0.0};
    }

    static AnalyticDescriptor log_weighted(double a, double b)
    {
        if (b <= 1.0) throw std::invalid_argument("log_weighted: requires b > 1");
        return {"log_weighted(" + fmt(a) + "," + fmt(b) + ")", a, b};
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] double sigma_f() const { return 1.0 - a_; }
    [[nodiscard]] double power() const { return a_; }
    [[nodiscard]] double log_power() const { return b_; }
    [[nodiscard]] std::uint32_t max_cutoff() const { return max_cutoff_; }

    [[nodiscard]] double coeff(std::uint32_t n) const
    {
        if (n < 2) return 0.0;
        double ln = std::log(static_cast<double>(n));
        return std::pow(static_cast<double>(n), -a_) * std::pow(ln, -b_);
    }

    /// True if the k-th derivative series converges absolutely at s = sigma_f.
    [[nodiscard]] bool boundary_convergent(int deriv) const { return b_ - deriv > 1.0; }

    /// First N coefficients as a numeric series.
    [[nodiscard]] DirichletSeries<Complex> truncated(std::uint32_t N) const
    {
        DirichletSeries<Complex> f(N);
        for (std::uint32_t n = 2; n <= N; ++n) f[n] = coeff(n);
        return f;
    }

private:
    static std::string fmt(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
    }

    std::string name_;
    double a_, b_;
    std::uint32_t max_cutoff_;
};

/// Value with a certified absolute error bound.
struct Bounded {
    double value = 0.0;
    double error = 0.0;  // truncation + roundoff
    std::uint32_t cutoff = 0;
    double truncation = 0.0;  // tail-approximation share of error
};

namespace detail {

/// Laurent polynomial in L = ln t, as exponent -> coefficient.
using LogPoly = std::map<double, double>;

inline double eval_logpoly(const LogPoly& p, double L)
{
    double acc = 0.0;
    for (auto& [q, c] : p) acc += c * std::pow(L, q);
    return acc;
}

/// Coefficient polynomial of d/dt [t^{-sigma-m} P(ln t)] = t^{-sigma-m-1} P'(ln t).
inline LogPoly differentiate(const LogPoly& p, double sigma, int m)
{
    LogPoly out;
    for (auto& [q, c] : p) {
        out[q] += -(sigma + m) * c;
        if (q != 0.0) out[q - 1.0] += q * c;
    }
    return out;
}

/// int_M^inf t^{-sigma} (ln t)^q dt with an error bound on the quadrature.
inline Bounded tail_integral(double sigma, double q, double M)
{
    const double c = sigma - 1.0, L = std::log(M);
    if (c < 0.0) throw AbscissaError("tail integral diverges (sigma < 1)");
    if (c == 0.0) {
        if (q >= -1.0) throw AbscissaError("tail integral diverges at the boundary");
        return {std::pow(L, q + 1.0) / (-q - 1.0), 0.0};
    }
    if (q >= 0.0 && q == std::floor(q)) {
        // e^{-cL} sum_{i<=q} q!/i! L^i / c^{q-i+1}
        int k = static_cast<int>(q);
        double acc = 0.0, ratio = 1.0;  // q!/i!
        for (int i = k; i >= 0; --i) {
            acc += ratio * std::pow(L, i) / std::pow(c, k - i + 1);
            ratio *= i;
        }
        return {std::exp(-c * L) * acc, 0.0};
    }
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0, l1 = 0.0;
    auto f = [&](double u) { return std::exp(-c * (u + L)) * std::pow(u + L, q); };
    double v = integrator.integrate(f, 1e-14, &err, &l1);
    return {v, err + 1e-14 * std::abs(v)};
}

/// sum_{n>=2} n^{-sigma} (ln n)^q via a partial sum below M and Euler-Maclaurin
/// above it. The remainder is bounded by |B_2p|/(2p)! * int_M^inf |h^{(2p)}|.
inline Bounded power_log_sum(double sigma, double q, std::uint32_t M)
{
    constexpr int p = 4;
    double partial = 0.0, abs_partial = 0.0;
    for (std::uint32_t n = 2; n < M; ++n) {
        double t = std::pow(static_cast<double>(n), -sigma) * std::pow(std::log(static_cast<double>(n)), q);
        partial += t;
        abs_partial += std::abs(t);
    }
    const double Md = M, L = std::log(Md);
    Bounded integral = tail_integral(sigma, q, Md);
    LogPoly deriv{{q, 1.0}};
    double em = 0.5 * std::pow(Md, -sigma) * eval_logpoly(deriv, L);
    for (int m = 0; m < 2 * p; ++m) {
        deriv = differentiate(deriv, sigma, m);  // now h^{(m+1)}
        int order = m + 1;
        if (order % 2 == 1 && order < 2 * p) {
            double b2j = boost::math::bernoulli_b2n<double>((order + 1) / 2);
            double fact = std::tgamma(order + 2.0);  // (2j)!
            em -= b2j / fact * std::pow(Md, -sigma - order) * eval_logpoly(deriv, L);
        }
    }
    // deriv now holds h^{(2p)} = t^{-sigma-2p} P(ln t).
    const double s2 = sigma + 2 * p;
    double remainder = 0.0;
    for (auto& [qj, cj] : deriv) {
        double bound_j;
        if (qj <= 0.0) {
            bound_j = std::pow(L, qj) * std::pow(Md, 1.0 - s2) / (s2 - 1.0);
        } else {
            bound_j = tail_integral(s2, qj, Md).value;
        }
        remainder += std::abs(cj) * bound_j;
    }
    remainder *= std::abs(boost::math::bernoulli_b2n<double>(p)) / std::tgamma(2.0 * p + 1.0);
    double value = partial + integral.value + em;
    double rounding = 4.0 * std::numeric_limits<double>::epsilon() * (abs_partial + std::abs(integral.value)) *
                      std::log2(static_cast<double>(M) + 1.0);
    return {value, remainder + integral.error + rounding, M, remainder + integral.error};
}

}  // namespace detail

/// Derivative of order `deriv` of f at real s, i.e. sum c_n (-ln n)^deriv n^{-s}, with
/// the cutoff doubled until the certified bound drops below tol * max(1, |value|).
inline Bounded eval_f(const AnalyticDescriptor& d, double s, double tol, int deriv = 0)
{
    const double sigma = s + d.power();
    if (s < d.sigma_f() || (s == d.sigma_f() && !d.boundary_convergent(deriv)))
        throw AbscissaError(d.name() + ": s = " + std::to_string(s) + " is outside the half-plane of convergence");
    const double q = deriv - d.log_power();
    Bounded r;
    for (std::uint32_t M = 64;; M *= 2) {
        r = detail::power_log_sum(sigma, q, M);
        if (r.error < tol * std::max(1.0, std::abs(r.value))) break;
        if (M >= d.max_cutoff())
            throw AbscissaError(d.name() + ": tolerance " + std::to_string(tol) + " unreachable at s = " +
                                std::to_string(s) + " (bound " + std::to_string(r.error) + " at cutoff " +
                                std::to_string(M) + ")");
    }
    if (deriv % 2 == 1) r.value = -r.value;
    return r;
}

enum class AbscissaCase { interior_min, boundary_min };

inline std::string to_string(AbscissaCase c) { return c == AbscissaCase::interior_min ? "interior_min" : "boundary_min"; }

struct AbscissaResult {
    double sigma_g = 0.0;
    AbscissaCase case_tag = AbscissaCase::interior_min;
    std::optional<double> s0;
    double certified_error = 0.0;
    /// Estimate of f'(sigma_f+); -infinity when the probes diverge.
    double boundary_derivative = 0.0;
};

struct AbscissaOptions {
    double tol = 1e-13;
    int probe_steps = 40;
    /// |f'| beyond this at a probe means f'(sigma_f+) = -infinity.
    double divergence_threshold = 1e6;
};

/// f'(sigma_f+) with an error band: exact boundary value when the derivative series
/// converges there, otherwise probes at sigma_f + 2^{-j}.
inline std::pair<double, double> boundary_derivative(const AnalyticDescriptor& d, const AbscissaOptions& opt)
{
    if (d.boundary_convergent(1)) {
        auto v = eval_f(d, d.sigma_f(), opt.tol, 1);
        return {v.value, v.error};
    }
    double prev = 0.0, last = 0.0, err = 0.0;
    for (int j = 1; j <= opt.probe_steps; ++j) {
        auto v = eval_f(d, d.sigma_f() + std::ldexp(1.0, -j), std::max(opt.tol, 1e-10), 1);
        if (v.value < -opt.divergence_threshold) return {-std::numeric_limits<double>::infinity(), 0.0};
        prev = last;
        last = v.value;
        err = v.error;
    }
    return {last, std::abs(last - prev) + err};
}

/// sigma_a of the solution g for w > 0: min over s >= sigma_f of s + w f(s).
inline AbscissaResult sigma_g(const AnalyticDescriptor& d, double w, const AbscissaOptions& opt = {})
{
    if (!(w > 0.0)) throw std::invalid_argument("sigma_g: w must be positive");
    AbscissaResult r;
    auto [limit, band] = boundary_derivative(d, opt);
    r.boundary_derivative = limit;
    const double target = -1.0 / w;
    if (std::isinf(limit) || limit + band < target) {
        r.case_tag = AbscissaCase::interior_min;
        auto fp = [&](double s) { return eval_f(d, s, opt.tol, 1).value - target; };
        double lo = d.sigma_f() + 0.5;
        for (int j = 1; fp(lo) >= 0.0; ++j) {
            if (j > opt.probe_steps) throw AbscissaError("sigma_g: could not bracket f'(s) = -1/w from below");
            lo = d.sigma_f() + std::ldexp(0.5, -j);
        }
        double hi = d.sigma_f() + 1.0;
        for (int j = 0; fp(hi) <= 0.0; ++j) {
            if (j > 60) throw AbscissaError("sigma_g: could not bracket f'(s) = -1/w from above");
            hi = d.sigma_f() + std::ldexp(2.0, j);
        }
        std::uintmax_t iters = 200;
        auto [a, b] = boost::math::tools::toms748_solve(fp, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
        double s0 = std::abs(fp(a)) < std::abs(fp(b)) ? a : b;
        auto f0 = eval_f(d, s0, opt.tol, 0);
        r.s0 = s0;
        r.sigma_g = s0 + w * f0.value;
        // F'(s0) = 0, so the root error enters only at second order.
        auto f2 = eval_f(d, s0, opt.tol, 2);
        double ds = std::abs(b - a) + 4 * std::numeric_limits<double>::epsilon() * std::abs(s0);
        r.certified_error = w * f0.error + 0.5 * w * std::abs(f2.value) * ds * ds +
                            std::abs(fp(s0)) * w * ds;
    } else if (limit - band >= target) {
        if (!d.boundary_convergent(0))
            throw AbscissaError("sigma_g: boundary minimum but f diverges at sigma_f");
        r.case_tag = AbscissaCase::boundary_min;
        auto f0 = eval_f(d, d.sigma_f(), opt.tol, 0);
        r.sigma_g = d.sigma_f() + w * f0.value;
        r.certified_error = w * f0.error;
    } else {
        throw AbscissaError("sigma_g: classification inconclusive, f'(sigma_f+) = " + std::to_string(limit) +
                            " within " + std::to_string(band) + " of -1/w = " + std::to_string(target));
    }
    return r;
}

/// F(s) = s + w f(s)
inline double objective(const AnalyticDescriptor& d, double w, double s, double tol = 1e-14)
{
    return s + w * eval_f(d, s, tol, 0).value;
}

/// Golden-section minimization of F(s) = s + w f(s) over a bracket grown outward
/// from sigma_f + 1. Returns (s*, F(s*)).
inline std::pair<double, double> minimize_F(const AnalyticDescriptor& d, double w, double s_tol = 1e-11)
{
    if (!(w > 0.0)) throw std::invalid_argument("minimize_F: w must be positive");
    const double sf = d.sigma_f();
    auto F = [&](double s) { return objective(d, w, s); };

    double mid = sf + 1.0, fmid = F(mid);
    double hi = mid + 1.0, fhi = F(hi);
    double lo = mid, flo = fmid;
    bool have_lo = false;
    for (int j = 0; fhi <= fmid; ++j) {
        if (j > 60) throw AbscissaError("minimize_F: F is flat or decreasing; no bracket");
        lo = mid;
        flo = fmid;
        have_lo = true;
        mid = hi;
        fmid = fhi;
        hi = sf + 2.0 * (hi - sf);
        fhi = F(hi);
    }
    if (!have_lo) {
        for (int j = 1;; ++j) {
            double cand = sf + std::ldexp(1.0, -j);
            if (j > 50) cand = d.boundary_convergent(0) ? sf : cand;
            double fc = F(cand);
            if (fc > fmid) {
                lo = cand;
                flo = fc;
                break;
            }
            hi = mid;
            fhi = fmid;
            mid = cand;
            fmid = fc;
            if (cand == sf) {
                lo = sf;
                flo = fc;
                break;
            }
            if (j > 50) throw AbscissaError("minimize_F: no bracket toward sigma_f");
        }
    }
    (void)flo;
    (void)fhi;

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a), e = a + invphi * (b - a);
    double fc = F(c), fe = F(e);
    while (b - a > s_tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (fc <= fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - invphi * (b - a);
            fc = F(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + invphi * (b - a);
            fe = F(e);
        }
    }
    double s = fc <= fe ? c : e;
    double best = std::min(fc, fe);
    if (a == sf && d.boundary_convergent(0)) {
        double fb = F(sf);
        if (fb <= best) {
            s = sf;
            best = fb;
        }
    }
    return {s, best};
}

struct CurveRow {
    double s, F, f, fprime, err;
};

inline std::vector<CurveRow> curve_dump(const AnalyticDescriptor& d, double w, const std::vector<double>& grid,
                                        double tol = 1e-12)
{
    std::vector<CurveRow> rows;
    rows.reserve(grid.size());
    for (double s : grid) {
        auto f0 = eval_f(d, s, tol, 0);
        auto f1 = eval_f(d, s, tol, 1);
        rows.push_back({s, s + w * f0.value, f0.value, f1.value, std::max(w * f0.error, f1.error)});
    }
    return rows;
}

inline std::string curve_csv(const std::vector<CurveRow>& rows)
{
    std::string out = "s,F,f,fprime,err\n";
    char buf[160];
    for (auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.s, r.F, r.f, r.fprime, r.err);
        out += buf;
    }
    return out;
}

}  // namespace dcp
