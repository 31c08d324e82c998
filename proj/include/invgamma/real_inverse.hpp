#pragma once

// Real branches invGamma_k, k <= 0: domain selection, the Stirling/Lambert-W
// seed for the principal branch, and a safeguarded Newton solver.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "invgamma/critical_points.hpp"
#include "invgamma/errors.hpp"
#include "invgamma/specfun.hpp"

namespace invgamma {

/// Interval of x values; `hi` may be +infinity.
struct RealInterval {
    double lo;
    double hi;
    bool lo_open;
    bool hi_open;

    bool hi_infinite() const { return std::isinf(hi); }

    bool contains(double x) const {
        const bool above = lo_open ? x > lo : x >= lo;
        const bool below = hi_infinite() || (hi_open ? x < hi : x <= hi);
        return above && below;
    }
};

struct SolveConfig {
    double x_tol = 1e-12;
    double residual_rel_tol = 1e-11;
    int max_iter = 200;

    void validate() const {
        if (!(x_tol > 0.0) || !(residual_rel_tol > 0.0) || max_iter < 10)
            throw DomainError("SolveConfig requires positive tolerances and max_iter >= 10");
    }
};

struct RealInverse {
    double x;
    /// Set when g lies within 1e-8 (relative) of the branch's extremum, where
    /// the inverse has square-root sensitivity and x is only good to ~1e-5,
    /// or when x sits so close to a pole that no double meets the residual
    /// tolerance (x is then the closest representable solution).
    bool reduced_accuracy = false;
    int iterations = 0;
};

namespace detail {

struct RealDomain {
    RealInterval interval;
    CriticalPoint critical;  ///< extremum bounding the interval
    bool critical_at_lo;     ///< ln|Gamma| increases with x iff true
};

inline std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline RealDomain real_domain(double g, BranchIndex k) {
    if (!std::isfinite(g)) throw DomainError("g must be finite");

    // Exclude nonexistent branches.
    if (k >= 1) throw NoBranch("no branch: k >= 1 (k = " + std::to_string(k) + ")");
    if (g == 0.0) throw NoBranch("no branch: g = 0 (Gamma has no zeros)");
    if (k == 0 && g < 0.0) throw NoBranch("no branch: k = 0 and g < 0");

    // How much to adjust end points near k = 0.
    double lo0 = 0.0;
    double hi0 = 0.0;
    if (k == 0) {
        lo0 = 1.0;
        hi0 = std::numeric_limits<double>::infinity();
    } else if (k == -1 && g > 0.0) {
        lo0 = 0.0;
        hi0 = 1.0;
    }

    // Which side of the pole.
    const bool k_even = (k % 2 == 0);
    const double base = static_cast<double>(k);
    if (k_even != (g > 0.0)) {
        // Pole at lo, extremum of branch k+1 (Psi = 0 in (lo, k+2+hi0)) at hi.
        const double lo = base + 1.0 + lo0;
        const CriticalPoint cp = critical_point(k + 1);
        if (std::abs(g) <= std::abs(cp.gamma))
            throw BelowExtremum("|g| < |Gamma(hi)|: branch " + std::to_string(k) + " with this sign of g requires |g| > " +
                                fmt_num(std::abs(cp.gamma)) + " (g = " + fmt_num(g) + ")");
        return {{lo, cp.psi, true, true}, cp, false};
    }
    // Extremum of branch k (Psi = 0 in (k+lo0, hi)) at lo, pole or +inf at hi.
    const double hi = base + 1.0 + hi0;
    const CriticalPoint cp = critical_point(k);
    if (std::abs(g) < std::abs(cp.gamma)) {
        const std::string need = k == 0 ? "g >= gamma_0 = " + fmt_num(cp.gamma)
                                        : "|g| >= |gamma_" + std::to_string(k) + "| = " + fmt_num(std::abs(cp.gamma));
        throw BelowExtremum("|g| < |Gamma(lo)|: branch " + std::to_string(k) + " requires " + need +
                            " (g = " + fmt_num(g) + ")");
    }
    return {{cp.psi, hi, false, true}, cp, true};
}

/// Residue of Gamma at the pole -n: (-1)^n / n!.
inline double gamma_residue(double pole) {
    const double n = -pole;
    const double mag = std::exp(-log_abs_gamma(n + 1.0));
    return std::fmod(n, 2.0) == 0.0 ? mag : -mag;
}

}  // namespace detail

/// x-interval on which Gamma is monotone and attains g for branch k.
/// Throws NoBranch or BelowExtremum naming the failed condition.
inline RealInterval real_gamma_domain(double g, BranchIndex k) { return detail::real_domain(g, k).interval; }

/// Stirling-based approximation to invGamma_0:
///   1/2 + ln(x/sqrt(2 pi)) / W0(ln(x/sqrt(2 pi)) / e).
/// Defined for x >= sqrt(2 pi)/e ~ 0.92214, where W0's argument reaches -1/e.
inline double stirling_inverse_approx(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("stirling_inverse_approx: x must be positive and finite");
    const double l = std::log(x) - detail::half_log_2pi;
    const double y = l / std::numbers::e;
    double w;
    try {
        w = lambert_w0(y);
    } catch (const DomainError&) {
        throw DomainError("stirling_inverse_approx: x below sqrt(2 pi)/e (x = " + detail::fmt_num(x) + ")");
    }
    // l / W(l/e) -> e as l -> 0
    if (std::abs(y) < 1e-8) return 0.5 + std::numbers::e * (1.0 + y);
    return 0.5 + l / w;
}

/// Solves Gamma(x) = g on branch k. Newton on ln|Gamma(x)| - ln|g| (derivative
/// Psi), safeguarded by bisection inside the monotone interval.
inline RealInverse solve_real_inverse(double g, BranchIndex k, const SolveConfig& cfg = {}) {
    cfg.validate();
    const detail::RealDomain dom = detail::real_domain(g, k);
    const RealInterval& iv = dom.interval;
    const double target = std::log(std::abs(g));
    const bool increasing = dom.critical_at_lo;
    const double gc = dom.critical.gamma;
    const bool near_branch_point = std::abs(g - gc) < 1e-8 * std::abs(gc);

    auto f = [&](double x) { return log_abs_gamma(x) - target; };
    auto residual = [&](double x) { return std::abs(std::expm1(f(x))); };

    double a = iv.lo;
    double b = iv.hi;
    double x;
    if (iv.hi_infinite()) {
        const double seed = (k == 0 && g >= 2.0) ? stirling_inverse_approx(g) : iv.lo + std::max(1.0, std::log(g));
        // Grow the search cap lo + 2 (seed - lo) until it brackets the root.
        b = iv.lo + 2.0 * (std::max(seed, iv.lo + 0.5) - iv.lo);
        while (f(b) < 0.0) {
            a = std::max(a, b);
            b = iv.lo + 2.0 * (b - iv.lo);
        }
        x = (seed > a && seed < b) ? seed : 0.5 * (a + b);
    } else {
        x = 0.5 * (a + b);
        // Close to the pole Gamma(x) ~ residue / (x - pole).
        const double pole = increasing ? b : a;
        if (std::abs(g) > 1e3 * std::abs(gc)) {
            const double guess = pole + detail::gamma_residue(pole) / g;
            if (guess > a && guess < b) x = guess;
        }
    }

    const double eps = std::numeric_limits<double>::epsilon();
    bool resolution_limited = false;
    int iter = 0;
    for (; iter < cfg.max_iter; ++iter) {
        const double fx = f(x);
        if (fx == 0.0) break;
        if ((fx > 0.0) == increasing)
            b = x;
        else
            a = x;
        const double slope = detail::digamma_real(x);
        double next = x - fx / slope;
        if (!(std::abs(slope) >= 1e-8) || !(next > a && next < b)) next = 0.5 * (a + b);
        const double step = std::abs(next - x);
        x = next;
        if (residual(x) <= cfg.residual_rel_tol &&
            (near_branch_point || step <= cfg.x_tol * std::max(1.0, std::abs(x))))
            break;
        if (step == 0.0 || b - a <= 4.0 * eps * std::max(std::abs(a), std::abs(b))) {
            resolution_limited = true;
            break;
        }
    }

    const double res = residual(x);
    if (res <= cfg.residual_rel_tol) return {x, near_branch_point, iter};
    // Close to a pole the spacing of doubles in x bounds the attainable
    // residual; return the best representable x and say so.
    if (resolution_limited) return {x, true, iter};
    if (!(res <= cfg.residual_rel_tol))
        throw NonConvergence("real_inv_gamma: no convergence for g = " + detail::fmt_num(g) + " on branch " +
                             std::to_string(k) + " after " + std::to_string(iter) + " iterations");
    return {x, near_branch_point, iter};
}

inline double real_inv_gamma(double g, BranchIndex k, const SolveConfig& cfg = {}) {
    return solve_real_inverse(g, k, cfg).x;
}

/// The branch k whose real range contains x (the range conditions read
/// backwards). Throws PolePoint at non-positive integers.
inline BranchIndex branch_containing(double x) {
    if (!std::isfinite(x)) throw DomainError("branch_containing: x must be finite");
    if (x <= 0.0 && x == std::floor(x)) throw PolePoint("x = " + detail::fmt_num(x) + " is a pole of Gamma");
    if (x >= psi_zero(0)) return 0;
    if (x > 0.0) return -1;
    const double m = std::floor(x);
    if (m < static_cast<double>(std::numeric_limits<BranchIndex>::min() + 1))
        throw DomainError("branch_containing: x too negative for BranchIndex");
    const auto k = static_cast<BranchIndex>(m);
    return x >= psi_zero(k) ? k : k - 1;
}

}  // namespace invgamma
