#pragma once

// Complex branches invGamma_0 and invGamma_-1.
//
// Each branch is the analytic continuation of its real branch to the plane
// minus its cuts on the real axis:
//   k =  0: (-inf, 0) and (0, gamma_0)
//   k = -1: (gamma_-1, 0) and (0, gamma_0)
// Values are computed by tracking the root of Gamma(w) = z(t) along a path
// from a real anchor to z that never crosses a cut. On a cut the value is the
// limit from the upper half-plane unless CutSide::below is requested.
//
// The strips D_k (psi_k <= Re w < psi_{k+1}) are reported for reference only:
// Gamma is not injective on them (Gamma(10 + 1.39298i) is real, so it equals
// Gamma(10 - 1.39298i)), and the range of invGamma_0 crosses Re w = psi_0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "invgamma/critical_points.hpp"
#include "invgamma/errors.hpp"
#include "invgamma/real_inverse.hpp"
#include "invgamma/specfun.hpp"

namespace invgamma {

/// Vertical strip D_k = {psi_k <= Re w < psi_{k+1}}, a half-plane for k = 0.
struct Strip {
    BranchIndex k;
    double lo;
    double hi;  ///< +inf for k = 0

    bool contains(Complex w) const { return w.real() >= lo && (std::isinf(hi) || w.real() < hi); }
};

inline Strip strip(BranchIndex k) {
    if (k >= 1) throw InvalidBranch("no strip for k >= 1");
    const double hi = k == 0 ? std::numeric_limits<double>::infinity() : psi_zero(k + 1);
    return {k, psi_zero(k), hi};
}

/// The k with w in D_k.
inline BranchIndex strip_index(Complex w) {
    const double x = w.real();
    if (!std::isfinite(x)) throw DomainError("strip_index: Re w must be finite");
    if (x >= psi_zero(0)) return 0;
    if (x >= psi_zero(-1)) return -1;
    const double m = std::floor(x);
    if (m < static_cast<double>(std::numeric_limits<BranchIndex>::min() + 1))
        throw DomainError("strip_index: Re w too negative for BranchIndex");
    const auto k = static_cast<BranchIndex>(m);
    return x >= psi_zero(k) ? k : k - 1;
}

/// Open interval on the real axis; lo may be -inf.
struct CutSegment {
    double lo;
    double hi;

    bool contains(double x) const { return x > lo && x < hi; }
};

struct CutSet {
    BranchIndex k;
    std::vector<CutSegment> segments;

    bool contains(double x) const {
        return std::any_of(segments.begin(), segments.end(), [x](const CutSegment& s) { return s.contains(x); });
    }
};

namespace detail {

inline void require_complex_branch(BranchIndex k) {
    if (k != 0 && k != -1)
        throw UnsupportedBranch("complex branch k = " + std::to_string(k) + " is not supported (only k = 0 and k = -1)");
}

/// Extremum value bounding the real range of branch k for each sign of g, or
/// nullopt when that sign has no real values on the branch.
inline std::optional<double> real_range_bound(BranchIndex k, double sign) {
    try {
        return real_domain(sign * std::numeric_limits<double>::max(), k).critical.gamma;
    } catch (const NoBranch&) {
        return std::nullopt;
    }
}

/// Branch points (gamma_b, psi_b) that bound the real range of branch k.
inline std::vector<CriticalPoint> branch_points(BranchIndex k) {
    std::vector<CriticalPoint> out;
    for (double sign : {1.0, -1.0}) {
        try {
            out.push_back(real_domain(sign * std::numeric_limits<double>::max(), k).critical);
        } catch (const NoBranch&) {
        }
    }
    return out;
}

inline bool in_real_range(double x, BranchIndex k) {
    try {
        real_domain(x, k);
        return true;
    } catch (const Error&) {
        return false;
    }
}

/// Digamma without the 1e-12 pole guard; the tracker may approach w = 0 on
/// branch -1 when |z| is huge.
inline Complex digamma_complex(Complex z) {
    if (z.real() < 0.0) return digamma_shifted(1.0 - z) - pi * cot_pi(z);
    return digamma_shifted(z);
}

/// Quadratic seed near a branch point: Gamma(w) ~ gamma_b + gamma_b Psi'(psi_b) (w - psi_b)^2 / 2,
/// taking the root that points into the strip of branch k.
inline Complex branch_point_seed(Complex z, const CriticalPoint& bp, double inward, bool upper) {
    const double h = 1e-5;
    const double trigamma = (digamma(bp.psi + h) - digamma(bp.psi - h)) / (2.0 * h);
    Complex d2 = 2.0 * (z - bp.gamma) / (bp.gamma * trigamma);
    if (z.imag() == 0.0) d2 += Complex(0.0, (upper ? 1e-300 : -1e-300)) * (bp.gamma > 0.0 ? 1.0 : -1.0);
    Complex d = std::sqrt(d2);
    if (d.real() * inward < 0.0) d = -d;
    return bp.psi + d;
}

/// ln Gamma(w) - ln z with the imaginary part reduced to [-pi, pi].
inline Complex log_mismatch(Complex w, Complex log_z) {
    const Complex d = log_gamma(w) - log_z;
    return {d.real(), std::remainder(d.imag(), 2.0 * pi)};
}

/// Newton on ln Gamma(w) = ln z from w. Gives up when the iteration stops
/// contracting or wanders further than max_move from its start.
inline std::optional<Complex> newton_correct(Complex w, Complex z, double tol, int max_iter, double max_move) {
    const Complex log_z = std::log(z);
    const Complex start = w;
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 0; i < max_iter; ++i) {
        const Complex step = log_mismatch(w, log_z) / digamma_complex(w);
        w -= step;
        const double size = std::abs(step);
        if (!std::isfinite(size) || std::abs(w - start) > max_move) return std::nullopt;
        if (size <= tol * std::abs(w)) return w;
        if (i > 0 && size > 0.5 * previous) return std::nullopt;
        previous = size;
    }
    return std::nullopt;
}

struct TrackState {
    Complex w;
    int steps = 0;
};

inline constexpr double max_tracked_imag = 60.0;
inline constexpr int max_track_steps = 20000;

/// Follows the root of Gamma(w) = z(t), z(t) = from + t (to - from), t in [0, 1].
inline void track_segment(TrackState& st, Complex from, Complex to) {
    double t = 0.0;
    double dt = 1.0 / 16.0;
    Complex zt = from;
    while (t < 1.0) {
        if (++st.steps > max_track_steps) throw NonConvergence("inv_gamma_complex: continuation step limit reached");
        const double t1 = std::min(1.0, t + dt);
        const Complex zn = t1 == 1.0 ? to : from + t1 * (to - from);
        const Complex dlog = std::log(zn / zt);
        const Complex predicted = st.w + dlog / digamma_complex(st.w);
        const double move = std::abs(predicted - st.w);

        std::optional<Complex> next;
        if (std::abs(dlog.imag()) <= 0.5 && std::abs(dlog.real()) <= 0.5 && move <= 0.25)
            next = newton_correct(predicted, zn, 1e-12, 8, 0.5 * move + 1e-10 * std::max(1.0, std::abs(predicted)));
        if (!next) {
            dt *= 0.5;
            if (dt < 1e-14) throw NotInRange("inv_gamma_complex: continuation stalled");
            continue;
        }
        if (std::abs(next->imag()) > max_tracked_imag)
            throw NotInRange("inv_gamma_complex: solution leaves the certified region |Im w| <= 60");
        st.w = *next;
        t = t1;
        zt = zn;
        dt = std::min(1.0, 2.0 * dt);
    }
}

}  // namespace detail

/// Cut segments of branch k: the real axis minus the real range of the branch
/// (from the domain-selection rule) minus the singular point 0.
inline CutSet cut_set(BranchIndex k) {
    detail::require_complex_branch(k);
    const auto pos = detail::real_range_bound(k, 1.0);
    const auto neg = detail::real_range_bound(k, -1.0);
    const double inf = std::numeric_limits<double>::infinity();
    return {k, {{neg ? *neg : -inf, 0.0}, {0.0, pos ? *pos : inf}}};
}

inline bool is_on_branch_cut(Complex z, BranchIndex k) {
    detail::require_complex_branch(k);
    return z.imag() == 0.0 && cut_set(k).contains(z.real());
}

enum class CutSide { above, below };

struct ComplexInverse {
    Complex w;
    bool near_branch_point = false;  ///< |z - gamma_b| < 1e-8 |gamma_b| for a branch point of k
    bool in_strip = false;           ///< w lies in D_k
    int steps = 0;                   ///< continuation steps taken
};

/// invGamma_k(z) for k in {0, -1}. For z on a cut of branch k the value is
/// the limit from `side` (upper half-plane by default).
inline ComplexInverse solve_complex_inverse(Complex z, BranchIndex k, const SolveConfig& cfg = {},
                                            CutSide side = CutSide::above) {
    detail::require_complex_branch(k);
    cfg.validate();
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("inv_gamma_complex: z must be finite");
    if (z == Complex(0.0, 0.0)) throw NotInRange("inv_gamma_complex: z = 0 is not a value of Gamma");

    ComplexInverse out;
    for (const CriticalPoint& bp : detail::branch_points(k)) {
        if (std::abs(z - bp.gamma) < 1e-8 * std::abs(bp.gamma)) out.near_branch_point = true;
        if (z == Complex(bp.gamma, 0.0)) {
            out.w = bp.psi;
            out.in_strip = strip(k).contains(out.w);
            return out;
        }
    }

    if (z.imag() == 0.0 && detail::in_real_range(z.real(), k)) {
        const RealInverse r = solve_real_inverse(z.real(), k, cfg);
        out.w = r.x;
        out.near_branch_point = out.near_branch_point || r.reduced_accuracy;
        out.in_strip = strip(k).contains(out.w);
        return out;
    }

    // Polish at the target, then verify the residual.
    auto finish = [&](Complex w, int steps) {
        const Complex log_z = std::log(z);
        for (int i = 0; i < 10; ++i) {
            const Complex step = detail::log_mismatch(w, log_z) / detail::digamma_complex(w);
            w -= step;
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
        }
        const double residual = std::abs(std::exp(detail::log_mismatch(w, log_z)) - 1.0);
        if (!(residual <= cfg.residual_rel_tol))
            throw NotInRange("inv_gamma_complex: residual " + detail::fmt_num(residual) + " above tolerance");
        out.w = w;
        out.steps = steps;
        out.in_strip = strip(k).contains(w);
        return out;
    };

    for (const CriticalPoint& bp : detail::branch_points(k)) {
        if (std::abs(z - bp.gamma) >= 1e-6 * std::abs(bp.gamma)) continue;
        const bool upper = z.imag() > 0.0 || (z.imag() == 0.0 && side == CutSide::above);
        const double inward = bp.psi == strip(k).lo ? 1.0 : -1.0;
        return finish(detail::branch_point_seed(z, bp, inward, upper), 0);
    }

    const double gamma0 = critical_point(0).gamma;
    const double anchor = k == 0 ? std::max(2.0 * gamma0, std::min(std::abs(z), 10.0)) : 1.0;
    detail::TrackState st{real_inv_gamma(anchor, k, cfg)};
    const double height = std::max(1.0, 0.5 * std::abs(z.real() - anchor));
    if (std::abs(z.imag()) >= height) {
        detail::track_segment(st, anchor, z);
    } else {
        // Near or on the real axis: come down vertically from the half-plane
        // of z (or of `side` on a cut), away from 0 and the branch points.
        const bool upper = z.imag() > 0.0 || (z.imag() == 0.0 && side == CutSide::above);
        const Complex corner(z.real(), upper ? height : -height);
        detail::track_segment(st, anchor, corner);
        detail::track_segment(st, corner, z);
    }

    return finish(st.w, st.steps);
}

inline Complex inv_gamma_complex(Complex z, BranchIndex k, const SolveConfig& cfg = {}, CutSide side = CutSide::above) {
    return solve_complex_inverse(z, k, cfg, side).w;
}

}  // namespace invgamma
