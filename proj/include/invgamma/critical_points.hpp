#pragma once

// Zeros psi_k of the digamma function and the matching extrema
// gamma_k = Gamma(psi_k) of the real Gamma function. They bound every real
// branch of invGamma and every strip D_k.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "invgamma/errors.hpp"
#include "invgamma/specfun.hpp"

namespace invgamma {

struct CriticalPoint {
    BranchIndex k;
    double psi;    ///< abscissa of the extremum, Psi(psi) = 0
    double gamma;  ///< ordinate Gamma(psi)
};

namespace detail {

/// Root of Psi on the open interval (lo, hi), on which Psi increases from
/// -inf (or a negative value) to +inf. Bisection down to width 1e-3, then
/// Newton with a central-difference derivative, kept inside the bracket.
inline double solve_digamma_zero(double lo, double hi) {
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        (digamma(mid) < 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
        const double f = digamma(x);
        if (std::abs(f) < 1e-13) break;
        (f < 0.0 ? lo : hi) = x;
        const double h = 1e-6 * std::max(1.0, std::abs(x));
        const double slope = (digamma(x + h) - digamma(x - h)) / (2.0 * h);
        double next = x - f / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    return x;
}

}  // namespace detail

/// psi_k: the unique zero of Psi in (1, 2) for k = 0 and in (k, k+1) for k < 0.
inline double compute_psi_zero(BranchIndex k) {
    if (k >= 1) throw InvalidBranch("no critical point for branch k = " + std::to_string(k) + " (k >= 1)");
    if (k == 0) return detail::solve_digamma_zero(1.0, 2.0);
    const double base = static_cast<double>(k);
    // Psi is infinite at the integers; stay a little inside the open bracket.
    const double offset = std::max(1e-9, 8.0 * std::numeric_limits<double>::epsilon() * std::abs(base));
    return detail::solve_digamma_zero(base + offset, base + 1.0 - offset);
}

/// Memoized critical point of branch k. Each k is computed once; concurrent
/// callers block on the first computation and then share the record.
inline CriticalPoint critical_point(BranchIndex k) {
    if (k >= 1) throw InvalidBranch("no critical point for branch k = " + std::to_string(k) + " (k >= 1)");

    static std::shared_mutex mutex;
    static std::map<BranchIndex, CriticalPoint> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(k); it != cache.end()) return it->second;
    }
    std::unique_lock lock(mutex);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
    const double psi = compute_psi_zero(k);
    const CriticalPoint cp{k, psi, gamma(psi)};
    cache.emplace(k, cp);
    return cp;
}

inline double psi_zero(BranchIndex k) { return critical_point(k).psi; }

}  // namespace invgamma
