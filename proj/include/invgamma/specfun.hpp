#pragma once

// Gamma, log-Gamma, digamma on the complex plane and the principal branch of
// Lambert W. Everything here is self-contained (no <cmath> tgamma/lgamma) so
// the same coefficient path serves real and complex arguments, which keeps
// conjugate symmetry exact.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "invgamma/errors.hpp"

namespace invgamma {

using Complex = std::complex<double>;

/// Branch label k of invGamma_k. Valid branches have k <= 0; operations that
/// receive k >= 1 report it through their own error type.
using BranchIndex = int;

struct EvalConfig {
    double rel_tol = 1e-12;
    int max_iter = 100;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol < 1e-3) || max_iter < 1)
            throw DomainError("EvalConfig requires 0 < rel_tol < 1e-3 and max_iter >= 1");
    }
};

namespace detail {

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_log_2pi = 0.91893853320467274178032973640562;
inline constexpr double log_pi = 1.1447298858494001741434273513531;
inline constexpr double log_max_double = 709.78271289338397;

/// Distance below which an argument counts as sitting on a pole of Gamma.
inline constexpr double pole_tolerance = 1e-12;

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficient set).
// Relative error below 2e-15 on Re z >= 1/2.
inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
};

/// sin(pi x) with exact argument reduction, so sin_pi(n) == 0 for integers.
inline double sin_pi(double x) {
    double r = std::remainder(x, 2.0);  // exact, in [-1, 1]
    if (r > 0.5)
        r = 1.0 - r;
    else if (r < -0.5)
        r = -1.0 - r;
    return std::sin(pi * r);
}

inline double cos_pi(double x) {
    const double a = std::abs(std::remainder(x, 2.0));  // in [0, 1]
    if (a < 0.25) return std::cos(pi * a);
    return std::sin(pi * (0.5 - a));
}

inline Complex sin_pi(Complex z) {
    const double y = pi * z.imag();
    return {sin_pi(z.real()) * std::cosh(y), cos_pi(z.real()) * std::sinh(y)};
}

/// cot(pi z) = (sin 2a - i sinh 2b) / (cosh 2b - cos 2a), written so that
/// large |Im z| does not overflow.
inline Complex cot_pi(Complex z) {
    const double s = sin_pi(2.0 * z.real());
    const double c = cos_pi(2.0 * z.real());
    const double y2 = 2.0 * pi * z.imag();
    const double ch = std::cosh(y2);
    const double denom = 1.0 - c / ch;
    return {(s / ch) / denom, -std::tanh(y2) / denom};
}

inline bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

inline bool near_pole(Complex z, double tol = pole_tolerance) {
    const double n = std::round(z.real());
    return n <= 0.0 && std::abs(z - Complex(n, 0.0)) < tol;
}

inline std::string describe(Complex z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

/// log Gamma(z) for Re z >= 1/2, T = double or Complex. For complex z this is
/// the branch that is continuous on the half-plane and real on the real axis.
template <class T>
T log_gamma_lanczos(T z) {
    const T zm = z - 1.0;
    T series = lanczos_coef[0];
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i)
        series += lanczos_coef[i] / (zm + static_cast<double>(i));
    const T t = zm + (lanczos_g + 0.5);
    return half_log_2pi + (zm + 0.5) * std::log(t) - t + std::log(series);
}

template <class T>
T digamma_asymptotic(T w) {
    // B_{2n} / (2n) for n = 1..7
    static constexpr std::array<double, 7> a = {
        1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
    };
    const T u = 1.0 / (w * w);
    T tail = a[6];
    for (int i = 5; i >= 0; --i) tail = a[i] + u * tail;
    return std::log(w) - 0.5 / w - u * tail;
}

/// Digamma by upward recurrence to Re w >= 10 followed by the asymptotic
/// series; the caller has already reflected Re z < 0.
template <class T>
T digamma_shifted(T z) {
    T acc = 0.0;
    T w = z;
    while (std::real(w) < 10.0) {
        acc += 1.0 / w;
        w += 1.0;
    }
    return digamma_asymptotic(w) - acc;
}

/// Real digamma without the pole-distance check; only exact poles are
/// undefined. Used by solvers that legitimately work within 1e-12 of a pole.
inline double digamma_real(double x) {
    if (x < 0.0) return digamma_shifted(1.0 - x) - pi * cos_pi(x) / sin_pi(x);
    return digamma_shifted(x);
}

}  // namespace detail

/// Gamma(z). Lanczos for Re z >= 1/2, reflection Gamma(z) Gamma(1-z) = pi/sin(pi z)
/// otherwise. Throws PoleError within 1e-12 of a non-positive integer and
/// OverflowError when |Gamma(z)| is not representable.
inline Complex gamma(Complex z) {
    using namespace detail;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("gamma: non-finite argument");
    if (near_pole(z)) throw PoleError("gamma: pole at " + describe(z));

    Complex result;
    if (z.real() >= 0.5) {
        const Complex lg = log_gamma_lanczos(z);
        if (lg.real() > log_max_double) throw OverflowError("gamma: overflow at " + describe(z));
        result = std::exp(lg);
    } else {
        const Complex lg = log_gamma_lanczos(1.0 - z);
        const Complex s = sin_pi(z);
        if (lg.real() < log_max_double)
            result = pi / (s * std::exp(lg));
        else
            result = std::exp(log_pi - std::log(s) - lg);
    }
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
        throw OverflowError("gamma: overflow at " + describe(z));
    return result;
}

inline double gamma(double x) {
    using namespace detail;
    if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
    if (near_pole(Complex(x, 0.0))) throw PoleError("gamma: pole at " + std::to_string(x));

    double result;
    if (x >= 0.5) {
        const double lg = log_gamma_lanczos(x);
        if (lg > log_max_double) throw OverflowError("gamma: overflow at " + std::to_string(x));
        result = std::exp(lg);
    } else {
        const double lg = log_gamma_lanczos(1.0 - x);
        const double s = sin_pi(x);
        if (lg < log_max_double)
            result = pi / (s * std::exp(lg));
        else
            result = std::copysign(std::exp(log_pi - std::log(std::abs(s)) - lg), s);
    }
    if (!std::isfinite(result)) throw OverflowError("gamma: overflow at " + std::to_string(x));
    return result;
}

/// A logarithm of Gamma(z). On Re z >= 1/2 it is the continuous branch that is
/// real on the positive axis; on the left half-plane it is only determined
/// modulo 2 pi i. Unlike gamma(), this only rejects exact poles, since its
/// real part stays representable arbitrarily close to one.
inline Complex log_gamma(Complex z) {
    using namespace detail;
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at " + describe(z));
    if (z.real() >= 0.5) return log_gamma_lanczos(z);
    return log_pi - std::log(sin_pi(z)) - log_gamma_lanczos(1.0 - z);
}

/// ln|Gamma(x)| for real x; only exact poles are rejected.
inline double log_abs_gamma(double x) {
    using namespace detail;
    if (is_nonpositive_integer(Complex(x, 0.0)))
        throw PoleError("log_abs_gamma: pole at " + std::to_string(x));
    if (x >= 0.5) return log_gamma_lanczos(x);
    return log_pi - std::log(std::abs(sin_pi(x))) - log_gamma_lanczos(1.0 - x);
}

/// Digamma Psi(z) = Gamma'(z) / Gamma(z).
inline Complex digamma(Complex z) {
    using namespace detail;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("digamma: non-finite argument");
    if (near_pole(z)) throw PoleError("digamma: pole at " + describe(z));
    if (z.real() < 0.0) return digamma_shifted(1.0 - z) - pi * cot_pi(z);
    return digamma_shifted(z);
}

inline double digamma(double x) {
    using namespace detail;
    if (!std::isfinite(x)) throw DomainError("digamma: non-finite argument");
    if (near_pole(Complex(x, 0.0))) throw PoleError("digamma: pole at " + std::to_string(x));
    return digamma_real(x);
}

/// Principal branch W0 of Lambert W: the w >= -1 with w e^w = x.
inline double lambert_w0(double x, const EvalConfig& cfg = {}) {
    cfg.validate();
    constexpr double branch_point = -1.0 / std::numbers::e;
    if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
    if (x < branch_point) {
        // Allow a few ulps of slack so that a computed -1/e is accepted.
        if (x >= branch_point * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())) return -1.0;
        throw DomainError("lambert_w0: argument below -1/e");
    }
    if (x == branch_point) return -1.0;
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x;

    if (x > std::numbers::e) {
        // Newton on w + ln w = ln x, which never forms e^w.
        const double lx = std::log(x);
        const double llx = std::log(lx);
        double w = lx - llx + llx / lx;
        for (int i = 0; i < cfg.max_iter; ++i) {
            const double step = (w + std::log(w) - lx) / (1.0 + 1.0 / w);
            w -= step;
            if (std::abs(step) <= cfg.rel_tol * std::abs(w)) break;
        }
        return w;
    }

    double w;
    if (x < -0.25) {
        const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
    } else {
        w = std::log1p(x);
    }
    for (int i = 0; i < cfg.max_iter; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0 || f == 0.0) break;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (w < -1.0) w = -1.0;
        if (std::abs(step) <= cfg.rel_tol * (1.0 + std::abs(w))) break;
    }
    return w;
}

}  // namespace invgamma
