#pragma once

// Contours erected on the real values of invGamma_k, their images under
// Gamma, trimming at the real axis, and the boundary curves obtained by
// mapping the cuts back through the complex inverse.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invgamma/complex_inverse.hpp"
#include "invgamma/errors.hpp"
#include "invgamma/geometry.hpp"
#include "invgamma/real_inverse.hpp"
#include "invgamma/specfun.hpp"

namespace invgamma {

struct Contour {
    BranchIndex branch = 0;
    double anchor = 0.0;    ///< x0 = invGamma_k(anchor_g), the real point the contour rises from
    double anchor_g = 0.0;  ///< Gamma(x0)
    std::vector<Complex> samples;
    bool trimmed = false;
};

struct MappedContour {
    Contour source;
    std::vector<Complex> image;
    std::optional<std::pair<std::size_t, std::size_t>> self_intersection;
};

enum class TrimMode {
    prefix,     ///< keep [0, first axis crossing]
    two_sided,  ///< keep [first crossing, second crossing]
};

struct CutTarget {
    TrimMode mode = TrimMode::prefix;
    double axis_tol = 1e-3;
};

/// n samples from x0 = real_inv_gamma(anchor_g, k) straight up to x0 + i height
/// (down when `downward`). A zero height gives the single sample x0.
inline Contour build_vertical_contour(BranchIndex k, double anchor_g, double height, int n, bool downward = false) {
    if (!(height >= 0.0) || !std::isfinite(height)) throw DomainError("build_vertical_contour: height must be >= 0");
    if (height > 0.0 && n < 2) throw DomainError("build_vertical_contour: n must be >= 2");
    const double x0 = real_inv_gamma(anchor_g, k);
    Contour c{k, x0, anchor_g, {}, false};
    if (height == 0.0) {
        c.samples.emplace_back(x0, 0.0);
        return c;
    }
    const double dir = downward ? -1.0 : 1.0;
    c.samples.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c.samples.emplace_back(x0, dir * height * i / (n - 1));
    return c;
}

inline MappedContour map_contour(const Contour& c) {
    MappedContour m{c, {}, std::nullopt};
    m.image.reserve(c.samples.size());
    for (const Complex& w : c.samples) m.image.push_back(gamma(w));
    m.self_intersection = find_self_intersection(m.image);
    return m;
}

namespace detail {

/// Arc-length parametrization of a polyline.
class PolylinePath {
public:
    explicit PolylinePath(const std::vector<Complex>& pts) : pts_(pts), s_(pts.size(), 0.0) {
        for (std::size_t i = 1; i < pts_.size(); ++i) s_[i] = s_[i - 1] + std::abs(pts_[i] - pts_[i - 1]);
    }

    double length() const { return s_.back(); }
    const std::vector<double>& knots() const { return s_; }

    Complex at(double s) const {
        if (s <= 0.0) return pts_.front();
        if (s >= length()) return pts_.back();
        std::size_t i = std::upper_bound(s_.begin(), s_.end(), s) - s_.begin();
        i = std::min(std::max<std::size_t>(i, 1), pts_.size() - 1);
        const double span = s_[i] - s_[i - 1];
        const double t = span > 0.0 ? (s - s_[i - 1]) / span : 0.0;
        return pts_[i - 1] + t * (pts_[i] - pts_[i - 1]);
    }

private:
    std::vector<Complex> pts_;
    std::vector<double> s_;
};

struct Trace {
    std::vector<double> s;
    std::vector<Complex> f;  ///< Gamma at the path point of each s
};

inline constexpr double max_turn = 0.2;
inline constexpr std::size_t max_trace_points = 1 << 16;

/// Samples Gamma along the path, bisecting both neighbours of any vertex at
/// which the image turns by more than max_turn radians.
inline Trace refine_trace(const PolylinePath& path) {
    Trace tr{path.knots(), {}};
    for (double s : tr.s) tr.f.push_back(gamma(path.at(s)));
    const double min_ds = 1e-6 * path.length();
    for (int pass = 0; pass < 64 && tr.s.size() < max_trace_points; ++pass) {
        std::vector<char> split(tr.s.size() - 1, 0);
        bool any = false;
        for (std::size_t i = 1; i + 1 < tr.s.size(); ++i) {
            const Complex a = tr.f[i] - tr.f[i - 1];
            const Complex b = tr.f[i + 1] - tr.f[i];
            if (a == Complex(0.0) || b == Complex(0.0)) continue;
            if (std::abs(std::arg(b / a)) <= max_turn) continue;
            for (std::size_t j : {i - 1, i}) {
                if (tr.s[j + 1] - tr.s[j] > min_ds) {
                    split[j] = 1;
                    any = true;
                }
            }
        }
        if (!any) break;
        Trace next;
        for (std::size_t i = 0; i + 1 < tr.s.size(); ++i) {
            next.s.push_back(tr.s[i]);
            next.f.push_back(tr.f[i]);
            if (split[i]) {
                const double mid = 0.5 * (tr.s[i] + tr.s[i + 1]);
                next.s.push_back(mid);
                next.f.push_back(gamma(path.at(mid)));
            }
        }
        next.s.push_back(tr.s.back());
        next.f.push_back(tr.f.back());
        tr = std::move(next);
    }
    return tr;
}

inline int imag_sign(Complex f) { return f.imag() > 0.0 ? 1 : (f.imag() < 0.0 ? -1 : 0); }

/// Indices i such that Im Gamma vanishes in (s_i, s_{i+1}] (trace point 0 is
/// ignored: a contour rising from the real axis starts on it).
inline std::vector<std::size_t> axis_crossings(const Trace& tr) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < tr.s.size(); ++i) {
        const int a = imag_sign(tr.f[i]);
        const int b = imag_sign(tr.f[i + 1]);
        if (a == 0) continue;
        if (b == 0 || a != b) out.push_back(i);
    }
    if (tr.s.size() == 2 && imag_sign(tr.f[1]) == 0) out.push_back(0);
    return out;
}

/// Root of Im Gamma(path(s)) in [a, b], bisected to adjacent doubles.
inline double bisect_axis(const PolylinePath& path, double a, double b) {
    int sa = imag_sign(gamma(path.at(a)));
    if (imag_sign(gamma(path.at(b))) == 0) return b;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const int sm = imag_sign(gamma(path.at(mid)));
        if (sm == 0) return mid;
        if (sm == sa)
            a = mid;
        else
            b = mid;
    }
    return b;
}

inline std::vector<Complex> sub_path(const PolylinePath& path, const Trace& tr, double from, double to) {
    std::vector<Complex> out{path.at(from)};
    for (double s : tr.s)
        if (s > from && s < to) out.push_back(path.at(s));
    const Complex end = path.at(to);
    if (end != out.back()) out.push_back(end);
    return out;
}

}  // namespace detail

namespace detail {

inline Contour trim_impl(const Contour& c, const CutTarget& target, bool accept_ends_on_axis) {
    if (!(target.axis_tol > 0.0)) throw DomainError("trim_contour: axis_tol must be positive");
    if (c.samples.empty()) throw DomainError("trim_contour: empty contour");
    const auto on_axis = [&](Complex w) { return std::abs(gamma(w).imag()) <= target.axis_tol; };
    auto fail = [&](const std::string& why) {
        return TrimFailure("trim_contour: anchor " + detail::fmt_num(c.anchor) + " on branch " + std::to_string(c.branch) +
                           ": " + why);
    };

    Contour out = c;
    out.trimmed = true;
    if (c.samples.size() == 1) {
        if (!on_axis(c.samples[0])) throw fail("single sample off the axis");
        return out;
    }

    const detail::PolylinePath path(c.samples);
    const detail::Trace tr = detail::refine_trace(path);
    const std::vector<std::size_t> cross = detail::axis_crossings(tr);
    const std::size_t last = tr.s.size() - 2;  // index of the final interval
    const bool end_on_axis = std::abs(tr.f.back().imag()) <= target.axis_tol;
    const auto crossing_at = [&](std::size_t i) { return detail::bisect_axis(path, tr.s[i], tr.s[i + 1]); };

    std::vector<std::size_t> interior;
    for (std::size_t i : cross)
        if (!(i == last && end_on_axis)) interior.push_back(i);

    double from = 0.0;
    double to = path.length();
    if (target.mode == TrimMode::prefix) {
        if (interior.empty()) {
            if (!(end_on_axis && accept_ends_on_axis)) throw fail("image does not reach the real axis");
        } else {
            to = crossing_at(interior[0]);
        }
    } else {
        // A base on the real line maps into the real range, not onto a cut.
        const bool start_on_axis = on_axis(c.samples.front()) && c.samples.front().imag() != 0.0;
        if (interior.empty()) {
            if (!(end_on_axis && start_on_axis && accept_ends_on_axis))
                throw fail("image does not cross the real axis twice");
        } else if (interior.size() == 1) {
            if (!(end_on_axis && accept_ends_on_axis)) throw fail("image crosses the real axis only once");
            from = crossing_at(interior[0]);
        } else {
            from = crossing_at(interior[0]);
            to = crossing_at(interior[1]);
        }
    }

    if (from > 0.0 || to < path.length()) out.samples = detail::sub_path(path, tr, from, to);
    const MappedContour m = map_contour(out);
    if (m.self_intersection)
        throw fail("trimmed image self-intersects (segments " + std::to_string(m.self_intersection->first) + ", " +
                   std::to_string(m.self_intersection->second) + ")");
    if (std::abs(m.image.back().imag()) > target.axis_tol ||
        (target.mode == TrimMode::two_sided && std::abs(m.image.front().imag()) > target.axis_tol))
        throw fail("trimmed image does not end on the real axis");
    return out;
}

}  // namespace detail

/// Shortens c so that its image stops on the real axis: the prefix up to the
/// first crossing, or (two-sided) the piece between the first two crossings.
/// A contour whose image already ends on the axis is returned unchanged apart
/// from the trimmed flag. Throws TrimFailure when the image never reaches the
/// axis or the kept piece self-intersects.
inline Contour trim_contour(const Contour& c, const CutTarget& target = {}) { return detail::trim_impl(c, target, true); }

inline constexpr double initial_contour_height = 0.5;
inline constexpr double max_contour_height = 48.0;

/// Erects a vertical contour at invGamma_k(anchor_g), doubling its height from
/// 0.5 until it can be trimmed, and returns the trimmed contour.
inline Contour erect_and_trim(BranchIndex k, double anchor_g, const CutTarget& target = {}, bool downward = false,
                              int n = 65) {
    std::string last_error;
    for (double h = initial_contour_height; h <= max_contour_height; h *= 2.0) {
        try {
            return detail::trim_impl(build_vertical_contour(k, anchor_g, h, n, downward), target, false);
        } catch (const TrimFailure& e) {
            last_error = e.what();
        }
    }
    throw TrimFailure(last_error + " (height up to " + detail::fmt_num(max_contour_height) + ")");
}

struct AtlasConfig {
    double axis_tol = 1e-3;
    bool mirror = false;  ///< also erect the downward (conjugate) contours
    int samples = 65;
};

struct Atlas {
    BranchIndex branch = 0;
    std::vector<double> anchors;          ///< g values of the prefix-trimmed contours on branch k
    std::vector<double> explore_anchors;  ///< g values of the two-sided contours on branch k-1
    std::vector<MappedContour> contours;
};

/// Trimmed contours for branch k: one rising from invGamma_k(g) for each g in
/// `anchors_g`, and exploratory ones from invGamma_{k-1}(g) for each g in
/// `explore_g`. Contours are built concurrently.
inline Atlas build_atlas(BranchIndex k, const std::vector<double>& anchors_g, const std::vector<double>& explore_g,
                         const AtlasConfig& cfg = {}) {
    struct Job {
        BranchIndex k;
        double g;
        TrimMode mode;
        bool downward;
    };
    std::vector<Job> jobs;
    for (bool down : {false, true}) {
        if (down && !cfg.mirror) break;
        for (double g : anchors_g) jobs.push_back({k, g, TrimMode::prefix, down});
        for (double g : explore_g) jobs.push_back({k - 1, g, TrimMode::two_sided, down});
    }

    std::vector<std::future<MappedContour>> pending;
    pending.reserve(jobs.size());
    for (const Job& job : jobs) {
        pending.push_back(std::async(std::launch::async, [job, cfg] {
            return map_contour(erect_and_trim(job.k, job.g, {job.mode, cfg.axis_tol}, job.downward, cfg.samples));
        }));
    }
    Atlas atlas{k, anchors_g, explore_g, {}};
    for (auto& f : pending) atlas.contours.push_back(f.get());
    return atlas;
}

struct AtlasAnchors {
    std::vector<double> anchors;  ///< g values on branch k
    std::vector<double> explore;  ///< g values on branch k-1
};

/// Anchor set covering both cuts of branch k (k = 0 or -1).
inline AtlasAnchors default_atlas_anchors(BranchIndex k) {
    detail::require_complex_branch(k);
    auto at = [](std::initializer_list<double> xs) {
        std::vector<double> g;
        for (double x : xs) g.push_back(gamma(x));
        return g;
    };
    if (k == 0) return {{critical_point(0).gamma + 1e-3, 1.0, 1.5, 2.0, 6.0, 24.0, 120.0, 5040.0}, at({0.3, 0.6, 0.9, 1.2, 1.4})};
    return {at({-0.1, -0.3, -0.45, 0.3, 0.9, 1.3}), at({-0.6, -0.8, -0.95})};
}

/// Image end points of the atlas contours that lie on the real axis (both
/// ends of a two-sided contour, the upper end otherwise).
inline std::vector<Complex> trimmed_endpoints(const Atlas& atlas, double axis_tol = 1e-3) {
    std::vector<Complex> out;
    for (const MappedContour& m : atlas.contours) {
        const bool two_sided = m.source.branch != atlas.branch;
        if (two_sided && std::abs(m.image.front().imag()) <= axis_tol) out.push_back(m.image.front());
        if (m.image.size() > 1 && std::abs(m.image.back().imag()) <= axis_tol) out.push_back(m.image.back());
    }
    return out;
}

/// One side of one cut segment mapped through invGamma_k.
struct BoundaryCurve {
    BranchIndex branch;
    CutSegment segment;
    CutSide side;
    std::vector<Complex> z;  ///< points on the cut
    std::vector<Complex> w;  ///< invGamma_k(z) from `side`
};

/// Samples each cut segment of branch k at n points and maps them through
/// invGamma_k from above and from below. Finite segments are sampled evenly
/// up to and including their branch-point end; (-inf, 0) is sampled
/// logarithmically over [-1e3, -1e-3].
inline std::vector<BoundaryCurve> branch_boundary(BranchIndex k, int n, const SolveConfig& cfg = {}) {
    detail::require_complex_branch(k);
    if (n < 2) throw DomainError("branch_boundary: n must be >= 2");
    std::vector<BoundaryCurve> out;
    for (const CutSegment& seg : cut_set(k).segments) {
        std::vector<Complex> z;
        if (std::isinf(seg.lo)) {
            for (int j = 0; j < n; ++j) z.emplace_back(-std::pow(10.0, -3.0 + 6.0 * j / (n - 1)), 0.0);
        } else {
            const double end = seg.lo != 0.0 ? seg.lo : seg.hi;
            for (int j = 0; j < n; ++j) z.emplace_back(end * (j + 1) / n, 0.0);
        }
        for (CutSide side : {CutSide::above, CutSide::below}) {
            BoundaryCurve curve{k, seg, side, z, {}};
            for (const Complex& zj : z) curve.w.push_back(inv_gamma_complex(zj, k, cfg, side));
            out.push_back(std::move(curve));
        }
    }
    return out;
}

}  // namespace invgamma
