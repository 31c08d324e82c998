#pragma once

// Self-intersection of a polyline in the complex plane.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace invgamma {

namespace detail {

inline constexpr double collinear_tol = 1e-12;

struct Point {
    double x;
    double y;
};

/// Sign of the turn a -> b -> c; 0 when the sine of the angle at a is
/// within tolerance (or a coincides with b or c).
inline int orientation(Point a, Point b, Point c) {
    const double ux = b.x - a.x, uy = b.y - a.y, vx = c.x - a.x, vy = c.y - a.y;
    const double cross = ux * vy - uy * vx;
    if (std::abs(cross) <= collinear_tol * std::hypot(ux, uy) * std::hypot(vx, vy)) return 0;
    return cross > 0.0 ? 1 : -1;
}

/// c lies in the bounding box of a, b (used once a, b, c are collinear).
inline bool within_box(Point a, Point b, Point c) {
    return std::min(a.x, b.x) - collinear_tol <= c.x && c.x <= std::max(a.x, b.x) + collinear_tol &&
           std::min(a.y, b.y) - collinear_tol <= c.y && c.y <= std::max(a.y, b.y) + collinear_tol;
}

/// Closed segments pq and rs share at least one point.
inline bool segments_meet(Point p, Point q, Point r, Point s) {
    const int o1 = orientation(p, q, r);
    const int o2 = orientation(p, q, s);
    const int o3 = orientation(r, s, p);
    const int o4 = orientation(r, s, q);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && within_box(p, q, r)) return true;
    if (o2 == 0 && within_box(p, q, s)) return true;
    if (o3 == 0 && within_box(r, s, p)) return true;
    if (o4 == 0 && within_box(r, s, q)) return true;
    return false;
}

/// Uniform grid over the unit box; each cell lists the segments whose
/// bounding boxes overlap it.
class SegmentGrid {
public:
    explicit SegmentGrid(std::size_t segments)
        : cells_(std::clamp<std::size_t>(static_cast<std::size_t>(std::sqrt(static_cast<double>(segments))), 1, 256)) {}

    template <class F>
    void for_cells(Point a, Point b, F&& f) const {
        const auto lo_x = cell(std::min(a.x, b.x) - collinear_tol), hi_x = cell(std::max(a.x, b.x) + collinear_tol);
        const auto lo_y = cell(std::min(a.y, b.y) - collinear_tol), hi_y = cell(std::max(a.y, b.y) + collinear_tol);
        for (std::size_t i = lo_x; i <= hi_x; ++i)
            for (std::size_t j = lo_y; j <= hi_y; ++j) f(i * cells_ + j);
    }

    void insert(std::size_t id, Point a, Point b) {
        for_cells(a, b, [&](std::size_t c) { table_[c].push_back(id); });
    }

    const std::vector<std::size_t>* at(std::size_t c) const {
        const auto it = table_.find(c);
        return it == table_.end() ? nullptr : &it->second;
    }

private:
    std::size_t cell(double v) const {
        const double scaled = std::clamp(v, 0.0, 1.0) * static_cast<double>(cells_);
        return std::min(cells_ - 1, static_cast<std::size_t>(scaled));
    }

    std::size_t cells_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> table_;
};

}  // namespace detail

/// First pair of non-adjacent segments (i, j), i + 1 < j, that share a point,
/// where segment i joins poly[i] and poly[i+1]. "First" is in parameter order:
/// the smallest j, then the smallest i. Touching counts as meeting.
inline std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(std::span<const std::complex<double>> poly) {
    if (poly.size() < 4) return std::nullopt;

    double min_x = poly[0].real(), max_x = min_x, min_y = poly[0].imag(), max_y = min_y;
    for (const auto& z : poly) {
        min_x = std::min(min_x, z.real());
        max_x = std::max(max_x, z.real());
        min_y = std::min(min_y, z.imag());
        max_y = std::max(max_y, z.imag());
    }
    const double scale = std::max({max_x - min_x, max_y - min_y, 1e-300});
    std::vector<detail::Point> pts;
    pts.reserve(poly.size());
    for (const auto& z : poly) pts.push_back({(z.real() - min_x) / scale, (z.imag() - min_y) / scale});

    const std::size_t segments = pts.size() - 1;
    detail::SegmentGrid grid(segments);
    std::vector<std::size_t> candidates;
    for (std::size_t j = 2; j < segments; ++j) {
        grid.insert(j - 2, pts[j - 2], pts[j - 1]);
        candidates.clear();
        grid.for_cells(pts[j], pts[j + 1], [&](std::size_t c) {
            if (const auto* list = grid.at(c)) candidates.insert(candidates.end(), list->begin(), list->end());
        });
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (std::size_t i : candidates)
            if (detail::segments_meet(pts[i], pts[i + 1], pts[j], pts[j + 1])) return std::pair{i, j};
    }
    return std::nullopt;
}

inline std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(const std::vector<std::complex<double>>& poly) {
    return find_self_intersection(std::span<const std::complex<double>>(poly));
}

}  // namespace invgamma
