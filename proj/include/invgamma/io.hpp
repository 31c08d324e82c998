#pragma once

// JSON and CSV emitters for the critical table, contour atlases and
// boundary curves. Numbers are written with 17 significant digits so that
// they read back bit-exactly.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "invgamma/contour_atlas.hpp"
#include "invgamma/critical_points.hpp"

namespace invgamma::io {

using nlohmann::json;

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json point(Complex z) { return json::array({z.real(), z.imag()}); }

inline json points(const std::vector<Complex>& zs) {
    json out = json::array();
    for (const Complex& z : zs) out.push_back(point(z));
    return out;
}

/// Rows k, psi_k, gamma_k for k = 0 down to kmin.
inline void write_critical_csv(std::ostream& os, BranchIndex kmin) {
    if (kmin > 0) throw InvalidBranch("critical table: kmin must be <= 0");
    os << "k,psi,gamma\n";
    for (BranchIndex k = 0; k >= kmin; --k) {
        const CriticalPoint cp = critical_point(k);
        os << k << ',' << fmt17(cp.psi) << ',' << fmt17(cp.gamma) << '\n';
    }
}

inline json critical_json(BranchIndex kmin) {
    if (kmin > 0) throw InvalidBranch("critical table: kmin must be <= 0");
    json rows = json::array();
    for (BranchIndex k = 0; k >= kmin; --k) {
        const CriticalPoint cp = critical_point(k);
        rows.push_back({{"k", k}, {"psi", cp.psi}, {"gamma", cp.gamma}});
    }
    return rows;
}

inline json atlas_json(const Atlas& atlas) {
    json anchors = json::array();
    for (double g : atlas.anchors) anchors.push_back(g);
    for (double g : atlas.explore_anchors) anchors.push_back(g);
    json contours = json::array();
    for (const MappedContour& m : atlas.contours) {
        contours.push_back({{"anchor", m.source.anchor},
                            {"anchor_g", m.source.anchor_g},
                            {"branch", m.source.branch},
                            {"trimmed", m.source.trimmed},
                            {"samples", points(m.source.samples)},
                            {"image", points(m.image)}});
    }
    return {{"branch", atlas.branch}, {"anchors", anchors}, {"contours", contours}};
}

inline void write_atlas_csv(std::ostream& os, const Atlas& atlas) {
    os << "contour_id,point_index,src_re,src_im,img_re,img_im\n";
    for (std::size_t c = 0; c < atlas.contours.size(); ++c) {
        const MappedContour& m = atlas.contours[c];
        for (std::size_t i = 0; i < m.image.size(); ++i) {
            os << c << ',' << i << ',' << fmt17(m.source.samples[i].real()) << ',' << fmt17(m.source.samples[i].imag())
               << ',' << fmt17(m.image[i].real()) << ',' << fmt17(m.image[i].imag()) << '\n';
        }
    }
}

inline const char* side_name(CutSide side) { return side == CutSide::above ? "above" : "below"; }

/// Segment end points as JSON numbers, with null for -inf.
inline json segment_json(const CutSegment& seg) {
    auto end = [](double v) { return std::isinf(v) ? json(nullptr) : json(v); };
    return json::array({end(seg.lo), end(seg.hi)});
}

inline json boundary_json(BranchIndex k, const std::vector<BoundaryCurve>& curves) {
    json out = json::array();
    for (const BoundaryCurve& b : curves) {
        out.push_back({{"segment", segment_json(b.segment)},
                       {"side", side_name(b.side)},
                       {"z", points(b.z)},
                       {"w", points(b.w)}});
    }
    return {{"branch", k}, {"curves", out}};
}

inline void write_boundary_csv(std::ostream& os, const std::vector<BoundaryCurve>& curves) {
    os << "curve_id,side,point_index,z_re,z_im,w_re,w_im\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const BoundaryCurve& b = curves[c];
        for (std::size_t i = 0; i < b.w.size(); ++i) {
            os << c << ',' << side_name(b.side) << ',' << i << ',' << fmt17(b.z[i].real()) << ',' << fmt17(b.z[i].imag())
               << ',' << fmt17(b.w[i].real()) << ',' << fmt17(b.w[i].imag()) << '\n';
        }
    }
}

}  // namespace invgamma::io
