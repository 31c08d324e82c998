#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "invgamma/io.hpp"

namespace ig = invgamma;
using nlohmann::json;

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(CriticalCsv, HeaderAndRows) {
    std::ostringstream os;
    ig::io::write_critical_csv(os, -5);
    const auto rows = read_csv(os.str());
    ASSERT_EQ(rows.size(), 7u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"k", "psi", "gamma"}));
    for (int k = 0; k >= -5; --k) {
        const auto& r = rows[1 - k];
        EXPECT_EQ(std::stoi(r[0]), k);
        EXPECT_EQ(std::stod(r[1]), ig::psi_zero(k));
        EXPECT_EQ(std::stod(r[2]), ig::critical_point(k).gamma);
    }
    EXPECT_THROW(ig::io::write_critical_csv(os, 1), ig::InvalidBranch);
}

TEST(AtlasJson, RoundTripsExactly) {
    const ig::Atlas atlas = ig::build_atlas(0, {2.0, 24.0}, {ig::gamma(1.2)});
    const json parsed = json::parse(ig::io::atlas_json(atlas).dump());
    EXPECT_EQ(parsed["branch"], 0);
    ASSERT_EQ(parsed["anchors"].size(), 3u);
    ASSERT_EQ(parsed["contours"].size(), atlas.contours.size());
    for (std::size_t c = 0; c < atlas.contours.size(); ++c) {
        const auto& jc = parsed["contours"][c];
        const auto& m = atlas.contours[c];
        EXPECT_EQ(jc["anchor"].get<double>(), m.source.anchor);
        EXPECT_TRUE(jc["trimmed"].get<bool>());
        ASSERT_EQ(jc["samples"].size(), m.source.samples.size());
        ASSERT_EQ(jc["image"].size(), m.image.size());
        for (std::size_t i = 0; i < m.image.size(); ++i) {
            EXPECT_EQ(jc["samples"][i][0].get<double>(), m.source.samples[i].real());
            EXPECT_EQ(jc["samples"][i][1].get<double>(), m.source.samples[i].imag());
            EXPECT_EQ(jc["image"][i][0].get<double>(), m.image[i].real());
            EXPECT_EQ(jc["image"][i][1].get<double>(), m.image[i].imag());
        }
    }
}

TEST(AtlasCsv, RoundTripsExactly) {
    const ig::Atlas atlas = ig::build_atlas(0, {2.0, 6.0}, {});
    std::ostringstream os;
    ig::io::write_atlas_csv(os, atlas);
    const auto rows = read_csv(os.str());
    EXPECT_EQ(rows[0], (std::vector<std::string>{"contour_id", "point_index", "src_re", "src_im", "img_re", "img_im"}));
    std::size_t expected = 1;
    for (const auto& m : atlas.contours) expected += m.image.size();
    ASSERT_EQ(rows.size(), expected);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& m = atlas.contours[std::stoul(rows[r][0])];
        const std::size_t i = std::stoul(rows[r][1]);
        EXPECT_EQ(std::stod(rows[r][2]), m.source.samples[i].real());
        EXPECT_EQ(std::stod(rows[r][3]), m.source.samples[i].imag());
        EXPECT_EQ(std::stod(rows[r][4]), m.image[i].real());
        EXPECT_EQ(std::stod(rows[r][5]), m.image[i].imag());
    }
}

TEST(BoundaryJson, InfiniteEndIsNull) {
    const auto curves = ig::branch_boundary(0, 4);
    const json j = json::parse(ig::io::boundary_json(0, curves).dump());
    ASSERT_EQ(j["curves"].size(), 4u);
    EXPECT_TRUE(j["curves"][0]["segment"][0].is_null());
    EXPECT_EQ(j["curves"][0]["side"], "above");
    EXPECT_EQ(j["curves"][1]["side"], "below");
    EXPECT_EQ(j["curves"][2]["segment"][1].get<double>(), ig::critical_point(0).gamma);
    EXPECT_EQ(j["curves"][3]["w"][3][0].get<double>(), curves[3].w[3].real());
}

TEST(BoundaryCsv, Layout) {
    const auto curves = ig::branch_boundary(-1, 5);
    std::ostringstream os;
    ig::io::write_boundary_csv(os, curves);
    const auto rows = read_csv(os.str());
    ASSERT_EQ(rows.size(), 1u + 4u * 5u);
    EXPECT_EQ(rows[0][0], "curve_id");
    EXPECT_EQ(std::stod(rows[20][5]), curves[3].w[4].real());
}
