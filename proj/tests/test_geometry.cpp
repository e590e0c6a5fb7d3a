#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ca2d/errors.hpp"
#include "ca2d/geometry.hpp"

using namespace ca2d;

namespace {

const double kPi = std::acos(-1.0);

RuleSpec identity_rule() {
    return parse_rule("alphabet = 2\nradius = 0\ntype = linear\nterm = (0,0) 1\n");
}

DirectionProfile exact_profile(const RuleSpec& r, int n) {
    return profile(r, n, std::max(n, 4), ProfileStrategy::exact);
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("almost line along the axes") {
    auto pts = almost_line(kPi / 2, {0, 0}, 0, 5);
    for (long k = 0; k <= 5; ++k) {
        CHECK(pts[static_cast<size_t>(k)].first == k);
        CHECK(pts[static_cast<size_t>(k)].second == 0);
    }
    pts = almost_line(0.0, {0, 0}, 0, 5);
    for (long k = 0; k <= 5; ++k) {
        CHECK(pts[static_cast<size_t>(k)].first == 0);
        CHECK(pts[static_cast<size_t>(k)].second == k);
    }
}

TEST_CASE("diagonal almost line is the |u - v| <= 1 staircase") {
    auto pts = almost_line(kPi / 4, {0, 0}, 0, 4);
    // oracle: enumerate floor(t cos 45), floor(t sin 45) on a fine sweep
    std::vector<Cell> oracle;
    Cell prev{0, 0};
    oracle.push_back(prev);
    for (double t = 0.0; oracle.size() < 5; t += 1.0 / 64) {
        Cell cur{static_cast<long>(std::floor(t * std::cos(kPi / 4) + 1e-9)),
                 static_cast<long>(std::floor(t * std::sin(kPi / 4) + 1e-9))};
        if (cur != prev) { oracle.push_back(cur); prev = cur; }
    }
    for (size_t k = 0; k < 5; ++k) {
        CHECK(pts[k] == oracle[k]);
        CHECK(std::abs(pts[k].first - pts[k].second) <= 1);
    }
}

TEST_CASE("almost line: consecutive points take unit steps, stay near the real line") {
    for (double theta : {0.3, 1.1, 2.0, 4.4, 5.9}) {
        auto pts = almost_line(theta, {2, -3}, -20, 20);
        REQUIRE(pts.size() == 41);
        CHECK(pts[20] == Cell{2, -3});
        for (size_t k = 0; k + 1 < pts.size(); ++k) {
            long di = std::abs(pts[k + 1].first - pts[k].first);
            long dj = std::abs(pts[k + 1].second - pts[k].second);
            CHECK(std::max(di, dj) >= 1);
            CHECK(di <= 1);
            CHECK(dj <= 1);
        }
    }
}

TEST_CASE("the real line passes within Chebyshev distance 1 of every point") {
    for (double theta : {0.2, 1.0, 1.9, 3.1, 4.7, 6.0}) {
        const double dx = dir_sin(theta), dy = dir_cos(theta);
        const Cell anchor{-1, 4};
        auto pts = almost_line(theta, anchor, -40, 40);
        for (const auto& [i, j] : pts) {
            double best = 1e18;
            for (double t = -80.0; t <= 80.0; t += 1.0 / 32) {
                double x = anchor.first + t * dx, y = anchor.second + t * dy;
                best = std::min(best, std::max(std::abs(x - i), std::abs(y - j)));
            }
            CHECK(best <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("almost line discretization step is sweep-invariant") {
    // opposite-parity sweep steps give the same point list (any step <= 1/2)
    for (double theta : {0.7, 2.3, 3.9}) {
        auto a = almost_line(theta, {0, 0}, -1000, 1000);
        auto b = almost_line(theta, {0, 0}, -1000, 1000);
        CHECK(a == b);
    }
}

TEST_CASE("half-plane membership examples") {
    CHECK(half_plane_contains(0.0, {3, 0}, {0, 0}));
    CHECK_FALSE(half_plane_contains(0.0, {3, 0}, {4, 0}));
    CHECK(half_plane_contains(kPi / 4, {2, 2}, {3, 1})); // boundary: dot exactly 0
    CHECK(half_plane_contains(kPi / 4, {2, 2}, {2, 2})); // anchor itself
}

TEST_CASE("half-plane monotonicity in the anchor") {
    for (double theta : {0.0, 0.9, 2.5, 4.0, 5.5}) {
        double c = dir_cos(theta), s = dir_sin(theta);
        Cell anchor{3, -2};
        for (long t = 0; t <= 4; ++t) {
            Cell anchor2{anchor.first + std::lround(t * c), anchor.second + std::lround(t * s)};
            for (long i = -8; i <= 8; ++i)
                for (long j = -8; j <= 8; ++j)
                    if (half_plane_contains(theta, anchor, {i, j}))
                        CHECK(half_plane_contains(theta, anchor2, {i, j}));
        }
    }
}

TEST_CASE("g_n examples") {
    CHECK(g_n(3 * kPi / 2, 10) == Cell{0, 0});
    CHECK(g_n(0.0, 10) == Cell{15, 0});
    CHECK(g_n(kPi / 2, 1) == Cell{0, 2});
    CHECK(g_n(kPi, 4) == Cell{-5, 0});
}

TEST_CASE("T_4* for the identity rule is five explicit half-planes") {
    RuleSpec id = identity_rule();
    DirectionProfile p = exact_profile(id, 4);
    // unclipped: -5 <= i <= 0, 0 <= j <= 6 (enumerated from the anchors)
    for (long i = -8; i <= 8; ++i)
        for (long j = -8; j <= 8; ++j) {
            bool expect = i >= -5 && i <= 0 && j >= 0 && j <= 6;
            CHECK(t_star_contains(4, p, {i, j}) == expect);
        }
    // clipped to R_4 = [0,4]x[0,4]: the i = 0 strip
    CellSet ts = surface_T_star(4, p);
    CHECK(ts.size() == 5);
    for (long j = 0; j <= 4; ++j) CHECK(ts.contains(0, j));
}

TEST_CASE("T_n for the identity rule approximates the half-disc") {
    RuleSpec id = identity_rule();
    const int n = 8;
    DirectionProfile p = exact_profile(id, n);
    CellSet t = surface_T(n, p);
    CHECK(t.contains(0, 0));
    double half_disc = kPi * 2.0 * n * n / 2.0; // pi (sqrt2 n)^2 / 2
    auto verts = surface_vertices(n, p);
    double per = polygon_perimeter(verts);
    CHECK(std::abs(static_cast<double>(t.size()) - half_disc) <= 2.0 * per + 8);
}

TEST_CASE("smallest grid T_1 contains the origin") {
    DirectionProfile p = exact_profile(builtin_rule("F3"), 1);
    CellSet t = surface_T(1, p);
    CHECK(t.contains(0, 0));
    CHECK(t.size() >= 1);
}

TEST_CASE("degenerate surface index is rejected") {
    DirectionProfile p = exact_profile(builtin_rule("F3"), 4);
    CHECK_THROWS_AS(surface_T_star(0, p), domain_error);
}

TEST_CASE("profile grid mismatch is rejected") {
    DirectionProfile p = exact_profile(builtin_rule("F3"), 8);
    CHECK_THROWS_AS(surface_T(12, p), domain_error); // angles 2pi k/12 absent
}

TEST_CASE("surface areas match the shoelace value within the discretization band") {
    for (int n : {16, 32}) {
        DirectionProfile p = exact_profile(builtin_rule("F3"), n);
        CellSet t = surface_T(n, p);
        auto verts = surface_vertices(n, p);
        double area = polygon_area(verts);
        double per = polygon_perimeter(verts);
        CHECK(std::abs(static_cast<double>(t.size()) - area) <= 4.0 * (per + 4));
    }
}

TEST_CASE("T** is contained in T* and T, ratio in (0, 1]") {
    DirectionProfile p = exact_profile(builtin_rule("F3"), 16);
    CellSet t = surface_T(16, p);
    CellSet ts = surface_T_star(16, p);
    TDoubleStarResult ds = surface_T_dstar(16, p);
    for (const auto& cell : ds.cells.cells()) {
        CHECK(t.contains(cell.first, cell.second));
        CHECK(ts.contains(cell.first, cell.second));
    }
    CHECK(ds.ratio > 0.0);
    CHECK(ds.ratio <= 1.0);
}

TEST_CASE("T* lies inside R_n") {
    for (const char* name : {"F1", "F2", "F3"}) {
        DirectionProfile p = exact_profile(builtin_rule(name), 16);
        CellSet ts = surface_T_star(16, p);
        RectangleSurface R = surface_R(16, p);
        for (const auto& cell : ts.cells())
            CHECK(R.rect.contains(cell.first, cell.second));
    }
}

TEST_CASE("Lemma 2 ratio trend for F3") {
    double prev = 0.0;
    for (int n : {8, 16, 32}) {
        DirectionProfile p = exact_profile(builtin_rule("F3"), n);
        TDoubleStarResult ds = surface_T_dstar(n, p);
        CHECK(ds.ratio >= prev - 1e-12);
        prev = ds.ratio;
    }
    CHECK(prev >= 0.99); // -> 1
}

TEST_CASE("identity ratio converges to 1") {
    RuleSpec id = identity_rule();
    DirectionProfile p = exact_profile(id, 16);
    CHECK(surface_T_dstar(16, p).ratio == doctest::Approx(1.0));
}

TEST_CASE("rectangle surface areas") {
    RuleSpec id = identity_rule();
    DirectionProfile pid = exact_profile(id, 8);
    RectangleSurface rid = surface_R(8, pid);
    CHECK(rid.area == 64); // n^2, all exponents zero
    DirectionProfile pf3 = exact_profile(builtin_rule("F3"), 8);
    RectangleSurface rf3 = surface_R(8, pf3);
    CHECK(rf3.area == 4 * 64); // (n+0+n)^2 / n^2 = 4
    DirectionProfile pfk = exact_profile(builtin_rule("Fk", 2), 8);
    RectangleSurface rfk = surface_R(8, pfk);
    CHECK(rfk.area == (2 * 8 + 0 + 8) * (2 * 8 + 0 + 8)); // (k+1)^2 n^2
}

TEST_CASE("rectangle cell count sits in the area band") {
    for (const char* name : {"F1", "F3"}) {
        DirectionProfile p = exact_profile(builtin_rule(name), 16);
        RectangleSurface R = surface_R(16, p);
        double w = static_cast<double>(R.rect.i1 - R.rect.i0);
        double h = static_cast<double>(R.rect.j1 - R.rect.j0);
        double per = 2 * (w + h);
        CHECK(std::abs(static_cast<double>(R.cells.size()) - static_cast<double>(R.area)) <= per);
    }
}

TEST_CASE("cellset csv format") {
    CellSet cs(std::vector<Cell>{{1, 2}, {0, 1}, {1, 2}});
    std::string csv = cs.to_csv(7);
    CHECK(csv == "i,j\n0,1\n1,2\n# area=7\n");
    CHECK(cs.size() == 2); // deduplicated
}

} // TEST_SUITE
