#include <doctest.h>

#include <cmath>
#include <numeric>

#include "helecell/curve_geometry.hpp"
#include "helecell/errors.hpp"
#include "test_support.hpp"

using namespace helecell;
using namespace helecell::testing;

namespace {

PolygonalCurve unit_square() { return PolygonalCurve({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

PolygonalCurve l_shape() { return PolygonalCurve({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }

}  // namespace

TEST_CASE("regular hexagon curvature") {
    const auto cache = build_geometry(regular_polygon(6));
    for (double k : cache.curvature) CHECK(k == doctest::Approx(1.1547005383792515).epsilon(1e-14));
    for (double c : cache.half_cos) CHECK(c == doctest::Approx(std::cos(kPi / 6)).epsilon(1e-14));
}

TEST_CASE("unit square frames") {
    const auto cache = build_geometry(unit_square());
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(cache.vertex_tangent[1].x == doctest::Approx(s));
    CHECK(cache.vertex_tangent[1].y == doctest::Approx(s));
    CHECK(cache.vertex_normal[1].x == doctest::Approx(s));
    CHECK(cache.vertex_normal[1].y == doctest::Approx(-s));
    CHECK(cache.exterior_angle[1] == doctest::Approx(kPi / 2));
    CHECK(cache.edge_normal[1].x == doctest::Approx(0.0));
    CHECK(cache.edge_normal[1].y == doctest::Approx(-1.0));
    CHECK(cache.midpoint[1].x == doctest::Approx(0.5));
    CHECK(cache.area == doctest::Approx(1.0));
    CHECK(cache.perimeter == doctest::Approx(4.0));
    CHECK(cache.barycenter.x == doctest::Approx(0.5));
    CHECK(cache.barycenter.y == doctest::Approx(0.5));
}

TEST_CASE("collinear vertex is flat") {
    const auto cache = build_geometry(PolygonalCurve({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {0, 1}}));
    CHECK(cache.exterior_angle[1] == doctest::Approx(0.0));
    CHECK(cache.half_tan[1] == doctest::Approx(0.0));
    CHECK(cache.half_cos[1] == doctest::Approx(1.0));
}

TEST_CASE("regular polygon closed forms") {
    for (std::size_t n : {3u, 7u, 50u, 360u}) {
        const double r = 1.7;
        const auto cache = build_geometry(regular_polygon(n, r, 0.3, {0.2, -0.4}));
        const double nn = static_cast<double>(n);
        CHECK(cache.perimeter == doctest::Approx(2 * nn * r * std::sin(kPi / nn)).epsilon(1e-13));
        CHECK(cache.area == doctest::Approx(0.5 * nn * r * r * std::sin(2 * kPi / nn)).epsilon(1e-13));
        CHECK(cache.barycenter.x == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(cache.barycenter.y == doctest::Approx(-0.4).epsilon(1e-12));
        for (double k : cache.curvature) CHECK(k == doctest::Approx(1.0 / (r * std::cos(kPi / nn))).epsilon(1e-12));
    }
}

TEST_CASE("square points") {
    const auto sq = unit_square();
    CHECK(point_in_polygon(sq, {0.5, 0.5}));
    CHECK_FALSE(point_in_polygon(sq, {2.0, 0.5}));
    CHECK(winding_number(sq, {0.5, 0.5}) == 1);
    CHECK(winding_number(sq, {-0.5, 0.5}) == 0);
}

TEST_CASE("concave notch is exterior") {
    const auto l = l_shape();
    CHECK_FALSE(point_in_polygon(l, {1.5, 1.5}));
    CHECK(point_in_polygon(l, {0.5, 1.5}));
    CHECK(point_in_polygon(l, {1.5, 0.5}));
    const WindingClassifier wc(l);
    CHECK(wc.winding_number({1.5, 1.5}) == 0);
    CHECK(wc.winding_number({0.5, 1.5}) == 1);
}

TEST_CASE("opposing edges raise CuspError") {
    const PolygonalCurve c({{0, 0}, {2, 0}, {2, 1}, {3, 1}, {1, 1}, {0, 1}});
    try {
        build_geometry(c);
        FAIL("expected CuspError");
    } catch (const CuspError& e) {
        CHECK(e.index() == 3);
    }
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(PolygonalCurve({{0, 0}, {1, 0}}), CurveError);
    CHECK_THROWS_AS(PolygonalCurve({{0, 0}, {0, 1}, {1, 0}}), CurveError);
    CHECK_THROWS_AS(PolygonalCurve({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), DegenerateEdgeError);
    CHECK_THROWS_AS(PolygonalCurve({{0, 0}, {1, 0}, {NAN, 1}}), CurveError);
}

TEST_CASE("property: frames are orthonormal and angles close") {
    Generator gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = gen.star_polygon(gen.index(3, 80));
        const auto cache = build_geometry(c);
        const double sum = std::accumulate(cache.exterior_angle.begin(), cache.exterior_angle.end(), 0.0);
        CHECK(sum == doctest::Approx(2 * kPi).epsilon(1e-12));
        for (std::size_t i = 0; i < cache.size(); ++i) {
            CHECK(std::abs(dot(cache.vertex_normal[i], cache.vertex_tangent[i])) < 1e-12);
            CHECK(norm(cache.vertex_normal[i]) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(norm(cache.edge_tangent[i]) == doctest::Approx(1.0).epsilon(1e-12));
        }
        std::vector<Vec2> v(c.vertices().begin(), c.vertices().end());
        CHECK(cache.area == doctest::Approx(shoelace(v)).epsilon(1e-12));
    }
}

TEST_CASE("property: classification agrees with ray casting") {
    Generator gen(12);
    for (int trial = 0; trial < 60; ++trial) {
        const auto c = gen.star_polygon(gen.index(3, 60));
        const WindingClassifier wc(c);
        for (int k = 0; k < 300; ++k) {
            const Vec2 p{gen.uniform(-1.7, 1.7), gen.uniform(-1.7, 1.7)};
            if (distance_to_curve(c, p) < 1e-9) continue;
            const bool expected = ray_cast_inside(c, p);
            CHECK(point_in_polygon(c, p) == expected);
            CHECK((winding_number(c, p) == 1) == expected);
            CHECK(wc.winding_number(p) == winding_number(c, p));
        }
    }
}

TEST_CASE("property: relabeling and translation") {
    Generator gen(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = gen.star_polygon(gen.index(4, 40));
        const std::size_t n = c.size();
        const std::size_t k = gen.index(1, n - 1);
        const Vec2 shift{gen.uniform(-3, 3), gen.uniform(-3, 3)};
        std::vector<Vec2> moved(n);
        for (std::size_t i = 0; i < n; ++i) moved[i] = c[(i + k) % n] + shift;
        const auto a = build_geometry(c);
        const auto b = build_geometry(PolygonalCurve(moved));
        CHECK(b.area == doctest::Approx(a.area).epsilon(1e-12));
        CHECK(b.perimeter == doctest::Approx(a.perimeter).epsilon(1e-12));
        CHECK(b.barycenter.x == doctest::Approx(a.barycenter.x + shift.x).epsilon(1e-10));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(b.curvature[i] == doctest::Approx(a.curvature[(i + k) % n]).epsilon(1e-10));
        }
    }
}

TEST_CASE("edge deviation and sign changes") {
    const auto cache = build_geometry(regular_polygon(40));
    CHECK(max_edge_deviation(cache) < 1e-12);
    CHECK(curvature_sign_changes(cache) == 0);
    std::vector<Vec2> v(200);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double th = 2 * kPi * static_cast<double>(i) / 200.0;
        const double r = 1.0 + 0.3 * std::cos(4 * th);
        v[i] = {r * std::cos(th), r * std::sin(th)};
    }
    CHECK(curvature_sign_changes(build_geometry(PolygonalCurve(v))) == 8);
}
