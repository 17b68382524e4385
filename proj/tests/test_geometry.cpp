#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rgg/geometry.hpp"
#include "rgg/rng.hpp"

using namespace rgg;

namespace {

Obb unit_box_at(const Vec3& c) {
    Obb o;
    o.center = c;
    o.half_extents = {0.5, 0.5, 0.5};
    return o;
}

std::vector<Vec3> box_surface_samples(const Vec3& he, const Transform& pose, int n, Rng& rng) {
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        // pick a face, then a uniform point on it
        const int face = rng.uniform_int(0, 5);
        Vec3 p{rng.uniform(-he.x, he.x), rng.uniform(-he.y, he.y), rng.uniform(-he.z, he.z)};
        if (face == 0) p.x = he.x;
        if (face == 1) p.x = -he.x;
        if (face == 2) p.y = he.y;
        if (face == 3) p.y = -he.y;
        if (face == 4) p.z = he.z;
        if (face == 5) p.z = -he.z;
        pts.push_back(pose.apply(p));
    }
    return pts;
}

} // namespace

TEST_CASE("obb_from_points: unit cube corners recover the cube") {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i) {
        pts.push_back({(i & 1) ? 0.5 : -0.5, (i & 2) ? 0.5 : -0.5, (i & 4) ? 0.5 : -0.5});
    }
    const Obb o = obb_from_points(pts);
    CHECK(o.volume() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(o.half_extents.x == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(o.half_extents.y == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(o.half_extents.z == doctest::Approx(0.5).epsilon(1e-9));
    for (const Vec3& p : pts) CHECK(oracle::point_in_obb(p, o, 1e-9));
}

TEST_CASE("obb_from_points: single point degenerates") {
    const Vec3 p{1.5, -2.0, 0.25};
    const Obb o = obb_from_points({p});
    CHECK(o.center == p);
    CHECK(o.half_extents.x == 0.0);
    CHECK(o.half_extents.y == 0.0);
    CHECK(o.half_extents.z == 0.0);
}

TEST_CASE("obb_from_points: empty input") {
    CHECK_THROWS_WITH_AS(obb_from_points({}), "empty point cloud", std::invalid_argument);
}

TEST_CASE("obb_from_points: rotated box within 5% of optimal, 1-degree sweep oracle") {
    Rng rng(2024);
    const Vec3 he{1.0, 0.5, 0.25};
    const Transform pose = Transform::rotation_axis_angle({0, 0, 1}, 30.0 * std::numbers::pi / 180.0);
    const std::vector<Vec3> pts = box_surface_samples(he, pose, 1000, rng);

    const Obb fitted = obb_from_points(pts);
    for (const Vec3& p : pts) CHECK(oracle::point_in_obb(p, fitted, 1e-9));

    // oracle: exhaustive z-rotation sweep on a 1-degree grid
    double best = std::numeric_limits<double>::infinity();
    for (int deg = 0; deg < 90; ++deg) {
        const Transform r = Transform::rotation_axis_angle({0, 0, 1}, deg * std::numbers::pi / 180.0);
        const Vec3 ax = r.rotate({1, 0, 0});
        const Vec3 ay = r.rotate({0, 1, 0});
        const Vec3 az{0, 0, 1};
        double lo[3] = {1e300, 1e300, 1e300}, hi[3] = {-1e300, -1e300, -1e300};
        for (const Vec3& p : pts) {
            const double t[3] = {dot(p, ax), dot(p, ay), dot(p, az)};
            for (int k = 0; k < 3; ++k) {
                lo[k] = std::min(lo[k], t[k]);
                hi[k] = std::max(hi[k], t[k]);
            }
        }
        best = std::min(best, (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]));
    }
    const double true_volume = 8.0 * he.x * he.y * he.z;
    CHECK(fitted.volume() <= 1.05 * true_volume);
    CHECK(fitted.volume() <= 1.05 * best);
}

TEST_CASE("obb_from_points: refinement never exceeds the PCA box volume") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec3> pts;
        const int n = rng.uniform_int(2, 200);
        for (int i = 0; i < n; ++i) {
            pts.push_back({rng.uniform(-3, 3), rng.uniform(-1, 1), rng.uniform(-2, 2)});
        }
        const Obb o = obb_from_points(pts);
        for (const Vec3& p : pts) {
            CHECK(oracle::point_in_obb(p, o, 1e-9 * std::max({o.half_extents.x, o.half_extents.y,
                                                              o.half_extents.z, 1.0})));
        }
    }
}

TEST_CASE("obb_intersects_obb: identical boxes / far boxes") {
    const Obb a = unit_box_at({0, 0, 0});
    CHECK(obb_intersects_obb(a, a));
    CHECK_FALSE(obb_intersects_obb(a, unit_box_at({10, 0, 0})));
}

TEST_CASE("obb_intersects_obb: touching boxes count as intersecting") {
    const Obb a = unit_box_at({0, 0, 0});
    const Obb b = unit_box_at({1.0, 0, 0});
    CHECK(obb_intersects_obb(a, b));
}

TEST_CASE("obb_intersects_obb: 45-degree case matches the sampling oracle") {
    const Obb a = unit_box_at({0, 0, 0});
    Obb b = unit_box_at({1.2, 0, 0});
    const Transform rot = Transform::rotation_axis_angle({0, 0, 1}, std::numbers::pi / 4.0);
    for (int k = 0; k < 3; ++k) b.axes[k] = rot.rotate(b.axes[k]);
    const bool sat = obb_intersects_obb(a, b);
    const bool sampled = oracle::boxes_intersect_sampling(a, b);
    CHECK(oracle::sat_margin(a, b) > 1e-6);
    CHECK(sat == sampled);
    CHECK(sat); // corner reaches to 1.2 - sqrt(2)/2 < 0.5
}

TEST_CASE("obb_intersects_obb agrees with the exact polytope oracle on random pairs") {
    Rng rng(99);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const Obb a = oracle::random_obb(rng);
        const Obb b = oracle::random_obb(rng);
        if (oracle::sat_margin(a, b) < 1e-6) continue;
        ++checked;
        const bool sat = obb_intersects_obb(a, b);
        const bool exact = polytopes_intersect(oracle::polytope_of_obb(a), oracle::polytope_of_obb(b));
        REQUIRE_MESSAGE(sat == exact, "pair ", i, " sat=", sat, " exact=", exact);
    }
    CHECK(checked > 9000);
}

TEST_CASE("obb_intersects_obb: rigid invariance") {
    Rng rng(1234);
    for (int i = 0; i < 500; ++i) {
        const Obb a = oracle::random_obb(rng);
        const Obb b = oracle::random_obb(rng);
        Transform t = oracle::random_rotation(rng);
        t.t = {rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const Obb ta = apply_transform(t, a);
        const Obb tb = apply_transform(t, b);
        if (oracle::sat_margin(a, b) < 1e-7 || oracle::sat_margin(ta, tb) < 1e-7) continue;
        CHECK(obb_intersects_obb(a, b) == obb_intersects_obb(ta, tb));
    }
}

TEST_CASE("aabb_of_obb: aligned, rotated, and random corner containment") {
    const Obb a = unit_box_at({0, 0, 0});
    const Aabb box = aabb_of_obb(a);
    CHECK(box.min.x == doctest::Approx(-0.5));
    CHECK(box.max.z == doctest::Approx(0.5));

    Obb r = a;
    const Transform rot = Transform::rotation_axis_angle({0, 0, 1}, std::numbers::pi / 4.0);
    for (int k = 0; k < 3; ++k) r.axes[k] = rot.rotate(r.axes[k]);
    const Aabb rb = aabb_of_obb(r);
    CHECK(rb.max.x == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-9));
    CHECK(rb.max.y == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-9));
    CHECK(rb.max.z == doctest::Approx(0.5).epsilon(1e-12));

    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const Obb o = oracle::random_obb(rng);
        const Aabb bb = aabb_of_obb(o);
        Aabb expected = Aabb::empty();
        for (const Vec3& c : obb_corners(o)) expected.expand(c);
        CHECK(bb.min == expected.min);
        CHECK(bb.max == expected.max);
    }
}

TEST_CASE("segment_point_distance: foot inside, clamped, and sampled oracle") {
    const Segment s{{0, 0, 0}, {1, 0, 0}};
    CHECK(segment_point_distance(s, {0.5, 1, 0}) == doctest::Approx(1.0));
    CHECK(segment_point_distance(s, {2, 0, 0}) == doctest::Approx(1.0));

    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Segment seg{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)},
                          {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}};
        const Vec3 p{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        double best = 1e300;
        const int n = 100000;
        for (int i = 0; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            best = std::min(best, norm(p - (seg.a + (seg.b - seg.a) * t)));
        }
        CHECK(segment_point_distance(seg, p) == doctest::Approx(best).epsilon(1e-4));
    }
}

TEST_CASE("segment_point_distance: degenerate segment is a point") {
    const Segment s{{1, 2, 3}, {1, 2, 3}};
    CHECK(segment_point_distance(s, {1, 2, 4}) == doctest::Approx(1.0));
}

TEST_CASE("segment_sphere_intersects: through-center, boundary, and definitional oracle") {
    const Segment s{{-1, 0, 0}, {1, 0, 0}};
    CHECK(segment_sphere_intersects(s, {{0, 0, 0}, 0.5}, 0.0));
    // boundary: distance exactly radius + inflate is closed
    CHECK(segment_sphere_intersects(s, {{0, 2.0, 0}, 1.5}, 0.5));

    Rng rng(21);
    for (int i = 0; i < 2000; ++i) {
        const Segment seg{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)},
                          {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}};
        const Sphere sp{{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)}, rng.uniform(0, 1.5)};
        const double inflate = rng.uniform(0, 0.5);
        const bool expected = segment_point_distance(seg, sp.center) <= sp.radius + inflate;
        CHECK(segment_sphere_intersects(seg, sp, inflate) == expected);
    }
}

TEST_CASE("segment_sphere_intersects: rigid invariance") {
    Rng rng(31);
    for (int i = 0; i < 500; ++i) {
        const Segment seg{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)},
                          {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}};
        const Sphere sp{{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)}, rng.uniform(0.1, 1.5)};
        const double inflate = rng.uniform(0, 0.5);
        Transform t = oracle::random_rotation(rng);
        t.t = {rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const Segment tseg{t.apply(seg.a), t.apply(seg.b)};
        const Sphere tsp = apply_transform(t, sp);
        const double margin =
            std::fabs(segment_point_distance(seg, sp.center) - (sp.radius + inflate));
        if (margin < 1e-9) continue;
        CHECK(segment_sphere_intersects(seg, sp, inflate) == segment_sphere_intersects(tseg, tsp, inflate));
    }
}

TEST_CASE("polytopes_intersect: tetrahedra cases") {
    ConvexPolytope tet;
    tet.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const auto face = [&](int a, int b, int c) {
        ConvexPolytope::Face f;
        f.vertices = {a, b, c};
        const Vec3 n = cross(tet.vertices[b] - tet.vertices[a], tet.vertices[c] - tet.vertices[a]);
        f.normal = n * (1.0 / norm(n));
        return f;
    };
    tet.faces = {face(0, 2, 1), face(0, 1, 3), face(0, 3, 2), face(1, 2, 3)};
    CHECK(polytopes_intersect(tet, tet));

    ConvexPolytope far_tet = apply_transform(Transform::translation({5, 0, 0}), tet);
    CHECK_FALSE(polytopes_intersect(tet, far_tet));
}

TEST_CASE("polytopes_intersect: degenerate polytope is rejected") {
    const ConvexPolytope flat = ConvexPolytope::box({1, 1, 0}, Transform::identity());
    const ConvexPolytope ok = ConvexPolytope::box({1, 1, 1}, Transform::identity());
    CHECK_THROWS_WITH_AS(polytopes_intersect(flat, ok), "degenerate polytope", std::invalid_argument);
}

TEST_CASE("apply_transform: identity, translation, and per-corner oracle") {
    const Sphere s{{0, 0, 0}, 1.0};
    const Sphere moved = apply_transform(Transform::translation({1, 0, 0}), s);
    CHECK(moved.center == Vec3{1, 0, 0});
    CHECK(moved.radius == 1.0);

    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        const Obb o = oracle::random_obb(rng);
        Transform t = oracle::random_rotation(rng);
        t.t = {rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const Obb to = apply_transform(t, o);
        const ObbCorners before = obb_corners(o);
        const ObbCorners after = obb_corners(to);
        for (int k = 0; k < 8; ++k) {
            const Vec3 expect = t.apply(before[k]);
            CHECK(norm(after[k] - expect) < 1e-9);
        }
    }
}

TEST_CASE("transform: euler convention and composition") {
    // XYZ fixed-axis: R = Rz * Ry * Rx; check with a quarter turn about z
    const Transform t = Transform::from_euler_xyz(0, 0, std::numbers::pi / 2.0);
    const Vec3 p = t.apply({1, 0, 0});
    CHECK(norm(p - Vec3{0, 1, 0}) < 1e-12);
    CHECK(t.rotation_valid());

    Rng rng(55);
    for (int i = 0; i < 100; ++i) {
        const Transform a = oracle::random_rotation(rng);
        const Transform b = oracle::random_rotation(rng);
        const Vec3 x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        CHECK(norm((a * b).apply(x) - a.apply(b.apply(x))) < 1e-12);
    }
}
