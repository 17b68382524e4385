#pragma once

#include <array>
#include <vector>

#include "rgg/vec3.hpp"

namespace rgg {

/// Oriented bounding box: center, three orthonormal axes, nonnegative half extents.
struct Obb {
    Vec3 center;
    Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Vec3 half_extents;

    double volume() const { return 8.0 * half_extents.x * half_extents.y * half_extents.z; }
};

struct Sphere {
    Vec3 center;
    double radius = 0.0;
};

struct Segment {
    Vec3 a;
    Vec3 b;
};

/// Convex polytope given by vertices and faces with outward normals.
/// The exact collision oracle operates on these; the shipped models only
/// ever instantiate boxes.
struct ConvexPolytope {
    struct Face {
        std::vector<int> vertices; // ordered ring
        Vec3 normal;               // outward unit normal
    };

    std::vector<Vec3> vertices;
    std::vector<Face> faces;
    bool degenerate = false; // vertices do not affinely span R^3

    static ConvexPolytope box(const Vec3& half_extents, const Transform& pose);
};

/// Corner block of an Obb: 8 corners, corner i uses sign (-1)^(1 - bit k of i)
/// for axis k. This fixed ordering is the serialization contract for the
/// batch layout and the input to the shared SAT kernel.
using ObbCorners = std::array<Vec3, 8>;

ObbCorners obb_corners(const Obb& o);

/// Fit an Obb containing all points. PCA orientation seeded, then refined by
/// a per-axis local sweep (+-15 deg in 3 deg steps); the minimum-volume
/// candidate is kept, so the result never exceeds the PCA-aligned box volume.
/// Throws std::invalid_argument("empty point cloud") on empty input.
Obb obb_from_points(const std::vector<Vec3>& points);

/// 15-axis separating axis test. Touching boxes count as intersecting.
/// Cross-product axes with squared norm < 1e-12 are skipped.
bool obb_intersects_obb(const Obb& a, const Obb& b);

/// Tightest Aabb of the box: extent_i = sum_j half_extents_j * |axes_j . e_i|.
Aabb aabb_of_obb(const Obb& o);

/// Euclidean distance from p to the closest point of s (endpoints clamped).
/// A degenerate segment is treated as the point s.a.
double segment_point_distance(const Segment& s, const Vec3& p);

/// Closed predicate: distance(s, sp.center) <= sp.radius + inflate.
bool segment_sphere_intersects(const Segment& s, const Sphere& sp, double inflate);

/// Exact convex-convex decision via separating-plane search over all face
/// normals and edge-edge cross products of both polytopes.
/// Throws std::invalid_argument("degenerate polytope") on flat input.
bool polytopes_intersect(const ConvexPolytope& a, const ConvexPolytope& b);

Vec3 apply_transform(const Transform& t, const Vec3& p);
Obb apply_transform(const Transform& t, const Obb& o);
Sphere apply_transform(const Transform& t, const Sphere& s);
ConvexPolytope apply_transform(const Transform& t, const ConvexPolytope& p);

} // namespace rgg
