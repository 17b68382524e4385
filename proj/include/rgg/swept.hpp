#pragma once

#include <algorithm>
#include <vector>

#include "rgg/robot.hpp"

namespace rgg {

/// Under-approximation spheres per body, in each body's box frame.
/// Invariant: |center_k| + radius <= half_extent_k on every axis.
struct BodySpheres {
    std::vector<std::vector<Sphere>> per_body;

    void validate(const RobotModel& m) const;
};

/// Polyline with a radius: the trace of one body sphere's center along an
/// edge. points.size() == 1 encodes a stationary (node) trace. sphere_index
/// records which body sphere generated it (split parts share it).
struct Spline {
    std::vector<Vec3> points;
    double radius = 0.0;
    int sphere_index = 0;

    int segment_count() const { return std::max<int>(1, static_cast<int>(points.size()) - 1); }
};

/// Outer and inner approximations of one roadmap component's swept volume.
/// under[b] holds the splines of body b: one per sphere, more when a spline
/// had to be split to respect the segment cap.
struct EdgeGeometry {
    std::vector<Obb> over;
    std::vector<std::vector<Spline>> under;
};

/// Box obstacle with its dual approximation. `inner` spheres live in the
/// obstacle's local frame; `pose` places the box in the world.
struct ObstacleModel {
    Vec3 half_extents;
    std::vector<Sphere> inner;
    Transform pose;
    bool active = false;

    Obb world_outer() const {
        return apply_transform(pose, Obb{{0, 0, 0}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, half_extents});
    }
};

/// Contained spheres of uniform radius (the smallest half extent), centers
/// evenly spaced along the longest box axis.
std::vector<Sphere> obstacle_inner_spheres(const Vec3& half_extents, int count);

/// Default sphere count for a box: max(1, ceil(longest/min extent)).
int default_sphere_count(const Vec3& half_extents);

/// Sphere sets for every robot body using the same placement rule.
BodySpheres default_body_spheres(const RobotModel& m);

/// Greedy forward shortcutting under the strict criterion
/// max over removed m of dist(chord, c_m) < radius. First and last points
/// always survive.
std::vector<Vec3> simplify_spline(const std::vector<Vec3>& points, double radius);

/// Index form of simplify_spline: retained indices into `points`.
std::vector<int> simplify_spline_indices(const std::vector<Vec3>& points, double radius);

/// One fitted Obb per body over the corner cloud of all configurations.
std::vector<Obb> build_outer_approx(const RobotModel& m, const std::vector<Configuration>& cfgs);

/// The spline radius certified against the discretized ground truth for a
/// body sphere of radius r: a step of eps in DOF space moves the center at
/// most lipschitz * eps, so a tube of radius sqrt(r^2 - (L*eps/2)^2) around
/// the raw trace stays inside the union of the discrete bodies; the
/// simplification tolerance (a fixed fraction of that) is charged on top.
/// Nonpositive results mean the sphere cannot certify anything at this
/// resolution and its spline is dropped.
double certified_spline_radius(double sphere_radius, double lipschitz, double eps);

/// Worst-case center speed (workspace distance per unit DOF-space distance)
/// for a body-frame point, per kinematics type.
double center_lipschitz(const RobotModel& m, int body, const Vec3& center_local);

/// Simplified center traces per (body, sphere), split so no spline exceeds
/// max_segments segments. Spline radii are the certified radii for the
/// build resolution, uniform per (body, sphere).
std::vector<std::vector<Spline>> build_inner_approx(const RobotModel& m, const BodySpheres& spheres,
                                                    const std::vector<Configuration>& cfgs, int max_segments,
                                                    double eps);

EdgeGeometry build_edge_geometry(const RobotModel& m, const BodySpheres& spheres,
                                 const std::vector<Configuration>& cfgs, int max_segments, double eps);

ObstacleModel make_box_obstacle(const Vec3& half_extents, int sphere_count);

} // namespace rgg
