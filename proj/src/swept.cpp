#include "rgg/swept.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rgg {

void BodySpheres::validate(const RobotModel& m) const {
    if (per_body.size() != m.bodies.size()) throw std::invalid_argument("sphere set / body count mismatch");
    for (size_t b = 0; b < per_body.size(); ++b) {
        const Vec3 he = m.bodies[b].half_extents;
        for (const Sphere& s : per_body[b]) {
            if (!(s.radius > 0)) throw std::invalid_argument("body sphere radius must be positive");
            if (std::fabs(s.center.x) + s.radius > he.x || std::fabs(s.center.y) + s.radius > he.y ||
                std::fabs(s.center.z) + s.radius > he.z) {
                throw std::invalid_argument("body sphere escapes its box");
            }
        }
    }
}

std::vector<Sphere> obstacle_inner_spheres(const Vec3& half_extents, int count) {
    if (count < 1) throw std::invalid_argument("sphere count must be >= 1");
    if (!(half_extents.x > 0 && half_extents.y > 0 && half_extents.z > 0)) {
        throw std::invalid_argument("half extents must be positive");
    }
    const double he[3] = {half_extents.x, half_extents.y, half_extents.z};
    const double radius = std::min({he[0], he[1], he[2]});
    int axis = 0;
    for (int k = 1; k < 3; ++k) {
        if (he[k] > he[axis]) axis = k;
    }
    const double span = he[axis] - radius; // centers stay inside the box
    std::vector<Sphere> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : -span + (2.0 * span) * (static_cast<double>(i) / (count - 1));
        Vec3 c{0, 0, 0};
        if (axis == 0)
            c.x = t;
        else if (axis == 1)
            c.y = t;
        else
            c.z = t;
        out.push_back({c, radius});
    }
    return out;
}

int default_sphere_count(const Vec3& half_extents) {
    const double longest = std::max({half_extents.x, half_extents.y, half_extents.z});
    const double shortest = std::min({half_extents.x, half_extents.y, half_extents.z});
    return std::max(1, static_cast<int>(std::ceil(longest / shortest)));
}

BodySpheres default_body_spheres(const RobotModel& m) {
    BodySpheres s;
    s.per_body.reserve(m.bodies.size());
    for (const BoxBody& b : m.bodies) {
        s.per_body.push_back(obstacle_inner_spheres(b.half_extents, default_sphere_count(b.half_extents)));
    }
    s.validate(m);
    return s;
}

namespace {

bool chord_covers(const std::vector<Vec3>& pts, int j, int p, double radius) {
    const Segment chord{pts[j], pts[p]};
    for (int m = j + 1; m < p; ++m) {
        if (!(segment_point_distance(chord, pts[m]) < radius)) return false;
    }
    return true;
}

} // namespace

std::vector<int> simplify_spline_indices(const std::vector<Vec3>& points, double radius) {
    if (!(radius > 0)) throw std::invalid_argument("spline radius must be positive");
    if (points.empty()) throw std::invalid_argument("spline needs at least one point");
    const int n = static_cast<int>(points.size());
    std::vector<int> keep{0};
    int j = 0;
    while (j < n - 1) {
        int p = j + 1;
        while (p + 1 <= n - 1 && chord_covers(points, j, p + 1, radius)) ++p;
        keep.push_back(p);
        j = p;
    }
    return keep;
}

std::vector<Vec3> simplify_spline(const std::vector<Vec3>& points, double radius) {
    std::vector<Vec3> out;
    for (int i : simplify_spline_indices(points, radius)) out.push_back(points[i]);
    return out;
}

std::vector<Obb> build_outer_approx(const RobotModel& m, const std::vector<Configuration>& cfgs) {
    if (cfgs.empty()) throw std::invalid_argument("no configurations");
    const size_t nb = m.bodies.size();
    std::vector<std::vector<Vec3>> clouds(nb);
    for (auto& c : clouds) c.reserve(cfgs.size() * 8);
    for (const Configuration& cfg : cfgs) {
        const std::vector<Transform> fk = forward_kinematics(m, cfg);
        for (size_t b = 0; b < nb; ++b) {
            const Obb world = apply_transform(fk[b], Obb{{0, 0, 0}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                                         m.bodies[b].half_extents});
            const ObbCorners corners = obb_corners(world);
            clouds[b].insert(clouds[b].end(), corners.begin(), corners.end());
        }
    }
    std::vector<Obb> out;
    out.reserve(nb);
    for (size_t b = 0; b < nb; ++b) out.push_back(obb_from_points(clouds[b]));
    return out;
}

namespace {

// Segment-cap policy: even subsampling of the simplified chain when the
// criterion (at the build tolerance) still holds, otherwise a split into
// consecutive runs.
std::vector<Spline> cap_segments(const std::vector<Vec3>& raw, const std::vector<int>& kept, double radius,
                                 double tolerance, int max_segments) {
    const int q = static_cast<int>(kept.size()) - 1; // segments after simplify
    if (q <= max_segments) {
        Spline s;
        s.radius = radius;
        for (int i : kept) s.points.push_back(raw[i]);
        return {std::move(s)};
    }

    // Subsample attempt: max_segments + 1 evenly spread retained indices.
    std::vector<int> sub;
    sub.reserve(max_segments + 1);
    for (int i = 0; i <= max_segments; ++i) {
        sub.push_back(kept[static_cast<size_t>(std::llround(static_cast<double>(i) * q / max_segments))]);
    }
    bool ok = true;
    for (size_t i = 0; ok && i + 1 < sub.size(); ++i) {
        ok = chord_covers(raw, sub[i], sub[i + 1], tolerance);
    }
    if (ok) {
        Spline s;
        s.radius = radius;
        for (int i : sub) s.points.push_back(raw[i]);
        return {std::move(s)};
    }

    // Split the simplified chain into runs of at most max_segments segments.
    std::vector<Spline> out;
    for (int start = 0; start < q; start += max_segments) {
        const int stop = std::min(start + max_segments, q);
        Spline s;
        s.radius = radius;
        for (int i = start; i <= stop; ++i) s.points.push_back(raw[kept[i]]);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

double center_lipschitz(const RobotModel& m, int body, const Vec3& center_local) {
    const Vec3 p = m.bodies[body].local.apply(center_local);
    if (m.kinematics == KinematicsType::FreeFlying) {
        // |dt| + sqrt(3)*|drot|*|p| over a unit DOF step, Cauchy-Schwarz
        return std::sqrt(1.0 + 3.0 * dot(p, p));
    }
    // serial chain: every joint up to `body` can swing the center by its
    // lever arm; bound the arm by the total downstream span
    double span = norm(p);
    for (int j = 0; j <= body; ++j) span += norm(m.joints[j].offset);
    return span * std::sqrt(static_cast<double>(body + 1));
}

double certified_spline_radius(double sphere_radius, double lipschitz, double eps) {
    const double half_step = 0.5 * lipschitz * eps;
    const double r2 = sphere_radius * sphere_radius - half_step * half_step;
    if (r2 <= 0.0) return 0.0;
    const double reach = std::sqrt(r2);
    constexpr double kSimplifyFraction = 0.1;
    return reach * (1.0 - kSimplifyFraction) - 1e-9;
}

std::vector<std::vector<Spline>> build_inner_approx(const RobotModel& m, const BodySpheres& spheres,
                                                    const std::vector<Configuration>& cfgs, int max_segments,
                                                    double eps) {
    if (cfgs.empty()) throw std::invalid_argument("no configurations");
    if (max_segments < 1) throw std::invalid_argument("segment cap must be >= 1");
    if (!(eps > 0)) throw std::invalid_argument("resolution must be positive");
    const size_t nb = m.bodies.size();
    std::vector<std::vector<Transform>> fks;
    fks.reserve(cfgs.size());
    for (const Configuration& cfg : cfgs) fks.push_back(forward_kinematics(m, cfg));

    std::vector<std::vector<Spline>> out(nb);
    for (size_t b = 0; b < nb; ++b) {
        for (size_t si = 0; si < spheres.per_body[b].size(); ++si) {
            const Sphere& s = spheres.per_body[b][si];
            const double lipschitz = center_lipschitz(m, static_cast<int>(b), s.center);
            const double radius = certified_spline_radius(s.radius, lipschitz, eps);
            if (radius <= 0.0) continue; // too coarse to certify; sound to omit
            const double tolerance = std::sqrt(s.radius * s.radius - 0.25 * lipschitz * eps * lipschitz * eps) -
                                     radius - 1e-9;

            std::vector<Vec3> raw;
            raw.reserve(cfgs.size());
            double step_bound = lipschitz * eps;
            bool step_ok = true;
            for (const auto& fk : fks) {
                const Vec3 c = fk[b].apply(s.center);
                if (!raw.empty() && norm(c - raw.back()) > step_bound) step_ok = false;
                if (raw.empty() || !(c == raw.back())) raw.push_back(c);
            }
            if (!step_ok) continue; // lipschitz bound violated; omit rather than risk a false red

            const std::vector<int> kept = simplify_spline_indices(raw, tolerance);
            for (Spline& part : cap_segments(raw, kept, radius, tolerance, max_segments)) {
                part.sphere_index = static_cast<int>(si);
                out[b].push_back(std::move(part));
            }
        }
    }
    return out;
}

EdgeGeometry build_edge_geometry(const RobotModel& m, const BodySpheres& spheres,
                                 const std::vector<Configuration>& cfgs, int max_segments, double eps) {
    EdgeGeometry g;
    g.over = build_outer_approx(m, cfgs);
    g.under = build_inner_approx(m, spheres, cfgs, max_segments, eps);
    return g;
}

ObstacleModel make_box_obstacle(const Vec3& half_extents, int sphere_count) {
    ObstacleModel o;
    o.half_extents = half_extents;
    o.inner = obstacle_inner_spheres(half_extents, sphere_count);
    o.pose = Transform::identity();
    o.active = false;
    return o;
}

} // namespace rgg
