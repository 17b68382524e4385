#include "rgg/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rgg/kernels.hpp"

namespace rgg {

Transform Transform::rotation_axis_angle(const Vec3& axis, double angle) {
    const double len = norm(axis);
    if (!(len > 0.0)) throw std::invalid_argument("zero rotation axis");
    const double kx = axis.x / len, ky = axis.y / len, kz = axis.z / len;
    const double c = std::cos(angle), s = std::sin(angle), v = 1.0 - c;
    Transform tf;
    tf.r[0] = kx * kx * v + c;
    tf.r[1] = kx * ky * v - kz * s;
    tf.r[2] = kx * kz * v + ky * s;
    tf.r[3] = ky * kx * v + kz * s;
    tf.r[4] = ky * ky * v + c;
    tf.r[5] = ky * kz * v - kx * s;
    tf.r[6] = kz * kx * v - ky * s;
    tf.r[7] = kz * ky * v + kx * s;
    tf.r[8] = kz * kz * v + c;
    return tf;
}

Transform Transform::from_euler_xyz(double rx, double ry, double rz) {
    return rotation_axis_angle({0, 0, 1}, rz) * rotation_axis_angle({0, 1, 0}, ry) *
           rotation_axis_angle({1, 0, 0}, rx);
}

bool Transform::rotation_valid(double tol) const {
    // R^T R == I
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double v = 0.0;
            for (int k = 0; k < 3; ++k) v += r[k * 3 + i] * r[k * 3 + j];
            if (std::fabs(v - (i == j ? 1.0 : 0.0)) > tol) return false;
        }
    }
    const double det = r[0] * (r[4] * r[8] - r[5] * r[7]) - r[1] * (r[3] * r[8] - r[5] * r[6]) +
                       r[2] * (r[3] * r[7] - r[4] * r[6]);
    return std::fabs(det - 1.0) <= tol;
}

ObbCorners obb_corners(const Obb& o) {
    const Vec3 e0 = o.axes[0] * o.half_extents.x;
    const Vec3 e1 = o.axes[1] * o.half_extents.y;
    const Vec3 e2 = o.axes[2] * o.half_extents.z;
    ObbCorners c;
    for (int i = 0; i < 8; ++i) {
        Vec3 p = (i & 1) ? o.center + e0 : o.center - e0;
        p = (i & 2) ? p + e1 : p - e1;
        p = (i & 4) ? p + e2 : p - e2;
        c[i] = p;
    }
    return c;
}

namespace {

// Cyclic Jacobi for a symmetric 3x3; returns eigenvectors as rows of `vecs`
// paired with `vals`. Deterministic, identity on diagonal input.
void jacobi_eigen(double m[3][3], double vals[3], Vec3 vecs[3]) {
    double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::fabs(m[0][1]) + std::fabs(m[0][2]) + std::fabs(m[1][2]);
        if (off == 0.0) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (m[p][q] == 0.0) continue;
                const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    for (int i = 0; i < 3; ++i) {
        vals[i] = m[i][i];
        vecs[i] = {v[0][i], v[1][i], v[2][i]};
    }
}

struct FitExtents {
    double lo[3];
    double hi[3];
    double volume;
};

FitExtents project_extents(const std::vector<Vec3>& points, const Vec3 axes[3]) {
    FitExtents f;
    for (int k = 0; k < 3; ++k) {
        f.lo[k] = std::numeric_limits<double>::infinity();
        f.hi[k] = -std::numeric_limits<double>::infinity();
    }
    for (const Vec3& p : points) {
        for (int k = 0; k < 3; ++k) {
            const double t = dot(p, axes[k]);
            f.lo[k] = std::min(f.lo[k], t);
            f.hi[k] = std::max(f.hi[k], t);
        }
    }
    f.volume = (f.hi[0] - f.lo[0]) * (f.hi[1] - f.lo[1]) * (f.hi[2] - f.lo[2]);
    return f;
}

void rotate_axes(const Vec3 in[3], const Vec3& about, double angle, Vec3 out[3]) {
    const Transform rot = Transform::rotation_axis_angle(about, angle);
    for (int k = 0; k < 3; ++k) out[k] = rot.rotate(in[k]);
}

} // namespace

Obb obb_from_points(const std::vector<Vec3>& points) {
    if (points.empty()) throw std::invalid_argument("empty point cloud");
    for (const Vec3& p : points) {
        if (!p.finite()) throw std::invalid_argument("non-finite point");
    }
    Obb box;
    if (points.size() == 1) {
        box.center = points[0];
        box.half_extents = {0, 0, 0};
        return box;
    }

    Vec3 mean{0, 0, 0};
    for (const Vec3& p : points) mean += p;
    mean = mean * (1.0 / static_cast<double>(points.size()));

    double cov[3][3] = {};
    for (const Vec3& p : points) {
        const Vec3 d = p - mean;
        const double dc[3] = {d.x, d.y, d.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) cov[i][j] += dc[i] * dc[j];
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) cov[i][j] /= static_cast<double>(points.size());

    double vals[3];
    Vec3 axes[3];
    jacobi_eigen(cov, vals, axes);
    // Largest variance first, right-handed frame.
    int order[3] = {0, 1, 2};
    std::stable_sort(order, order + 3, [&](int a, int b) { return vals[a] > vals[b]; });
    Vec3 best[3] = {axes[order[0]], axes[order[1]], axes[order[2]]};
    best[2] = cross(best[0], best[1]);

    // Local per-axis sweep around the PCA frame, +-15 deg in 3 deg steps;
    // the zero-angle candidate keeps the result no worse than PCA.
    double best_vol = project_extents(points, best).volume;
    constexpr double kStepRad = 3.0 * std::numbers::pi / 180.0;
    for (int k = 0; k < 3; ++k) {
        Vec3 pivot = best[k];
        Vec3 winner[3] = {best[0], best[1], best[2]};
        for (int step = -5; step <= 5; ++step) {
            if (step == 0) continue;
            Vec3 cand[3];
            rotate_axes(best, pivot, step * kStepRad, cand);
            const double vol = project_extents(points, cand).volume;
            if (vol < best_vol) {
                best_vol = vol;
                for (int j = 0; j < 3; ++j) winner[j] = cand[j];
            }
        }
        for (int j = 0; j < 3; ++j) best[j] = winner[j];
    }

    const FitExtents f = project_extents(points, best);
    box.center = best[0] * ((f.lo[0] + f.hi[0]) * 0.5) + best[1] * ((f.lo[1] + f.hi[1]) * 0.5) +
                 best[2] * ((f.lo[2] + f.hi[2]) * 0.5);
    for (int k = 0; k < 3; ++k) box.axes[k] = best[k];
    box.half_extents = {(f.hi[0] - f.lo[0]) * 0.5, (f.hi[1] - f.lo[1]) * 0.5, (f.hi[2] - f.lo[2]) * 0.5};
    return box;
}

bool obb_intersects_obb(const Obb& a, const Obb& b) {
    const ObbCorners ca = obb_corners(a);
    const ObbCorners cb = obb_corners(b);
    const kern::SatBox sa = kern::sat_prep(&ca[0].x);
    const kern::SatBox sb = kern::sat_prep(&cb[0].x);
    return kern::sat_boxes(sa, sb);
}

Aabb aabb_of_obb(const Obb& o) {
    // Componentwise min/max over the explicit corners; equal to
    // extent_i = sum_j he_j * |axes_j . e_i| but bit-consistent with the
    // corner blocks used everywhere else.
    const ObbCorners c = obb_corners(o);
    Aabb box = Aabb::empty();
    for (const Vec3& p : c) box.expand(p);
    return box;
}

double segment_point_distance(const Segment& s, const Vec3& p) {
    const double seg[6] = {s.a.x, s.a.y, s.a.z, s.b.x, s.b.y, s.b.z};
    const double c[3] = {p.x, p.y, p.z};
    return kern::seg_point_dist(kern::seg_prep(seg), c);
}

bool segment_sphere_intersects(const Segment& s, const Sphere& sp, double inflate) {
    assert(inflate >= 0.0);
    const double seg[6] = {s.a.x, s.a.y, s.a.z, s.b.x, s.b.y, s.b.z};
    const double c[3] = {sp.center.x, sp.center.y, sp.center.z};
    return kern::seg_sphere(kern::seg_prep(seg), c, sp.radius + inflate);
}

ConvexPolytope ConvexPolytope::box(const Vec3& half_extents, const Transform& pose) {
    ConvexPolytope p;
    const Obb local{{0, 0, 0}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, half_extents};
    Obb world = local;
    world.center = pose.t;
    world.axes[0] = pose.rotate({1, 0, 0});
    world.axes[1] = pose.rotate({0, 1, 0});
    world.axes[2] = pose.rotate({0, 0, 1});
    const ObbCorners c = obb_corners(world);
    p.vertices.assign(c.begin(), c.end());
    // Rings per face; normals are the (rotated) unit axes with sign.
    const int rings[6][4] = {{1, 3, 7, 5}, {0, 4, 6, 2}, {2, 6, 7, 3}, {0, 1, 5, 4}, {4, 5, 7, 6}, {0, 2, 3, 1}};
    const Vec3 normals[6] = {world.axes[0], -world.axes[0], world.axes[1],
                             -world.axes[1], world.axes[2], -world.axes[2]};
    for (int f = 0; f < 6; ++f) {
        Face face;
        face.vertices.assign(rings[f], rings[f] + 4);
        face.normal = normals[f];
        p.faces.push_back(std::move(face));
    }
    p.degenerate = !(half_extents.x > 0.0 && half_extents.y > 0.0 && half_extents.z > 0.0);
    return p;
}

namespace {

void project_polytope(const ConvexPolytope& p, const Vec3& axis, double& lo, double& hi) {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (const Vec3& v : p.vertices) {
        const double t = dot(v, axis);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
}

bool separates(const ConvexPolytope& a, const ConvexPolytope& b, const Vec3& axis) {
    double alo, ahi, blo, bhi;
    project_polytope(a, axis, alo, ahi);
    project_polytope(b, axis, blo, bhi);
    return ahi < blo || bhi < alo;
}

std::vector<Vec3> edge_directions(const ConvexPolytope& p) {
    std::vector<Vec3> dirs;
    for (const auto& f : p.faces) {
        const auto& ring = f.vertices;
        for (size_t i = 0; i < ring.size(); ++i) {
            const Vec3 d = p.vertices[ring[(i + 1) % ring.size()]] - p.vertices[ring[i]];
            dirs.push_back(d);
        }
    }
    return dirs;
}

} // namespace

bool polytopes_intersect(const ConvexPolytope& a, const ConvexPolytope& b) {
    if (a.degenerate || b.degenerate) throw std::invalid_argument("degenerate polytope");
    for (const auto& f : a.faces) {
        if (separates(a, b, f.normal)) return false;
    }
    for (const auto& f : b.faces) {
        if (separates(a, b, f.normal)) return false;
    }
    const std::vector<Vec3> ea = edge_directions(a);
    const std::vector<Vec3> eb = edge_directions(b);
    for (const Vec3& da : ea) {
        for (const Vec3& db : eb) {
            const Vec3 axis = cross(da, db);
            if (dot(axis, axis) <= 0.0) continue;
            if (separates(a, b, axis)) return false;
        }
    }
    return true;
}

Vec3 apply_transform(const Transform& t, const Vec3& p) { return t.apply(p); }

Obb apply_transform(const Transform& t, const Obb& o) {
    Obb out;
    out.center = t.apply(o.center);
    for (int k = 0; k < 3; ++k) out.axes[k] = t.rotate(o.axes[k]);
    out.half_extents = o.half_extents;
    return out;
}

Sphere apply_transform(const Transform& t, const Sphere& s) { return {t.apply(s.center), s.radius}; }

ConvexPolytope apply_transform(const Transform& t, const ConvexPolytope& p) {
    ConvexPolytope out = p;
    for (Vec3& v : out.vertices) v = t.apply(v);
    for (auto& f : out.faces) f.normal = t.rotate(f.normal);
    return out;
}

} // namespace rgg
