#pragma once

#include <cmath>
#include <limits>

namespace rgg {

/// Workspace point / direction in R^3. Plain value type, double precision.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 component_min(const Vec3& a, const Vec3& b) {
    return {std::fmin(a.x, b.x), std::fmin(a.y, b.y), std::fmin(a.z, b.z)};
}

inline Vec3 component_max(const Vec3& a, const Vec3& b) {
    return {std::fmax(a.x, b.x), std::fmax(a.y, b.y), std::fmax(a.z, b.z)};
}

/// Rigid transform: world = rotation * local + translation.
/// Rotation is row-major 3x3, expected orthonormal with det +1 (tolerance 1e-9).
struct Transform {
    double r[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    Vec3 t;

    static Transform identity() { return {}; }

    static Transform translation(const Vec3& t) {
        Transform tf;
        tf.t = t;
        return tf;
    }

    /// Rotation about a unit axis by angle (radians), Rodrigues form.
    static Transform rotation_axis_angle(const Vec3& axis, double angle);

    /// Fixed-axis XYZ Euler rotation: R = Rz(rz) * Ry(ry) * Rx(rx).
    static Transform from_euler_xyz(double rx, double ry, double rz);

    Vec3 apply(const Vec3& p) const {
        return {r[0] * p.x + r[1] * p.y + r[2] * p.z + t.x,
                r[3] * p.x + r[4] * p.y + r[5] * p.z + t.y,
                r[6] * p.x + r[7] * p.y + r[8] * p.z + t.z};
    }

    /// Rotation only, no translation.
    Vec3 rotate(const Vec3& p) const {
        return {r[0] * p.x + r[1] * p.y + r[2] * p.z,
                r[3] * p.x + r[4] * p.y + r[5] * p.z,
                r[6] * p.x + r[7] * p.y + r[8] * p.z};
    }

    /// Composition: (a * b).apply(p) == a.apply(b.apply(p)).
    Transform operator*(const Transform& o) const {
        Transform out;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                out.r[i * 3 + j] =
                    r[i * 3 + 0] * o.r[0 * 3 + j] + r[i * 3 + 1] * o.r[1 * 3 + j] + r[i * 3 + 2] * o.r[2 * 3 + j];
            }
        }
        out.t = apply(o.t);
        return out;
    }

    /// True when the rotation block is orthonormal with det +1 within tol.
    bool rotation_valid(double tol = 1e-9) const;
};

/// Axis-aligned box, min <= max componentwise.
struct Aabb {
    Vec3 min;
    Vec3 max;

    static Aabb empty() {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {{inf, inf, inf}, {-inf, -inf, -inf}};
    }

    void expand(const Vec3& p) {
        min = component_min(min, p);
        max = component_max(max, p);
    }

    void expand(const Aabb& b) {
        min = component_min(min, b.min);
        max = component_max(max, b.max);
    }

    /// Grow symmetrically by r on every axis.
    Aabb inflated(double r) const { return {{min.x - r, min.y - r, min.z - r}, {max.x + r, max.y + r, max.z + r}}; }

    /// Closed-interval overlap: touching boxes overlap.
    bool overlaps(const Aabb& o) const {
        return min.x <= o.max.x && o.min.x <= max.x && min.y <= o.max.y && o.min.y <= max.y && min.z <= o.max.z &&
               o.min.z <= max.z;
    }

    bool contains(const Vec3& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z && p.z <= max.z;
    }

    Vec3 extent() const { return max - min; }
    Vec3 center() const { return (min + max) * 0.5; }
};

} // namespace rgg
