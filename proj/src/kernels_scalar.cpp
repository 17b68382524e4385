#include "rgg/kernels.hpp"

#include <cmath>

namespace rgg::kern {

SatBox sat_prep(const double* c) {
    SatBox b;
    for (int k = 0; k < 3; ++k) {
        const int hi = (1 << k) * 3;
        for (int j = 0; j < 3; ++j) {
            b.e[k][j] = 0.5 * (c[hi + j] - c[j]);
        }
    }
    for (int j = 0; j < 3; ++j) {
        b.center[j] = ((c[j] + b.e[0][j]) + b.e[1][j]) + b.e[2][j];
    }
    for (int k = 0; k < 3; ++k) {
        const double n2 = (b.e[k][0] * b.e[k][0] + b.e[k][1] * b.e[k][1]) + b.e[k][2] * b.e[k][2];
        if (n2 > 0.0) {
            const double len = std::sqrt(n2);
            for (int j = 0; j < 3; ++j) {
                b.u[k][j] = b.e[k][j] / len;
            }
        } else {
            b.u[k][0] = b.u[k][1] = b.u[k][2] = 0.0;
        }
    }
    return b;
}

namespace {

inline double dot3(const double* x, const double* y) { return (x[0] * y[0] + x[1] * y[1]) + x[2] * y[2]; }

// Projection-interval test on one axis; strict > so touching intersects.
inline bool separated_on(const SatBox& a, const SatBox& b, const double* d, const double* axis) {
    const double ra = (std::fabs(dot3(a.e[0], axis)) + std::fabs(dot3(a.e[1], axis))) + std::fabs(dot3(a.e[2], axis));
    const double rb = (std::fabs(dot3(b.e[0], axis)) + std::fabs(dot3(b.e[1], axis))) + std::fabs(dot3(b.e[2], axis));
    const double s = std::fabs(dot3(d, axis));
    return s > ra + rb;
}

constexpr double kCrossAxisMinSq = 1e-12;

} // namespace

bool sat_boxes(const SatBox& a, const SatBox& b) {
    double d[3];
    for (int j = 0; j < 3; ++j) {
        d[j] = b.center[j] - a.center[j];
    }
    for (int k = 0; k < 3; ++k) {
        if (separated_on(a, b, d, a.u[k])) return false;
    }
    for (int k = 0; k < 3; ++k) {
        if (separated_on(a, b, d, b.u[k])) return false;
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double axis[3] = {a.u[i][1] * b.u[j][2] - a.u[i][2] * b.u[j][1],
                                    a.u[i][2] * b.u[j][0] - a.u[i][0] * b.u[j][2],
                                    a.u[i][0] * b.u[j][1] - a.u[i][1] * b.u[j][0]};
            const double n2 = dot3(axis, axis);
            if (n2 >= kCrossAxisMinSq && separated_on(a, b, d, axis)) return false;
        }
    }
    return true;
}

SegPrep seg_prep(const double* s) {
    SegPrep p;
    for (int j = 0; j < 3; ++j) {
        p.a[j] = s[j];
        p.d[j] = s[3 + j] - s[j];
    }
    p.dd = (p.d[0] * p.d[0] + p.d[1] * p.d[1]) + p.d[2] * p.d[2];
    return p;
}

double seg_point_dist(const SegPrep& s, const double c[3]) {
    const double px = c[0] - s.a[0];
    const double py = c[1] - s.a[1];
    const double pz = c[2] - s.a[2];
    double t = 0.0;
    if (s.dd > 0.0) {
        t = ((px * s.d[0] + py * s.d[1]) + pz * s.d[2]) / s.dd;
        t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    }
    const double qx = px - t * s.d[0];
    const double qy = py - t * s.d[1];
    const double qz = pz - t * s.d[2];
    return std::sqrt((qx * qx + qy * qy) + qz * qz);
}

bool seg_sphere(const SegPrep& s, const double c[3], double r_total) { return seg_point_dist(s, c) <= r_total; }

namespace {

void sat_batch_scalar(const SatBox* boxes, const std::int32_t* idx, int n, const SatBox* obstacle, std::uint8_t* out) {
    for (int i = 0; i < n; ++i) {
        out[i] = sat_boxes(boxes[idx[i]], *obstacle) ? 1 : 0;
    }
}

void seg_sphere_batch_scalar(const SegPrep* segs, const std::int32_t* idx, int n, const double c[3], double r_total,
                             std::uint8_t* out) {
    for (int i = 0; i < n; ++i) {
        out[i] = seg_sphere(segs[idx[i]], c, r_total) ? 1 : 0;
    }
}

} // namespace

const Backend& scalar_backend() {
    static const Backend backend{"scalar", &sat_batch_scalar, &seg_sphere_batch_scalar};
    return backend;
}

} // namespace rgg::kern
