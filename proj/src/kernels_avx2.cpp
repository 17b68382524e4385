// AVX2 lanes-across-pairs variants of the shared kernels. Each lane executes
// the scalar reference operation sequence on one pair, so outputs are
// bit-identical to kernels_scalar.cpp (IEEE ops only: mul/add/sub/div/sqrt,
// no FMA, no approximations).

#include "rgg/kernels.hpp"

#ifdef __AVX2__

#include <immintrin.h>

namespace rgg::kern {
namespace {

static_assert(sizeof(SatBox) == 21 * sizeof(double), "SatBox must be 21 packed doubles");
static_assert(sizeof(SegPrep) == 7 * sizeof(double), "SegPrep must be 7 packed doubles");

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline __m256d gather4(const double* base, const std::int32_t* idx, int stride, int offset) {
    return _mm256_set_pd(base[idx[3] * stride + offset], base[idx[2] * stride + offset],
                         base[idx[1] * stride + offset], base[idx[0] * stride + offset]);
}

struct SatLanes {
    __m256d center[3];
    __m256d e[3][3];
    __m256d u[3][3];
};

inline SatLanes load_sat_lanes(const SatBox* boxes, const std::int32_t* idx) {
    const double* base = reinterpret_cast<const double*>(boxes);
    constexpr int stride = sizeof(SatBox) / sizeof(double);
    SatLanes l;
    int off = 0;
    for (int j = 0; j < 3; ++j) l.center[j] = gather4(base, idx, stride, off++);
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) l.e[k][j] = gather4(base, idx, stride, off++);
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) l.u[k][j] = gather4(base, idx, stride, off++);
    return l;
}

inline __m256d dot3(const __m256d x[3], const __m256d y[3]) {
    return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(x[0], y[0]), _mm256_mul_pd(x[1], y[1])),
                         _mm256_mul_pd(x[2], y[2]));
}

// separated mask on one axis: |d.axis| > ra + rb
inline __m256d separated_on(const SatLanes& a, const __m256d be[3][3], const __m256d d[3], const __m256d axis[3]) {
    const __m256d ra = _mm256_add_pd(_mm256_add_pd(abs_pd(dot3(a.e[0], axis)), abs_pd(dot3(a.e[1], axis))),
                                     abs_pd(dot3(a.e[2], axis)));
    const __m256d rb =
        _mm256_add_pd(_mm256_add_pd(abs_pd(dot3(be[0], axis)), abs_pd(dot3(be[1], axis))), abs_pd(dot3(be[2], axis)));
    const __m256d s = abs_pd(dot3(d, axis));
    return _mm256_cmp_pd(s, _mm256_add_pd(ra, rb), _CMP_GT_OQ);
}

void sat_batch_avx2(const SatBox* boxes, const std::int32_t* idx, int n, const SatBox* obstacle, std::uint8_t* out) {
    __m256d bc[3], be[3][3], bu[3][3];
    for (int j = 0; j < 3; ++j) bc[j] = _mm256_set1_pd(obstacle->center[j]);
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) {
            be[k][j] = _mm256_set1_pd(obstacle->e[k][j]);
            bu[k][j] = _mm256_set1_pd(obstacle->u[k][j]);
        }
    const __m256d cross_min = _mm256_set1_pd(1e-12);

    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const SatLanes a = load_sat_lanes(boxes, idx + i);
        __m256d d[3];
        for (int j = 0; j < 3; ++j) d[j] = _mm256_sub_pd(bc[j], a.center[j]);

        __m256d sep = _mm256_setzero_pd();
        for (int k = 0; k < 3; ++k) sep = _mm256_or_pd(sep, separated_on(a, be, d, a.u[k]));
        for (int k = 0; k < 3; ++k) sep = _mm256_or_pd(sep, separated_on(a, be, d, bu[k]));
        for (int ia = 0; ia < 3; ++ia) {
            for (int jb = 0; jb < 3; ++jb) {
                __m256d axis[3];
                axis[0] = _mm256_sub_pd(_mm256_mul_pd(a.u[ia][1], bu[jb][2]), _mm256_mul_pd(a.u[ia][2], bu[jb][1]));
                axis[1] = _mm256_sub_pd(_mm256_mul_pd(a.u[ia][2], bu[jb][0]), _mm256_mul_pd(a.u[ia][0], bu[jb][2]));
                axis[2] = _mm256_sub_pd(_mm256_mul_pd(a.u[ia][0], bu[jb][1]), _mm256_mul_pd(a.u[ia][1], bu[jb][0]));
                const __m256d n2 = dot3(axis, axis);
                const __m256d live = _mm256_cmp_pd(n2, cross_min, _CMP_GE_OQ);
                sep = _mm256_or_pd(sep, _mm256_and_pd(live, separated_on(a, be, d, axis)));
            }
        }
        const int mask = _mm256_movemask_pd(sep);
        out[i + 0] = (mask & 1) ? 0 : 1;
        out[i + 1] = (mask & 2) ? 0 : 1;
        out[i + 2] = (mask & 4) ? 0 : 1;
        out[i + 3] = (mask & 8) ? 0 : 1;
    }
    for (; i < n; ++i) {
        out[i] = sat_boxes(boxes[idx[i]], *obstacle) ? 1 : 0;
    }
}

void seg_sphere_batch_avx2(const SegPrep* segs, const std::int32_t* idx, int n, const double c[3], double r_total,
                           std::uint8_t* out) {
    const __m256d cx = _mm256_set1_pd(c[0]);
    const __m256d cy = _mm256_set1_pd(c[1]);
    const __m256d cz = _mm256_set1_pd(c[2]);
    const __m256d rt = _mm256_set1_pd(r_total);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const double* base = reinterpret_cast<const double*>(segs);
    constexpr int stride = sizeof(SegPrep) / sizeof(double);

    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d f[7];
        for (int off = 0; off < 7; ++off) {
            f[off] = gather4(base, idx + i, stride, off);
        }
        const __m256d px = _mm256_sub_pd(cx, f[0]);
        const __m256d py = _mm256_sub_pd(cy, f[1]);
        const __m256d pz = _mm256_sub_pd(cz, f[2]);
        const __m256d dx = f[3], dy = f[4], dz = f[5], dd = f[6];

        const __m256d num = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(px, dx), _mm256_mul_pd(py, dy)),
                                          _mm256_mul_pd(pz, dz));
        const __m256d traw = _mm256_div_pd(num, dd);
        const __m256d tclamped = _mm256_min_pd(_mm256_max_pd(traw, zero), one);
        const __m256d live = _mm256_cmp_pd(dd, zero, _CMP_GT_OQ);
        const __m256d t = _mm256_and_pd(live, tclamped);

        const __m256d qx = _mm256_sub_pd(px, _mm256_mul_pd(t, dx));
        const __m256d qy = _mm256_sub_pd(py, _mm256_mul_pd(t, dy));
        const __m256d qz = _mm256_sub_pd(pz, _mm256_mul_pd(t, dz));
        const __m256d dist = _mm256_sqrt_pd(
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(qx, qx), _mm256_mul_pd(qy, qy)), _mm256_mul_pd(qz, qz)));
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(dist, rt, _CMP_LE_OQ));
        out[i + 0] = (mask & 1) ? 1 : 0;
        out[i + 1] = (mask & 2) ? 1 : 0;
        out[i + 2] = (mask & 4) ? 1 : 0;
        out[i + 3] = (mask & 8) ? 1 : 0;
    }
    for (; i < n; ++i) {
        out[i] = seg_sphere(segs[idx[i]], c, r_total) ? 1 : 0;
    }
}

} // namespace

const Backend* avx2_backend_impl() {
    static const Backend backend{"avx2", &sat_batch_avx2, &seg_sphere_batch_avx2};
    return &backend;
}

} // namespace rgg::kern

#else

namespace rgg::kern {
const Backend* avx2_backend_impl() { return nullptr; }
} // namespace rgg::kern

#endif
