#pragma once

#include <cstdint>
#include <string>

namespace rgg::kern {

// The intersection predicates below are the single arithmetic definition
// shared by the scalar geometry API and the batched engines. Batched
// backends must evaluate, per pair, exactly the operation sequence of the
// scalar reference so that results are bit-identical; keep any change in
// lockstep across kernels_scalar.cpp and kernels_avx2.cpp, and build with
// fp-contract off.

/// SAT operand derived from an 8x3 corner block: reference center, scaled
/// edge vectors e_k = half_extent_k * axis_k, and unit axes u_k (zero when
/// the extent is degenerate).
struct SatBox {
    double center[3];
    double e[3][3];
    double u[3][3];
};

/// Derive the SAT operand from corners in canonical order (corner i takes
/// the + direction of axis k iff bit k of i is set).
SatBox sat_prep(const double* corners24);

/// 15-axis test; touching separates nothing (closed predicate). Cross axes
/// with squared norm < 1e-12 are skipped.
bool sat_boxes(const SatBox& a, const SatBox& b);

/// Segment operand: endpoint a, direction d = b - a, dd = |d|^2.
struct SegPrep {
    double a[3];
    double d[3];
    double dd;
};

SegPrep seg_prep(const double* seg6);

/// Distance from point c to the segment, endpoints clamped.
double seg_point_dist(const SegPrep& s, const double c[3]);

/// Closed predicate: seg_point_dist(s, c) <= r_total.
bool seg_sphere(const SegPrep& s, const double c[3], double r_total);

/// Batched kernel table. idx selects operand rows; out gets 0/1 per entry.
/// Every backend must produce bytes identical to the scalar backend.
struct Backend {
    const char* name;
    void (*sat_batch)(const SatBox* boxes, const std::int32_t* idx, int n, const SatBox* obstacle, std::uint8_t* out);
    void (*seg_sphere_batch)(const SegPrep* segs, const std::int32_t* idx, int n, const double c[3], double r_total,
                             std::uint8_t* out);
};

const Backend& scalar_backend();

/// AVX2 backend, or nullptr when the build or the CPU lacks support.
const Backend* avx2_backend();

/// Currently selected backend. Defaults to the widest supported one;
/// the RGG_KERNEL environment variable ("scalar"/"avx2") overrides.
const Backend& active_backend();

/// Select by name ("scalar", "avx2", "auto"). Throws on unknown or
/// unsupported names.
void set_active_backend(const std::string& name);

} // namespace rgg::kern
