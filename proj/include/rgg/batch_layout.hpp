#pragma once

#include <cstdint>
#include <vector>

#include "rgg/kernels.hpp"
#include "rgg/roadmap.hpp"

namespace rgg {

/// Dense fixed-shape serialization of all approximations:
///   e_plus      N x B x 8 x 3   edge body-Obb corners
///   o_plus      M x 8 x 3       obstacle Obb corners
///   e_minus     N x B x S x K x 2 x 3   spline segment endpoints, padded
///   seg_mask    N x B x S x K   true where a real segment exists
///   spline_radius   B x S       per (body, slot); slots map to spheres
///   o_minus_c   M x C x 3       obstacle sphere centers
///   o_minus_r   M               one shared sphere radius per obstacle
/// N spans all components (nodes are degenerate edges). S is the sphere
/// count times the worst-case split factor, so a slot's radius is uniform
/// across components. Alongside the arrays the layout keeps derived kernel
/// operands (SatBox/SegPrep mirrors) rebuilt deterministically from them.
struct BatchLayout {
    std::int32_t n_components = 0; // N
    std::int32_t n_bodies = 0;     // B
    std::int32_t n_slots = 0;      // S
    std::int32_t max_segments = 0; // K
    std::int32_t n_obstacles = 0;  // M
    std::int32_t n_spheres = 0;    // C

    std::vector<double> e_plus;
    std::vector<double> o_plus;
    std::vector<double> e_minus;
    std::vector<std::uint8_t> seg_mask;
    std::vector<double> spline_radius;
    std::vector<double> o_minus_c;
    std::vector<double> o_minus_r;

    // Derived kernel operands; never serialized, rebuilt from the arrays.
    std::vector<kern::SatBox> edge_sat;    // N*B
    std::vector<kern::SegPrep> seg_prep;   // N*B*S*K
    std::vector<std::int32_t> seg_count;   // N*B*S, packed prefix lengths
    std::vector<std::int32_t> o_sphere_count; // M, real spheres per row (C pads the rest)
    std::vector<kern::SatBox> obstacle_sat; // M
    std::vector<Aabb> obstacle_aabb;        // M, outer box
    std::vector<Aabb> obstacle_sphere_aabb; // M, union of spheres
    std::vector<Aabb> component_aabb;       // N, union of body-Obb Aabbs

    size_t sat_index(ComponentId c, int body) const { return static_cast<size_t>(c) * n_bodies + body; }
    size_t row_index(ComponentId c, int body, int slot) const {
        return (static_cast<size_t>(c) * n_bodies + body) * n_slots + slot;
    }

    /// Serializes components and canonical (local-frame) obstacle geometry.
    /// Throws when a spline exceeds the segment cap; the build policy is
    /// supposed to have split it.
    static BatchLayout serialize(const ComponentSet& components, const std::vector<ObstacleModel>& obstacles);

    /// Recomputes the moved obstacles' rows against their canonical geometry
    /// (never incrementally), leaving radii untouched.
    void update_transforms(const std::vector<std::pair<ObstacleId, Transform>>& moves,
                           const std::vector<ObstacleModel>& canonical);

    /// Rebuilds seg_prep from e_minus (after external edits of the arrays).
    void rebuild_segment_operands();
};

} // namespace rgg
