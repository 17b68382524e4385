#pragma once

#include <cstdint>
#include <vector>

#include "rgg/vec3.hpp"

namespace rgg {

/// One-layer uniform grid over the workspace with fixed-capacity cells.
/// An id lives in every cell its Aabb overlaps (closed); ids past a cell's
/// capacity land in that cell's overflow list, never dropped.
class SpatialGrid {
public:
    /// Sizing starts at a 4x4x4 split of the coverage box and halves the
    /// longest cell axis until mean nonempty-cell occupancy <= capacity or
    /// the cell would shrink below twice the largest item extent.
    static SpatialGrid build(const std::vector<Aabb>& items, const Aabb& coverage, int capacity);

    /// Sorted unique ids of every cell overlapping the query box (capacity
    /// block plus overflow). Superset of all items whose Aabb overlaps.
    void candidates(const Aabb& query, std::vector<std::int32_t>& out) const;

    int cell_count() const { return nx_ * ny_ * nz_; }
    Vec3 cell_size() const { return cell_; }
    int capacity() const { return capacity_; }
    size_t overflow_total() const;
    double mean_nonempty_occupancy() const;

private:
    Vec3 origin_;
    Vec3 cell_{1, 1, 1};
    int nx_ = 1, ny_ = 1, nz_ = 1;
    int capacity_ = 1;
    std::vector<std::int32_t> slots_;     // cell-major, capacity per cell
    std::vector<std::int32_t> counts_;    // total ids per cell (incl. overflow)
    std::vector<std::vector<std::int32_t>> overflow_;

    void cell_range(const Aabb& box, int lo[3], int hi[3]) const;
    size_t cell_index(int x, int y, int z) const {
        return (static_cast<size_t>(z) * ny_ + y) * nx_ + x;
    }
};

} // namespace rgg
