#include "rgg/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rgg {

namespace {

constexpr long long kMaxCells = 1 << 21;

void range_of(const Aabb& box, const Vec3& origin, const double cs[3], const int n[3], int lo[3], int hi[3]) {
    const double mins[3] = {box.min.x - origin.x, box.min.y - origin.y, box.min.z - origin.z};
    const double maxs[3] = {box.max.x - origin.x, box.max.y - origin.y, box.max.z - origin.z};
    for (int k = 0; k < 3; ++k) {
        lo[k] = std::clamp(static_cast<int>(std::floor(mins[k] / cs[k])), 0, n[k] - 1);
        hi[k] = std::clamp(static_cast<int>(std::floor(maxs[k] / cs[k])), 0, n[k] - 1);
    }
}

double mean_occupancy(const std::vector<Aabb>& items, const Vec3& origin, const double cs[3], const int n[3]) {
    std::vector<std::int32_t> counts(static_cast<size_t>(n[0]) * n[1] * n[2], 0);
    for (const Aabb& b : items) {
        int lo[3], hi[3];
        range_of(b, origin, cs, n, lo, hi);
        for (int z = lo[2]; z <= hi[2]; ++z)
            for (int y = lo[1]; y <= hi[1]; ++y)
                for (int x = lo[0]; x <= hi[0]; ++x) ++counts[(static_cast<size_t>(z) * n[1] + y) * n[0] + x];
    }
    std::int64_t total = 0;
    std::int64_t nonempty = 0;
    for (std::int32_t c : counts) {
        if (c > 0) {
            total += c;
            ++nonempty;
        }
    }
    return nonempty == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(nonempty);
}

} // namespace

void SpatialGrid::cell_range(const Aabb& box, int lo[3], int hi[3]) const {
    const double cs[3] = {cell_.x, cell_.y, cell_.z};
    const int n[3] = {nx_, ny_, nz_};
    range_of(box, origin_, cs, n, lo, hi);
}

SpatialGrid SpatialGrid::build(const std::vector<Aabb>& items, const Aabb& coverage, int capacity) {
    if (capacity < 1) throw std::invalid_argument("cell capacity must be >= 1");
    SpatialGrid g;
    g.capacity_ = capacity;

    Aabb cover = coverage;
    Vec3 max_item_extent{0, 0, 0};
    for (const Aabb& b : items) {
        cover.expand(b);
        max_item_extent = component_max(max_item_extent, b.extent());
    }
    const Vec3 ext = component_max(cover.extent(), Vec3{1e-9, 1e-9, 1e-9});
    g.origin_ = cover.min;
    const double item_ext[3] = {max_item_extent.x, max_item_extent.y, max_item_extent.z};
    const double full[3] = {ext.x, ext.y, ext.z};

    int n[3] = {4, 4, 4};
    while (true) {
        const double cs[3] = {full[0] / n[0], full[1] / n[1], full[2] / n[2]};
        if (mean_occupancy(items, g.origin_, cs, n) <= capacity) break;
        // halve the longest cell axis; refuse when the halved cell would
        // undercut twice the largest item extent (multi-cell smearing)
        int axis = -1;
        double best = 0.0;
        for (int k = 0; k < 3; ++k) {
            if (cs[k] > best && cs[k] * 0.5 >= 2.0 * item_ext[k]) {
                best = cs[k];
                axis = k;
            }
        }
        if (axis < 0) break;
        if (static_cast<long long>(n[0]) * n[1] * n[2] * 2 > kMaxCells) break;
        n[axis] *= 2;
    }

    g.nx_ = n[0];
    g.ny_ = n[1];
    g.nz_ = n[2];
    g.cell_ = {full[0] / n[0], full[1] / n[1], full[2] / n[2]};

    const size_t cells = static_cast<size_t>(g.nx_) * g.ny_ * g.nz_;
    g.slots_.assign(cells * capacity, -1);
    g.counts_.assign(cells, 0);
    g.overflow_.resize(cells);
    for (size_t i = 0; i < items.size(); ++i) {
        int lo[3], hi[3];
        g.cell_range(items[i], lo, hi);
        for (int z = lo[2]; z <= hi[2]; ++z) {
            for (int y = lo[1]; y <= hi[1]; ++y) {
                for (int x = lo[0]; x <= hi[0]; ++x) {
                    const size_t cell = g.cell_index(x, y, z);
                    const std::int32_t at = g.counts_[cell]++;
                    if (at < capacity) {
                        g.slots_[cell * capacity + at] = static_cast<std::int32_t>(i);
                    } else {
                        g.overflow_[cell].push_back(static_cast<std::int32_t>(i));
                    }
                }
            }
        }
    }
    return g;
}

void SpatialGrid::candidates(const Aabb& query, std::vector<std::int32_t>& out) const {
    out.clear();
    if (query.max.x < origin_.x || query.max.y < origin_.y || query.max.z < origin_.z) return;
    const Vec3 top{origin_.x + cell_.x * nx_, origin_.y + cell_.y * ny_, origin_.z + cell_.z * nz_};
    if (query.min.x > top.x || query.min.y > top.y || query.min.z > top.z) return;

    int lo[3], hi[3];
    cell_range(query, lo, hi);
    for (int z = lo[2]; z <= hi[2]; ++z) {
        for (int y = lo[1]; y <= hi[1]; ++y) {
            for (int x = lo[0]; x <= hi[0]; ++x) {
                const size_t cell = cell_index(x, y, z);
                const std::int32_t inline_n = std::min(counts_[cell], capacity_);
                const std::int32_t* block = &slots_[cell * capacity_];
                out.insert(out.end(), block, block + inline_n);
                out.insert(out.end(), overflow_[cell].begin(), overflow_[cell].end());
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

size_t SpatialGrid::overflow_total() const {
    size_t n = 0;
    for (const auto& v : overflow_) n += v.size();
    return n;
}

double SpatialGrid::mean_nonempty_occupancy() const {
    std::int64_t total = 0;
    std::int64_t nonempty = 0;
    for (std::int32_t c : counts_) {
        if (c > 0) {
            total += c;
            ++nonempty;
        }
    }
    return nonempty == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(nonempty);
}

} // namespace rgg
