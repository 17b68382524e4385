#pragma once

#include <cstdint>
#include <vector>

#include "rgg/vec3.hpp"

namespace rgg {

/// Static bounding volume hierarchy: top-down median split on the longest
/// centroid axis, one item per leaf. Queries return the sorted unique tags
/// of leaves whose boxes overlap (closed) the query box.
class AabbTree {
public:
    struct Item {
        Aabb box;
        std::int32_t tag;
    };

    static AabbTree build(std::vector<Item> items); // throws on empty input

    void query(const Aabb& box, std::vector<std::int32_t>& out_tags) const;

    size_t leaf_count() const { return leaves_; }

private:
    struct Node {
        Aabb box;
        std::int32_t left = -1;  // internal: child index
        std::int32_t right = -1;
        std::int32_t tag = -1;   // leaf: item tag
    };

    std::int32_t build_range(std::vector<Item>& items, std::int32_t lo, std::int32_t hi);

    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
    size_t leaves_ = 0;
};

} // namespace rgg
