#include "rgg/aabb_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace rgg {

AabbTree AabbTree::build(std::vector<Item> items) {
    if (items.empty()) throw std::invalid_argument("cannot build a tree from zero items");
    AabbTree t;
    t.leaves_ = items.size();
    t.nodes_.reserve(items.size() * 2);
    t.root_ = t.build_range(items, 0, static_cast<std::int32_t>(items.size()));
    return t;
}

std::int32_t AabbTree::build_range(std::vector<Item>& items, std::int32_t lo, std::int32_t hi) {
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({});
    if (hi - lo == 1) {
        nodes_[id].box = items[lo].box;
        nodes_[id].tag = items[lo].tag;
        return id;
    }
    Aabb centroid_box = Aabb::empty();
    Aabb total = Aabb::empty();
    for (std::int32_t i = lo; i < hi; ++i) {
        centroid_box.expand(items[i].box.center());
        total.expand(items[i].box);
    }
    const Vec3 ext = centroid_box.extent();
    int axis = 0;
    if (ext.y > ext[axis]) axis = 1;
    if (ext.z > ext[axis]) axis = 2;

    const std::int32_t mid = lo + (hi - lo) / 2;
    std::nth_element(items.begin() + lo, items.begin() + mid, items.begin() + hi,
                     [axis](const Item& a, const Item& b) {
                         const double ca = a.box.center()[axis];
                         const double cb = b.box.center()[axis];
                         if (ca != cb) return ca < cb;
                         return a.tag < b.tag;
                     });
    const std::int32_t left = build_range(items, lo, mid);
    const std::int32_t right = build_range(items, mid, hi);
    nodes_[id].box = total;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

void AabbTree::query(const Aabb& box, std::vector<std::int32_t>& out_tags) const {
    out_tags.clear();
    if (root_ < 0) return;
    std::int32_t stack[64];
    int top = 0;
    stack[top++] = root_;
    while (top > 0) {
        const Node& n = nodes_[stack[--top]];
        if (!n.box.overlaps(box)) continue;
        if (n.left < 0) {
            out_tags.push_back(n.tag);
        } else {
            // depth is bounded by log2(n) + slack; median splits keep it shallow
            stack[top++] = n.left;
            stack[top++] = n.right;
        }
    }
    std::sort(out_tags.begin(), out_tags.end());
    out_tags.erase(std::unique(out_tags.begin(), out_tags.end()), out_tags.end());
}

} // namespace rgg
