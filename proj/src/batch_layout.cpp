#include "rgg/batch_layout.hpp"

#include <cmath>
#include <stdexcept>

namespace rgg {

namespace {

void write_corners(double* dst, const Obb& o) {
    const ObbCorners c = obb_corners(o);
    for (int i = 0; i < 8; ++i) {
        dst[i * 3 + 0] = c[i].x;
        dst[i * 3 + 1] = c[i].y;
        dst[i * 3 + 2] = c[i].z;
    }
}

} // namespace

BatchLayout BatchLayout::serialize(const ComponentSet& components, const std::vector<ObstacleModel>& obstacles) {
    BatchLayout l;
    l.n_components = components.count();
    l.n_bodies = static_cast<std::int32_t>(components.spheres.per_body.size());
    l.max_segments = components.max_segments;
    l.n_obstacles = static_cast<std::int32_t>(obstacles.size());

    // Slot layout: spheres-per-body times the worst split factor observed,
    // so every slot's radius is a function of (body, slot) alone.
    std::int32_t max_parts = 1;
    std::int32_t max_spheres = 1;
    for (std::int32_t b = 0; b < l.n_bodies; ++b) {
        max_spheres = std::max(max_spheres, static_cast<std::int32_t>(components.spheres.per_body[b].size()));
    }
    for (const EdgeGeometry& g : components.geometry) {
        for (std::int32_t b = 0; b < l.n_bodies; ++b) {
            std::vector<std::int32_t> parts(components.spheres.per_body[b].size(), 0);
            for (const Spline& s : g.under[b]) {
                max_parts = std::max(max_parts, ++parts[s.sphere_index]);
            }
        }
    }
    l.n_slots = max_spheres * max_parts;

    l.e_plus.assign(static_cast<size_t>(l.n_components) * l.n_bodies * 24, 0.0);
    l.e_minus.assign(static_cast<size_t>(l.n_components) * l.n_bodies * l.n_slots * l.max_segments * 6, 0.0);
    l.seg_mask.assign(static_cast<size_t>(l.n_components) * l.n_bodies * l.n_slots * l.max_segments, 0);
    l.seg_count.assign(static_cast<size_t>(l.n_components) * l.n_bodies * l.n_slots, 0);
    l.spline_radius.assign(static_cast<size_t>(l.n_bodies) * l.n_slots, 0.0);
    l.edge_sat.resize(static_cast<size_t>(l.n_components) * l.n_bodies);
    l.seg_prep.resize(static_cast<size_t>(l.n_components) * l.n_bodies * l.n_slots * l.max_segments);
    l.component_aabb.assign(l.n_components, Aabb::empty());

    for (ComponentId c = 0; c < l.n_components; ++c) {
        const EdgeGeometry& g = components.geometry[c];
        for (std::int32_t b = 0; b < l.n_bodies; ++b) {
            const size_t sat = l.sat_index(c, b);
            write_corners(&l.e_plus[sat * 24], g.over[b]);
            l.edge_sat[sat] = kern::sat_prep(&l.e_plus[sat * 24]);
            l.component_aabb[c].expand(aabb_of_obb(g.over[b]));
        }
    }

    for (ComponentId c = 0; c < l.n_components; ++c) {
        const EdgeGeometry& g = components.geometry[c];
        for (std::int32_t b = 0; b < l.n_bodies; ++b) {
            std::vector<std::int32_t> used(components.spheres.per_body[b].size(), 0);
            for (const Spline& s : g.under[b]) {
                if (s.segment_count() > l.max_segments) {
                    throw std::logic_error("spline exceeds the segment cap; the build policy should have split it");
                }
                const std::int32_t slot = s.sphere_index * max_parts + used[s.sphere_index]++;
                // slot radii are uniform across components by construction
                double& slot_radius = l.spline_radius[b * l.n_slots + slot];
                if (slot_radius == 0.0) {
                    slot_radius = s.radius;
                } else if (slot_radius != s.radius) {
                    throw std::logic_error("inconsistent spline radius for a layout slot");
                }
                const size_t row = l.row_index(c, b, slot);
                double* dst = &l.e_minus[row * l.max_segments * 6];
                std::uint8_t* mask = &l.seg_mask[row * l.max_segments];
                std::int32_t count = 0;
                if (s.points.size() == 1) {
                    const Vec3& p = s.points[0];
                    const double seg[6] = {p.x, p.y, p.z, p.x, p.y, p.z};
                    for (int j = 0; j < 6; ++j) dst[j] = seg[j];
                    mask[0] = 1;
                    count = 1;
                } else {
                    for (size_t p = 0; p + 1 < s.points.size(); ++p) {
                        double* seg = dst + count * 6;
                        seg[0] = s.points[p].x;
                        seg[1] = s.points[p].y;
                        seg[2] = s.points[p].z;
                        seg[3] = s.points[p + 1].x;
                        seg[4] = s.points[p + 1].y;
                        seg[5] = s.points[p + 1].z;
                        mask[count] = 1;
                        ++count;
                    }
                }
                l.seg_count[row] = count;
            }
        }
    }

    l.rebuild_segment_operands();

    // Obstacle side: sphere counts must match and radii be uniform per
    // obstacle (one radius per obstacle in the layout).
    std::int32_t n_spheres = 1;
    for (const ObstacleModel& o : obstacles) {
        n_spheres = std::max(n_spheres, static_cast<std::int32_t>(o.inner.size()));
    }
    l.n_spheres = n_spheres;
    l.o_plus.assign(static_cast<size_t>(l.n_obstacles) * 24, 0.0);
    l.o_minus_c.assign(static_cast<size_t>(l.n_obstacles) * n_spheres * 3, 0.0);
    l.o_minus_r.assign(l.n_obstacles, 0.0);
    l.o_sphere_count.assign(l.n_obstacles, 0);
    l.obstacle_sat.resize(l.n_obstacles);
    l.obstacle_aabb.assign(l.n_obstacles, Aabb::empty());
    l.obstacle_sphere_aabb.assign(l.n_obstacles, Aabb::empty());

    std::vector<std::pair<ObstacleId, Transform>> all;
    for (ObstacleId o = 0; o < l.n_obstacles; ++o) {
        for (const Sphere& s : obstacles[o].inner) {
            if (s.radius != obstacles[o].inner[0].radius) {
                throw std::invalid_argument("layout requires one shared sphere radius per obstacle");
            }
        }
        l.o_sphere_count[o] = static_cast<std::int32_t>(obstacles[o].inner.size());
        l.o_minus_r[o] = obstacles[o].inner.empty() ? 0.0 : obstacles[o].inner[0].radius;
        all.push_back({o, obstacles[o].pose});
    }
    l.update_transforms(all, obstacles);
    return l;
}

void BatchLayout::rebuild_segment_operands() {
    for (size_t row = 0; row < seg_count.size(); ++row) {
        for (std::int32_t k = 0; k < max_segments; ++k) {
            seg_prep[row * max_segments + k] = kern::seg_prep(&e_minus[(row * max_segments + k) * 6]);
        }
    }
}

void BatchLayout::update_transforms(const std::vector<std::pair<ObstacleId, Transform>>& moves,
                                    const std::vector<ObstacleModel>& canonical) {
    for (const auto& [o, pose] : moves) {
        if (o < 0 || o >= n_obstacles) throw std::invalid_argument("unknown obstacle id");
        const ObstacleModel& model = canonical[o];
        Obb outer{{0, 0, 0}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, model.half_extents};
        outer = apply_transform(pose, outer);
        write_corners(&o_plus[static_cast<size_t>(o) * 24], outer);
        obstacle_sat[o] = kern::sat_prep(&o_plus[static_cast<size_t>(o) * 24]);
        obstacle_aabb[o] = aabb_of_obb(outer);

        Aabb sbox = Aabb::empty();
        for (size_t s = 0; s < model.inner.size(); ++s) {
            const Vec3 c = pose.apply(model.inner[s].center);
            double* dst = &o_minus_c[(static_cast<size_t>(o) * n_spheres + s) * 3];
            dst[0] = c.x;
            dst[1] = c.y;
            dst[2] = c.z;
            const double r = model.inner[s].radius;
            sbox.expand({c.x - r, c.y - r, c.z - r});
            sbox.expand({c.x + r, c.y + r, c.z + r});
        }
        obstacle_sphere_aabb[o] = sbox;
    }
}

} // namespace rgg
