#include "rgg/engine_sequential.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <stdexcept>

namespace rgg {

namespace {

std::int64_t now_us() {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

kern::SatBox sat_of_obb(const Obb& o) {
    const ObbCorners c = obb_corners(o);
    return kern::sat_prep(&c[0].x);
}

} // namespace

SequentialEngine::SequentialEngine(const ComponentSet& components, Scene& scene, EngineOptions options)
    : components_(&components), scene_(scene), options_(options) {
    const int n = components.count();
    if (n == 0) throw std::invalid_argument("empty component set");
    if (scene.obstacles.size() > 64) throw std::invalid_argument("obstacle bitsets support at most 64 obstacles");

    n_bodies_ = static_cast<int>(scene.robot.bodies.size());
    body_sat_.reserve(static_cast<size_t>(n) * n_bodies_);
    rows_.resize(n);

    std::vector<AabbTree::Item> over_items;
    std::vector<AabbTree::Item> under_items;
    for (ComponentId c = 0; c < n; ++c) {
        const EdgeGeometry& g = components.geometry[c];
        for (int b = 0; b < n_bodies_; ++b) {
            body_sat_.push_back(sat_of_obb(g.over[b]));
            over_items.push_back({aabb_of_obb(g.over[b]), c});
        }
        for (int b = 0; b < n_bodies_; ++b) {
            for (const Spline& s : g.under[b]) {
                SplineRow row;
                row.seg_begin = static_cast<std::int32_t>(segs_.size());
                row.radius = s.radius;
                if (s.points.size() == 1) {
                    const double seg[6] = {s.points[0].x, s.points[0].y, s.points[0].z,
                                           s.points[0].x, s.points[0].y, s.points[0].z};
                    segs_.push_back(kern::seg_prep(seg));
                } else {
                    for (size_t p = 0; p + 1 < s.points.size(); ++p) {
                        const double seg[6] = {s.points[p].x,     s.points[p].y,     s.points[p].z,
                                               s.points[p + 1].x, s.points[p + 1].y, s.points[p + 1].z};
                        segs_.push_back(kern::seg_prep(seg));
                    }
                }
                row.seg_count = static_cast<std::int32_t>(segs_.size()) - row.seg_begin;
                rows_[c].push_back(row);

                Aabb box = Aabb::empty();
                for (const Vec3& p : s.points) box.expand(p);
                under_items.push_back({box.inflated(s.radius), c});
            }
        }
    }
    over_tree_ = AabbTree::build(std::move(over_items));
    under_tree_ = AabbTree::build(std::move(under_items));

    world_.resize(scene.obstacles.size());
    states_.assign(n, ValidityState::Valid);
    bits_.assign(n, 0);
    listed_.resize(scene.obstacles.size());
}

void SequentialEngine::refresh_world_obstacle(ObstacleId o) {
    const ObstacleModel& m = scene_.obstacles[o];
    WorldObstacle& w = world_[o];
    const Obb outer = m.world_outer();
    w.outer_sat = sat_of_obb(outer);
    w.outer_aabb = aabb_of_obb(outer);
    w.sphere_centers.clear();
    Aabb sbox = Aabb::empty();
    double radius = 0.0;
    for (const Sphere& s : m.inner) {
        const Vec3 c = m.pose.apply(s.center);
        w.sphere_centers.push_back(c);
        radius = s.radius;
        sbox.expand({c.x - s.radius, c.y - s.radius, c.z - s.radius});
        sbox.expand({c.x + s.radius, c.y + s.radius, c.z + s.radius});
    }
    w.sphere_radius = radius;
    w.sphere_aabb = sbox;
}

bool SequentialEngine::narrow_over_test(ObstacleId o, ComponentId c) const {
    const kern::SatBox* body = &body_sat_[static_cast<size_t>(c) * n_bodies_];
    for (int b = 0; b < n_bodies_; ++b) {
        if (kern::sat_boxes(body[b], world_[o].outer_sat)) return true;
    }
    return false;
}

bool SequentialEngine::narrow_under_test(ObstacleId o, ComponentId c) const {
    const WorldObstacle& w = world_[o];
    for (const SplineRow& row : rows_[c]) {
        const double r_total = w.sphere_radius + row.radius;
        for (std::int32_t s = 0; s < row.seg_count; ++s) {
            const kern::SegPrep& seg = segs_[row.seg_begin + s];
            for (const Vec3& center : w.sphere_centers) {
                const double cc[3] = {center.x, center.y, center.z};
                if (kern::seg_sphere(seg, cc, r_total)) return true;
            }
        }
    }
    return false;
}

void SequentialEngine::set_state(ComponentId c, ValidityState s) {
    if (states_[c] == s) return;
    touched_.push_back({c, states_[c]});
    if (states_[c] == ValidityState::Unknown) --unknown_count_;
    if (s == ValidityState::Unknown) ++unknown_count_;
    states_[c] = s;
}

void SequentialEngine::begin_update() { touched_.clear(); }

void SequentialEngine::finish_counts(UpdateReport& r) {
    // Stable: the first entry per component is its pre-update state.
    std::stable_sort(touched_.begin(), touched_.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < touched_.size(); ++i) {
        if (i > 0 && touched_[i].first == touched_[i - 1].first) continue;
        const ValidityState before = touched_[i].second;
        const ValidityState after = states_[touched_[i].first];
        if (before == after) continue;
        if (after == ValidityState::Valid) ++r.new_green;
        if (after == ValidityState::Invalid) ++r.new_red;
        if (after == ValidityState::Unknown) ++r.new_gray;
    }
}

void SequentialEngine::revalidate_old_intersections(ObstacleId o) {
    std::vector<ComponentId> holders;
    holders.swap(listed_[o]);
    const std::uint64_t bit = 1ull << o;
    for (ComponentId c : holders) {
        bits_[c] &= ~bit;
        if (bits_[c] == 0) {
            set_state(c, ValidityState::Valid);
            continue;
        }
        set_state(c, ValidityState::Unknown);
        if (!options_.use_under) continue;
        std::uint64_t rest = bits_[c];
        while (rest) {
            const int o2 = std::countr_zero(rest);
            rest &= rest - 1;
            if (narrow_under_test(o2, c)) {
                set_state(c, ValidityState::Invalid);
                break;
            }
        }
    }
}

UpdateReport SequentialEngine::update_obstacle(ObstacleId o, const Transform& pose, bool lazy) {
    if (o < 0 || o >= static_cast<ObstacleId>(scene_.obstacles.size())) {
        throw std::invalid_argument("unknown obstacle id");
    }
    UpdateReport report;
    report.obstacle = o;
    begin_update();

    const std::int64_t t0 = now_us();
    revalidate_old_intersections(o);

    scene_.obstacles[o].pose = pose;
    scene_.obstacles[o].active = true;
    refresh_world_obstacle(o);

    const std::int64_t t1 = now_us();
    report.reval_us = t1 - t0;

    // Over phase: broadphase by the obstacle's Aabb, SAT narrow test, gray
    // marking and intersection-list updates.
    over_tree_.query(world_[o].outer_aabb, query_scratch_);
    hit_scratch_.clear();
    const std::uint64_t bit = 1ull << o;
    for (std::int32_t c : query_scratch_) {
        if (!narrow_over_test(o, c)) continue;
        hit_scratch_.push_back(c);
        if (states_[c] == ValidityState::Valid) set_state(c, ValidityState::Unknown);
        if (!(bits_[c] & bit)) {
            bits_[c] |= bit;
            listed_[o].push_back(c);
        }
    }
    const std::int64_t t2 = now_us();
    report.over_us = t2 - t1;

    // Under phase: any spline-sphere hit proves the component invalid.
    if (options_.use_under) {
        under_tree_.query(world_[o].sphere_aabb, query_scratch_);
        for (std::int32_t c : query_scratch_) {
            if (narrow_under_test(o, c)) set_state(c, ValidityState::Invalid);
        }
    }
    const std::int64_t t3 = now_us();
    report.under_us = t3 - t2;
    report.unknown_after_heuristic = unknown_count_;

    if (!lazy) {
        for (ComponentId c : hit_scratch_) {
            if (states_[c] != ValidityState::Unknown) continue;
            ++report.resolve_checks;
            const bool free = exact_component_valid(components_->cfgs[c], scene_.robot, scene_);
            set_state(c, free ? ValidityState::Valid : ValidityState::Invalid);
        }
    }
    report.resolve_us = now_us() - t3;
    report.residual_unknown = unknown_count_;
    finish_counts(report);
    return report;
}

int SequentialEngine::resolve_all_unknown() {
    int resolved = 0;
    for (ComponentId c = 0; c < components_->count(); ++c) {
        if (states_[c] != ValidityState::Unknown) continue;
        const bool free = exact_component_valid(components_->cfgs[c], scene_.robot, scene_);
        states_[c] = free ? ValidityState::Valid : ValidityState::Invalid;
        --unknown_count_;
        ++resolved;
    }
    return resolved;
}

} // namespace rgg
