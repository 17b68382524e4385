#pragma once

#include <vector>

#include "rgg/aabb_tree.hpp"
#include "rgg/kernels.hpp"
#include "rgg/update_report.hpp"

namespace rgg {

/// Reference tree-based Red-Green-Gray engine. Owns the validity labels of
/// one roadmap exclusively; updates are not reentrant.
class SequentialEngine {
public:
    SequentialEngine(const ComponentSet& components, Scene& scene, EngineOptions options = {});

    /// Processes one obstacle pose change: revalidation of the obstacle's old
    /// intersections, in-place transform update, over phase (gray marking +
    /// intersection lists), under phase (red marking), and, unless lazy, exact
    /// resolution of the freshly touched gray components.
    UpdateReport update_obstacle(ObstacleId o, const Transform& pose, bool lazy);

    /// Exact-oracle resolution of every gray component (lazy query analogue).
    int resolve_all_unknown();

    const std::vector<ValidityState>& states() const { return states_; }
    const std::vector<std::uint64_t>& obstacle_bits() const { return bits_; }
    int unknown_count() const { return unknown_count_; }
    const Scene& scene() const { return scene_; }
    const ComponentSet& components() const { return *components_; }

    bool narrow_over_test(ObstacleId o, ComponentId c) const;
    bool narrow_under_test(ObstacleId o, ComponentId c) const;

private:
    struct WorldObstacle {
        kern::SatBox outer_sat;
        Aabb outer_aabb;
        std::vector<Vec3> sphere_centers;
        double sphere_radius = 0.0;
        Aabb sphere_aabb;
    };

    void revalidate_old_intersections(ObstacleId o);
    void refresh_world_obstacle(ObstacleId o);
    void set_state(ComponentId c, ValidityState s);
    void begin_update();
    void finish_counts(UpdateReport& r);

    const ComponentSet* components_;
    Scene& scene_;
    EngineOptions options_;

    // per (component, body) SAT operands; per spline-row segment operands
    int n_bodies_ = 0;
    std::vector<kern::SatBox> body_sat_;
    struct SplineRow {
        std::int32_t seg_begin = 0;
        std::int32_t seg_count = 0;
        double radius = 0.0;
    };
    std::vector<std::vector<SplineRow>> rows_; // per component
    std::vector<kern::SegPrep> segs_;

    AabbTree over_tree_;
    AabbTree under_tree_;
    std::vector<WorldObstacle> world_;

    std::vector<ValidityState> states_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::vector<ComponentId>> listed_; // components holding bit o
    int unknown_count_ = 0;

    std::vector<std::pair<ComponentId, ValidityState>> touched_; // per-update undo log
    std::vector<std::int32_t> query_scratch_;
    std::vector<ComponentId> hit_scratch_;
};

} // namespace rgg
