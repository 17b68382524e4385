#pragma once

#include <memory>
#include <vector>

#include "rgg/batch_layout.hpp"
#include "rgg/spatial_grid.hpp"
#include "rgg/thread_pool.hpp"
#include "rgg/update_report.hpp"

namespace rgg {

/// Data-parallel Red-Green-Gray engine over the dense batch layout with
/// grid-filtered candidate selection. Produces labels identical to
/// SequentialEngine for any move sequence; batched predicates are
/// bit-identical to the scalar ones.
class BatchEngine {
public:
    BatchEngine(const ComponentSet& components, Scene& scene, EngineOptions options = {},
                int cell_capacity = 1024);

    UpdateReport update_obstacle(ObstacleId o, const Transform& pose, bool lazy);

    std::vector<UpdateReport> batch_update(const std::vector<std::pair<ObstacleId, Transform>>& moves, bool lazy);

    int resolve_all_unknown();

    const std::vector<ValidityState>& states() const { return states_; }
    const std::vector<std::uint64_t>& obstacle_bits() const { return bits_; }
    int unknown_count() const { return unknown_count_; }
    const BatchLayout& layout() const { return layout_; }
    const SpatialGrid& grid() const { return grid_; }

    /// Batched narrow tests over explicit candidate lists; mask[i] answers
    /// candidate i. Exposed for the predicate-equality suites.
    void batch_over(const std::vector<ComponentId>& candidates, ObstacleId o, std::vector<std::uint8_t>& mask);
    void batch_under(const std::vector<ComponentId>& candidates, ObstacleId o, std::vector<std::uint8_t>& mask);

private:
    void revalidate_old_intersections(ObstacleId o);
    void set_state(ComponentId c, ValidityState s);
    void finish_counts(UpdateReport& r);

    const ComponentSet* components_;
    Scene& scene_;
    EngineOptions options_;
    BatchLayout layout_;
    SpatialGrid grid_;
    std::unique_ptr<ThreadPool> pool_;

    std::vector<ValidityState> states_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::vector<ComponentId>> listed_;
    int unknown_count_ = 0;

    std::vector<std::pair<ComponentId, ValidityState>> touched_;
    std::vector<std::int32_t> cand_scratch_;
    std::vector<std::int32_t> pair_idx_;
    std::vector<std::uint8_t> pair_out_;
    std::vector<std::int32_t> seg_idx_;
    std::vector<std::int32_t> seg_owner_;
    std::vector<std::uint8_t> seg_out_;
};

} // namespace rgg
