#pragma once

#include <cstdint>

#include "rgg/roadmap.hpp"

namespace rgg {

/// Per-update outcome and phase timings (microseconds, monotonic clock).
/// Counts are final-vs-initial state diffs over the update.
struct UpdateReport {
    ObstacleId obstacle = -1;
    int new_green = 0;
    int new_red = 0;
    int new_gray = 0;
    std::int64_t reval_us = 0;
    std::int64_t over_us = 0;
    std::int64_t under_us = 0;
    std::int64_t resolve_us = 0;
    int unknown_after_heuristic = 0; // gray count before the resolve phase
    int residual_unknown = 0;        // gray count at the end of the update
    int resolve_checks = 0;          // exact validations performed (eager only)

    std::int64_t heuristic_us() const { return reval_us + over_us + under_us; }
    std::int64_t total_us() const { return heuristic_us() + resolve_us; }

    void accumulate(const UpdateReport& o) {
        new_green += o.new_green;
        new_red += o.new_red;
        new_gray += o.new_gray;
        reval_us += o.reval_us;
        over_us += o.over_us;
        under_us += o.under_us;
        resolve_us += o.resolve_us;
        unknown_after_heuristic = o.unknown_after_heuristic;
        residual_unknown = o.residual_unknown;
        resolve_checks += o.resolve_checks;
    }
};

/// Engine behavior switches. `use_under` off reproduces the outer-only
/// (SPITE-style) baseline used by the gray-reduction comparison.
struct EngineOptions {
    bool use_under = true;
    int threads = 0; // batch engine only; 0 = hardware concurrency
};

} // namespace rgg
