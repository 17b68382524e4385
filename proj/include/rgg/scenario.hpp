#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rgg/roadmap.hpp"

namespace rgg {

enum class EngineSelect { Sequential, Batch, Both };
enum class UpdateMode { Lazy, Eager };

struct ObstacleSpec {
    Vec3 half_extents;
    int spheres = 0; // 0: max(1, ceil(longest/min extent))
};

/// One benchmark scenario: environment, robot, roadmap parameters, obstacle
/// set, and the random-translation move script. Seeds are mandatory.
struct Scenario {
    std::string name;
    Aabb env{{-10, -10, -10}, {10, 10, 10}};
    RobotModel robot;
    int nodes = 0;
    int k_neighbors = 8;
    double epsilon = 0.0; // 0: 0.1 * smallest body half extent
    std::uint64_t roadmap_seed = 0;
    bool roadmap_seed_set = false;
    std::vector<ObstacleSpec> obstacles;
    int iterations = 0;
    std::uint64_t move_seed = 0;
    bool move_seed_set = false;
    EngineSelect engine = EngineSelect::Both;
    UpdateMode mode = UpdateMode::Lazy;
    int max_segments = 16;
    int threads = 0;
    int cell_capacity = 1024;

    double effective_epsilon() const;
    std::vector<ObstacleModel> make_obstacles() const;

    /// The move script: `iterations` rounds, each translating every obstacle
    /// to a uniform position that keeps its box inside the environment.
    std::vector<std::pair<ObstacleId, Transform>> make_moves() const;
};

class ScenarioParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plain-text key = value format with '#' comments; see scenarios/ for the
/// shipped files. Throws ScenarioParseError with file:line diagnostics.
Scenario parse_scenario_text(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);

} // namespace rgg
