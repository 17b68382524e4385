#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rgg/swept.hpp"

namespace rgg {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using ComponentId = std::int32_t;
using ObstacleId = std::int32_t;

/// Undirected roadmap graph. Each edge pair is stored once with
/// first < second.
struct Roadmap {
    std::vector<Configuration> nodes;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::vector<EdgeId>> adjacency;

    void rebuild_adjacency();
};

enum class ValidityState : std::uint8_t {
    Valid = 0,   // green: guaranteed valid
    Invalid = 1, // red: guaranteed invalid
    Unknown = 2, // gray: undetermined
};

/// Workspace, obstacles, and the robot operating in it.
struct Scene {
    Aabb bounds;
    std::vector<ObstacleModel> obstacles;
    RobotModel robot;
};

/// DOF sampling ranges: translations over the environment box,
/// rotations/joints over [-pi, pi].
struct DofBounds {
    std::vector<double> lo;
    std::vector<double> hi;
};

DofBounds dof_bounds_for(const RobotModel& m, const Aabb& env);

/// Uniform sampling + k-nearest straight-line connection. Components
/// colliding with active obstacles in `scene` are discarded; the default
/// benchmark path builds in an empty scene. Deterministic per seed.
Roadmap build_prm(const Scene& scene, int n_nodes, int k_neighbors, double eps, std::uint64_t seed);

/// Discretizations and approximations for every roadmap component.
/// Nodes come first (component id == node id, built as degenerate edges),
/// then edges at id n_nodes + edge index.
struct ComponentSet {
    int n_nodes = 0;
    int n_edges = 0;
    double epsilon = 0.0;
    int max_segments = 16;
    BodySpheres spheres;
    std::vector<std::vector<Configuration>> cfgs;
    std::vector<EdgeGeometry> geometry;

    int count() const { return n_nodes + n_edges; }
};

ComponentSet build_components(const Roadmap& r, const RobotModel& m, const BodySpheres& spheres, double eps,
                              int max_segments);

/// Ground truth: every configuration of the discretization, every body box,
/// against every active obstacle box, decided by the exact polytope test.
bool exact_component_valid(const std::vector<Configuration>& cfgs, const RobotModel& m, const Scene& scene);

} // namespace rgg
