#include "rgg/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rgg/rng.hpp"

namespace rgg {

void Roadmap::rebuild_adjacency() {
    adjacency.assign(nodes.size(), {});
    for (size_t e = 0; e < edges.size(); ++e) {
        adjacency[edges[e].first].push_back(static_cast<EdgeId>(e));
        adjacency[edges[e].second].push_back(static_cast<EdgeId>(e));
    }
}

DofBounds dof_bounds_for(const RobotModel& m, const Aabb& env) {
    DofBounds b;
    if (m.kinematics == KinematicsType::FreeFlying) {
        b.lo = {env.min.x, env.min.y, env.min.z, -std::numbers::pi, -std::numbers::pi, -std::numbers::pi};
        b.hi = {env.max.x, env.max.y, env.max.z, std::numbers::pi, std::numbers::pi, std::numbers::pi};
    } else {
        b.lo.assign(m.dof_count(), -std::numbers::pi);
        b.hi.assign(m.dof_count(), std::numbers::pi);
    }
    return b;
}

namespace {

double dof_distance2(const Configuration& a, const Configuration& b) {
    double d2 = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        d2 += d * d;
    }
    return d2;
}

bool component_collides(const std::vector<Configuration>& cfgs, const RobotModel& m, const Scene& scene) {
    return !exact_component_valid(cfgs, m, scene);
}

bool scene_has_active_obstacles(const Scene& scene) {
    for (const ObstacleModel& o : scene.obstacles) {
        if (o.active) return true;
    }
    return false;
}

} // namespace

Roadmap build_prm(const Scene& scene, int n_nodes, int k_neighbors, double eps, std::uint64_t seed) {
    if (n_nodes < 1) throw std::invalid_argument("node count must be >= 1");
    if (k_neighbors < 1) throw std::invalid_argument("neighbor count must be >= 1");
    scene.robot.validate();

    const DofBounds bounds = dof_bounds_for(scene.robot, scene.bounds);
    const int dof = scene.robot.dof_count();
    const bool check = scene_has_active_obstacles(scene);

    Rng rng(seed);
    Roadmap r;
    r.nodes.reserve(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        Configuration c(dof);
        for (int k = 0; k < dof; ++k) c[k] = rng.uniform(bounds.lo[k], bounds.hi[k]);
        if (check && component_collides({c, c}, scene.robot, scene)) continue;
        r.nodes.push_back(std::move(c));
    }

    const int n = static_cast<int>(r.nodes.size());
    std::vector<std::pair<NodeId, NodeId>> candidates;
    std::vector<std::pair<double, NodeId>> dist;
    for (NodeId i = 0; i < n; ++i) {
        dist.clear();
        for (NodeId j = 0; j < n; ++j) {
            if (j == i) continue;
            dist.push_back({dof_distance2(r.nodes[i], r.nodes[j]), j});
        }
        const int k = std::min<int>(k_neighbors, static_cast<int>(dist.size()));
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
        for (int t = 0; t < k; ++t) {
            const NodeId j = dist[t].second;
            candidates.push_back({std::min(i, j), std::max(i, j)});
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& [a, b] : candidates) {
        if (check && component_collides(discretize_edge(r.nodes[a], r.nodes[b], eps), scene.robot, scene)) {
            continue;
        }
        r.edges.push_back({a, b});
    }
    r.rebuild_adjacency();
    return r;
}

ComponentSet build_components(const Roadmap& r, const RobotModel& m, const BodySpheres& spheres, double eps,
                              int max_segments) {
    if (!(eps > 0)) throw std::invalid_argument("resolution must be positive");
    spheres.validate(m);
    ComponentSet set;
    set.n_nodes = static_cast<int>(r.nodes.size());
    set.n_edges = static_cast<int>(r.edges.size());
    set.epsilon = eps;
    set.max_segments = max_segments;
    set.spheres = spheres;
    set.cfgs.reserve(set.count());
    set.geometry.reserve(set.count());
    // Nodes are degenerate edges: same discretization and build path.
    for (const Configuration& c : r.nodes) {
        set.cfgs.push_back(discretize_edge(c, c, eps));
    }
    for (const auto& [a, b] : r.edges) {
        set.cfgs.push_back(discretize_edge(r.nodes[a], r.nodes[b], eps));
    }
    for (const auto& cfgs : set.cfgs) {
        set.geometry.push_back(build_edge_geometry(m, spheres, cfgs, max_segments, eps));
    }
    return set;
}

bool exact_component_valid(const std::vector<Configuration>& cfgs, const RobotModel& m, const Scene& scene) {
    struct WorldObstacle {
        ConvexPolytope poly;
        Aabb box;
    };
    std::vector<WorldObstacle> obstacles;
    for (const ObstacleModel& o : scene.obstacles) {
        if (!o.active) continue;
        WorldObstacle w{ConvexPolytope::box(o.half_extents, o.pose), {}};
        w.box = aabb_of_obb(o.world_outer());
        obstacles.push_back(std::move(w));
    }
    if (obstacles.empty()) return true;

    for (const Configuration& cfg : cfgs) {
        const std::vector<Transform> fk = forward_kinematics(m, cfg);
        for (size_t b = 0; b < m.bodies.size(); ++b) {
            const Transform pose = fk[b];
            Obb body_box{{0, 0, 0}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, m.bodies[b].half_extents};
            body_box = apply_transform(pose, body_box);
            const Aabb body_aabb = aabb_of_obb(body_box);
            ConvexPolytope body_poly; // built lazily, most pairs fail the Aabb gate
            bool body_poly_ready = false;
            for (const WorldObstacle& o : obstacles) {
                if (!body_aabb.overlaps(o.box)) continue;
                if (!body_poly_ready) {
                    body_poly = ConvexPolytope::box(m.bodies[b].half_extents, pose);
                    body_poly_ready = true;
                }
                if (polytopes_intersect(body_poly, o.poly)) return false;
            }
        }
    }
    return true;
}

} // namespace rgg
