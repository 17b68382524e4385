#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "oracles.hpp"
#include "rgg/roadmap.hpp"
#include "rgg/roadmap_io.hpp"
#include "rgg/rng.hpp"

using namespace rgg;

namespace {

Scene free_cube_scene(double half_env = 10.0) {
    Scene s;
    s.bounds = {{-half_env, -half_env, -half_env}, {half_env, half_env, half_env}};
    s.robot = make_free_flying_box({0.5, 0.5, 0.5});
    return s;
}

bool roadmaps_equal(const Roadmap& a, const Roadmap& b) {
    if (a.nodes.size() != b.nodes.size() || a.edges != b.edges) return false;
    for (size_t i = 0; i < a.nodes.size(); ++i) {
        if (a.nodes[i] != b.nodes[i]) return false;
    }
    return true;
}

std::string temp_path(const char* name) { return std::string("/tmp/rgg_test_") + name; }

} // namespace

TEST_CASE("build_prm: small free-space roadmap has a plausible edge count") {
    const Scene scene = free_cube_scene();
    const Roadmap r = build_prm(scene, 10, 16, 0.25, 42);
    CHECK(r.nodes.size() == 10);
    CHECK(r.edges.size() >= 40);
    CHECK(r.edges.size() <= 120);
    for (const auto& [a, b] : r.edges) {
        CHECK(a < b); // stored once, no self loops
    }
}

TEST_CASE("build_prm: single node has no edges; zero nodes is an error") {
    const Scene scene = free_cube_scene();
    const Roadmap r = build_prm(scene, 1, 4, 0.25, 7);
    CHECK(r.nodes.size() == 1);
    CHECK(r.edges.empty());
    CHECK_THROWS_AS(build_prm(scene, 0, 4, 0.25, 7), std::invalid_argument);
}

TEST_CASE("build_prm: identical seeds give bitwise identical roadmaps") {
    const Scene scene = free_cube_scene();
    const Roadmap a = build_prm(scene, 60, 8, 0.25, 1234);
    const Roadmap b = build_prm(scene, 60, 8, 0.25, 1234);
    CHECK(roadmaps_equal(a, b));
    const Roadmap c = build_prm(scene, 60, 8, 0.25, 1235);
    CHECK_FALSE(roadmaps_equal(a, c));
}

TEST_CASE("build_prm: initial obstacles discard colliding components") {
    Scene scene = free_cube_scene(3.0);
    ObstacleModel wall = make_box_obstacle({3.0, 3.0, 0.5}, 3);
    wall.pose = Transform::identity();
    wall.active = true;
    scene.obstacles.push_back(wall);
    const Roadmap r = build_prm(scene, 40, 6, 0.25, 99);
    CHECK(r.nodes.size() < 40); // the slab cuts out a band of samples
    for (const Configuration& c : r.nodes) {
        CHECK(exact_component_valid({c, c}, scene.robot, scene));
    }
}

TEST_CASE("exact_component_valid: empty scene, coincident obstacle, refinement agreement") {
    Scene scene = free_cube_scene();
    const Configuration at_origin{0, 0, 0, 0, 0, 0};
    CHECK(exact_component_valid({at_origin, at_origin}, scene.robot, scene));

    ObstacleModel block = make_box_obstacle({1, 1, 1}, 1);
    block.pose = Transform::identity(); // sits on the node
    block.active = true;
    scene.obstacles.push_back(block);
    CHECK_FALSE(exact_component_valid({at_origin, at_origin}, scene.robot, scene));

    // resolution refinement: eps vs eps/4 agree on random short edges
    Rng rng(4242);
    const double eps = 0.1;
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Configuration a(6), b(6);
        for (int k = 0; k < 3; ++k) {
            a[k] = rng.uniform(-4, 4);
            b[k] = a[k] + rng.uniform(-1.5, 1.5);
        }
        for (int k = 3; k < 6; ++k) {
            a[k] = rng.uniform(-3, 3);
            b[k] = a[k] + rng.uniform(-0.5, 0.5);
        }
        scene.obstacles[0].pose = Transform::translation({rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)});
        const bool coarse = exact_component_valid(discretize_edge(a, b, eps), scene.robot, scene);
        const bool fine = exact_component_valid(discretize_edge(a, b, eps / 4), scene.robot, scene);
        CHECK(coarse == fine);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("save/load: bitwise round trip") {
    const Scene scene = free_cube_scene();
    const Roadmap r = build_prm(scene, 25, 6, 0.25, 5);
    const BodySpheres spheres = default_body_spheres(scene.robot);
    const ComponentSet set = build_components(r, scene.robot, spheres, 0.25, 16);

    const std::string path = temp_path("roundtrip.rgg");
    save_roadmap(path, scene.robot, r, set);
    const RoadmapFile file = load_roadmap(path);

    CHECK(roadmaps_equal(file.roadmap, r));
    CHECK(file.robot.kinematics == scene.robot.kinematics);
    REQUIRE(file.components.count() == set.count());
    CHECK(file.components.epsilon == set.epsilon);
    CHECK(file.components.max_segments == set.max_segments);
    for (int c = 0; c < set.count(); ++c) {
        const EdgeGeometry& a = set.geometry[c];
        const EdgeGeometry& b = file.components.geometry[c];
        REQUIRE(a.over.size() == b.over.size());
        for (size_t i = 0; i < a.over.size(); ++i) {
            CHECK(a.over[i].center == b.over[i].center);
            CHECK(a.over[i].half_extents == b.over[i].half_extents);
            for (int k = 0; k < 3; ++k) CHECK(a.over[i].axes[k] == b.over[i].axes[k]);
        }
        REQUIRE(a.under.size() == b.under.size());
        for (size_t bd = 0; bd < a.under.size(); ++bd) {
            REQUIRE(a.under[bd].size() == b.under[bd].size());
            for (size_t sp = 0; sp < a.under[bd].size(); ++sp) {
                CHECK(a.under[bd][sp].radius == b.under[bd][sp].radius);
                CHECK(a.under[bd][sp].sphere_index == b.under[bd][sp].sphere_index);
                REQUIRE(a.under[bd][sp].points.size() == b.under[bd][sp].points.size());
                for (size_t p = 0; p < a.under[bd][sp].points.size(); ++p) {
                    CHECK(a.under[bd][sp].points[p] == b.under[bd][sp].points[p]);
                }
            }
        }
    }
    // configurations are rebuilt deterministically
    REQUIRE(file.components.cfgs.size() == set.cfgs.size());
    for (size_t i = 0; i < set.cfgs.size(); ++i) CHECK(file.components.cfgs[i] == set.cfgs[i]);
    std::remove(path.c_str());
}

TEST_CASE("save/load: corruption and truncation are distinct, atomic failures") {
    const Scene scene = free_cube_scene();
    const Roadmap r = build_prm(scene, 8, 4, 0.25, 6);
    const ComponentSet set = build_components(r, scene.robot, default_body_spheres(scene.robot), 0.25, 16);
    const std::string path = temp_path("corrupt.rgg");
    save_roadmap(path, scene.robot, r, set);

    std::vector<char> bytes;
    {
        std::ifstream f(path, std::ios::binary);
        bytes.assign(std::istreambuf_iterator<char>(f), {});
    }

    const auto write_bytes = [&](const std::vector<char>& data) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f.write(data.data(), static_cast<std::streamsize>(data.size()));
    };

    // flip one payload byte -> checksum failure
    std::vector<char> flipped = bytes;
    flipped[bytes.size() / 2] ^= 0x40;
    write_bytes(flipped);
    try {
        load_roadmap(path);
        FAIL("corrupted file loaded");
    } catch (const RoadmapIoError& e) {
        CHECK(e.kind() == IoErrorKind::ChecksumMismatch);
    }

    // drop the tail -> truncation (checksum is stored last)
    std::vector<char> cut(bytes.begin(), bytes.end() - 17);
    write_bytes(cut);
    try {
        load_roadmap(path);
        FAIL("truncated file loaded");
    } catch (const RoadmapIoError& e) {
        CHECK((e.kind() == IoErrorKind::Truncated || e.kind() == IoErrorKind::ChecksumMismatch));
    }

    // wrong magic
    std::vector<char> magic = bytes;
    magic[0] = 'X';
    write_bytes(magic);
    try {
        load_roadmap(path);
        FAIL("bad-magic file loaded");
    } catch (const RoadmapIoError& e) {
        CHECK(e.kind() == IoErrorKind::BadMagic);
    }

    // future version: patch the version field and refresh the checksum
    std::vector<char> version = bytes;
    version[8] = 99;
    const std::uint32_t crc = crc32(version.data(), version.size() - 4);
    for (int i = 0; i < 4; ++i) version[version.size() - 4 + i] = static_cast<char>(crc >> (8 * i));
    write_bytes(version);
    try {
        load_roadmap(path);
        FAIL("future-version file loaded");
    } catch (const RoadmapIoError& e) {
        CHECK(e.kind() == IoErrorKind::BadVersion);
    }
    std::remove(path.c_str());
}
