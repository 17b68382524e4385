#include "rgg/scenario.hpp"

#include <fstream>
#include <sstream>

#include "rgg/rng.hpp"

namespace rgg {

double Scenario::effective_epsilon() const {
    if (epsilon > 0.0) return epsilon;
    return 0.1 * robot.min_body_half_extent();
}

std::vector<ObstacleModel> Scenario::make_obstacles() const {
    std::vector<ObstacleModel> out;
    out.reserve(obstacles.size());
    for (const ObstacleSpec& spec : obstacles) {
        const int count = spec.spheres > 0 ? spec.spheres : default_sphere_count(spec.half_extents);
        out.push_back(make_box_obstacle(spec.half_extents, count));
    }
    return out;
}

std::vector<std::pair<ObstacleId, Transform>> Scenario::make_moves() const {
    Rng rng(move_seed);
    std::vector<std::pair<ObstacleId, Transform>> moves;
    moves.reserve(static_cast<size_t>(iterations) * obstacles.size());
    for (int it = 0; it < iterations; ++it) {
        for (ObstacleId o = 0; o < static_cast<ObstacleId>(obstacles.size()); ++o) {
            const Vec3 he = obstacles[o].half_extents;
            Vec3 pos;
            pos.x = rng.uniform(env.min.x + he.x, env.max.x - he.x);
            pos.y = rng.uniform(env.min.y + he.y, env.max.y - he.y);
            pos.z = rng.uniform(env.min.z + he.z, env.max.z - he.z);
            moves.push_back({o, Transform::translation(pos)});
        }
    }
    return moves;
}

namespace {

struct LineParser {
    const std::string& origin;
    int line_no;
    std::string key;
    std::vector<std::string> values;

    [[noreturn]] void fail(const std::string& message) const {
        std::ostringstream os;
        os << origin << ":" << line_no << ": " << message;
        throw ScenarioParseError(os.str());
    }

    double number(size_t i, const char* what) const {
        if (i >= values.size()) fail(std::string("missing value for '") + key + "' (" + what + ")");
        try {
            size_t used = 0;
            const double v = std::stod(values[i], &used);
            if (used != values[i].size()) throw std::invalid_argument("trailing junk");
            return v;
        } catch (const std::exception&) {
            fail("'" + values[i] + "' is not a number (" + what + ")");
        }
    }

    long integer(size_t i, const char* what) const {
        const double v = number(i, what);
        const long n = static_cast<long>(v);
        if (static_cast<double>(n) != v) fail(std::string("expected an integer for ") + what);
        return n;
    }

    void expect_count(size_t n) const {
        if (values.size() != n) {
            std::ostringstream os;
            os << "'" << key << "' takes " << n << " value(s), got " << values.size();
            fail(os.str());
        }
    }
};

} // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
    Scenario s;
    bool robot_set = false;
    bool building_chain = false;

    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const size_t hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        const size_t eq = line.find('=');
        // blank / comment-only lines
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty()) continue;
        LineParser p{origin, line_no, "", {}};
        if (eq == std::string::npos) p.fail("expected 'key = value'");
        {
            std::istringstream ks(line.substr(0, eq));
            ks >> p.key;
            std::string extra;
            if (p.key.empty() || (ks >> extra)) p.fail("expected a single key before '='");
        }
        {
            std::istringstream vs(line.substr(eq + 1));
            std::string tok;
            while (vs >> tok) p.values.push_back(tok);
        }

        if (p.key == "name") {
            p.expect_count(1);
            s.name = p.values[0];
        } else if (p.key == "env") {
            p.expect_count(6);
            s.env.min = {p.number(0, "min x"), p.number(1, "min y"), p.number(2, "min z")};
            s.env.max = {p.number(3, "max x"), p.number(4, "max y"), p.number(5, "max z")};
            if (!(s.env.min.x < s.env.max.x && s.env.min.y < s.env.max.y && s.env.min.z < s.env.max.z)) {
                p.fail("environment min must be below max");
            }
        } else if (p.key == "robot") {
            if (p.values.empty()) p.fail("robot needs a type");
            if (p.values[0] == "free_flying") {
                p.expect_count(4);
                s.robot = make_free_flying_box(
                    {p.number(1, "half extent x"), p.number(2, "half extent y"), p.number(3, "half extent z")});
                robot_set = true;
                building_chain = false;
            } else if (p.values[0] == "serial_chain") {
                p.expect_count(1);
                s.robot = RobotModel{};
                s.robot.kinematics = KinematicsType::SerialChain;
                robot_set = true;
                building_chain = true;
            } else {
                p.fail("robot type must be free_flying or serial_chain");
            }
        } else if (p.key == "link") {
            if (!building_chain) p.fail("'link' lines require 'robot = serial_chain' first");
            p.expect_count(12);
            Joint j;
            j.axis = {p.number(0, "axis x"), p.number(1, "axis y"), p.number(2, "axis z")};
            j.offset = {p.number(3, "offset x"), p.number(4, "offset y"), p.number(5, "offset z")};
            BoxBody b;
            b.half_extents = {p.number(6, "half extent x"), p.number(7, "half extent y"), p.number(8, "half extent z")};
            b.local = Transform::translation(
                {p.number(9, "local x"), p.number(10, "local y"), p.number(11, "local z")});
            s.robot.joints.push_back(j);
            s.robot.bodies.push_back(b);
        } else if (p.key == "nodes") {
            p.expect_count(1);
            s.nodes = static_cast<int>(p.integer(0, "nodes"));
        } else if (p.key == "k_neighbors") {
            p.expect_count(1);
            s.k_neighbors = static_cast<int>(p.integer(0, "k_neighbors"));
        } else if (p.key == "epsilon") {
            p.expect_count(1);
            s.epsilon = p.number(0, "epsilon");
            if (!(s.epsilon > 0)) p.fail("epsilon must be positive");
        } else if (p.key == "roadmap_seed") {
            p.expect_count(1);
            s.roadmap_seed = static_cast<std::uint64_t>(p.integer(0, "roadmap_seed"));
            s.roadmap_seed_set = true;
        } else if (p.key == "move_seed") {
            p.expect_count(1);
            s.move_seed = static_cast<std::uint64_t>(p.integer(0, "move_seed"));
            s.move_seed_set = true;
        } else if (p.key == "obstacle") {
            if (p.values.size() != 3 && p.values.size() != 4) p.fail("'obstacle' takes hx hy hz [spheres]");
            ObstacleSpec spec;
            spec.half_extents = {p.number(0, "half extent x"), p.number(1, "half extent y"),
                                 p.number(2, "half extent z")};
            if (!(spec.half_extents.x > 0 && spec.half_extents.y > 0 && spec.half_extents.z > 0)) {
                p.fail("obstacle half extents must be positive");
            }
            if (p.values.size() == 4) spec.spheres = static_cast<int>(p.integer(3, "spheres"));
            s.obstacles.push_back(spec);
        } else if (p.key == "iterations") {
            p.expect_count(1);
            s.iterations = static_cast<int>(p.integer(0, "iterations"));
        } else if (p.key == "engine") {
            p.expect_count(1);
            if (p.values[0] == "sequential")
                s.engine = EngineSelect::Sequential;
            else if (p.values[0] == "batch")
                s.engine = EngineSelect::Batch;
            else if (p.values[0] == "both")
                s.engine = EngineSelect::Both;
            else
                p.fail("engine must be sequential, batch, or both");
        } else if (p.key == "mode") {
            p.expect_count(1);
            if (p.values[0] == "lazy")
                s.mode = UpdateMode::Lazy;
            else if (p.values[0] == "eager")
                s.mode = UpdateMode::Eager;
            else
                p.fail("mode must be lazy or eager");
        } else if (p.key == "max_segments") {
            p.expect_count(1);
            s.max_segments = static_cast<int>(p.integer(0, "max_segments"));
            if (s.max_segments < 1) p.fail("max_segments must be >= 1");
        } else if (p.key == "threads") {
            p.expect_count(1);
            s.threads = static_cast<int>(p.integer(0, "threads"));
        } else if (p.key == "cell_capacity") {
            p.expect_count(1);
            s.cell_capacity = static_cast<int>(p.integer(0, "cell_capacity"));
            if (s.cell_capacity < 1) p.fail("cell_capacity must be >= 1");
        } else {
            p.fail("unknown key '" + p.key + "'");
        }
    }

    LineParser tail{origin, line_no + 1, "", {}};
    if (!robot_set) tail.fail("missing 'robot'");
    if (building_chain && s.robot.bodies.empty()) tail.fail("serial_chain robot needs at least one 'link'");
    if (s.nodes < 1) tail.fail("missing or invalid 'nodes'");
    if (!s.roadmap_seed_set) tail.fail("missing 'roadmap_seed' (seeds are mandatory)");
    if (!s.move_seed_set) tail.fail("missing 'move_seed' (seeds are mandatory)");
    s.robot.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ScenarioParseError(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << f.rdbuf();
    Scenario s = parse_scenario_text(buf.str(), path);
    if (s.name.empty()) s.name = path;
    return s;
}

} // namespace rgg
