#include "rgg/roadmap_io.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <vector>

namespace rgg {

namespace {

constexpr char kMagic[8] = {'R', 'G', 'G', 'R', 'D', 'M', 'P', '1'};
constexpr std::uint32_t kVersion = 1;

struct Writer {
    std::vector<std::uint8_t> buf;

    void bytes(const void* p, size_t n) {
        const auto* b = static_cast<const std::uint8_t*>(p);
        buf.insert(buf.end(), b, b + n);
    }
    void u8(std::uint8_t v) { buf.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void vec3(const Vec3& v) {
        f64(v.x);
        f64(v.y);
        f64(v.z);
    }
    void transform(const Transform& t) {
        for (double r : t.r) f64(r);
        vec3(t.t);
    }
};

struct Reader {
    const std::uint8_t* p;
    size_t n;
    size_t pos = 0;

    void need(size_t k) const {
        if (pos + k > n) throw RoadmapIoError(IoErrorKind::Truncated, "roadmap file truncated");
    }
    void bytes(void* out, size_t k) {
        need(k);
        std::memcpy(out, p + pos, k);
        pos += k;
    }
    std::uint8_t u8() {
        need(1);
        return p[pos++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    Vec3 vec3() {
        Vec3 v;
        v.x = f64();
        v.y = f64();
        v.z = f64();
        return v;
    }
    Transform transform() {
        Transform t;
        for (double& r : t.r) r = f64();
        t.t = vec3();
        return t;
    }
};

std::uint32_t sanity_count(std::uint32_t v, std::uint32_t limit, const char* what) {
    if (v > limit) throw RoadmapIoError(IoErrorKind::Truncated, std::string("implausible count for ") + what);
    return v;
}

void write_robot(Writer& w, const RobotModel& m) {
    w.u8(static_cast<std::uint8_t>(m.kinematics));
    w.u32(static_cast<std::uint32_t>(m.bodies.size()));
    for (const BoxBody& b : m.bodies) {
        w.vec3(b.half_extents);
        w.transform(b.local);
    }
    w.u32(static_cast<std::uint32_t>(m.joints.size()));
    for (const Joint& j : m.joints) {
        w.vec3(j.axis);
        w.vec3(j.offset);
    }
}

RobotModel read_robot(Reader& r) {
    RobotModel m;
    m.kinematics = static_cast<KinematicsType>(r.u8());
    const std::uint32_t nb = sanity_count(r.u32(), 1u << 16, "bodies");
    for (std::uint32_t i = 0; i < nb; ++i) {
        BoxBody b;
        b.half_extents = r.vec3();
        b.local = r.transform();
        m.bodies.push_back(b);
    }
    const std::uint32_t nj = sanity_count(r.u32(), 1u << 16, "joints");
    for (std::uint32_t i = 0; i < nj; ++i) {
        Joint j;
        j.axis = r.vec3();
        j.offset = r.vec3();
        m.joints.push_back(j);
    }
    return m;
}

} // namespace

std::uint32_t crc32(const void* data, std::size_t size) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t c = 0xFFFFFFFFu;
    const auto* p = static_cast<const std::uint8_t*>(data);
    for (size_t i = 0; i < size; ++i) c = table[(c ^ p[i]) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

void save_roadmap(const std::string& path, const RobotModel& robot, const Roadmap& r, const ComponentSet& set) {
    Writer w;
    w.bytes(kMagic, sizeof(kMagic));
    w.u32(kVersion);
    write_robot(w, robot);

    w.u32(static_cast<std::uint32_t>(set.spheres.per_body.size()));
    for (const auto& body : set.spheres.per_body) {
        w.u32(static_cast<std::uint32_t>(body.size()));
        for (const Sphere& s : body) {
            w.vec3(s.center);
            w.f64(s.radius);
        }
    }

    w.f64(set.epsilon);
    w.u32(static_cast<std::uint32_t>(set.max_segments));

    const std::uint32_t dof = r.nodes.empty() ? robot.dof_count() : static_cast<std::uint32_t>(r.nodes[0].size());
    w.u32(static_cast<std::uint32_t>(r.nodes.size()));
    w.u32(dof);
    for (const Configuration& c : r.nodes) {
        for (double v : c) w.f64(v);
    }
    w.u32(static_cast<std::uint32_t>(r.edges.size()));
    for (const auto& [a, b] : r.edges) {
        w.u32(static_cast<std::uint32_t>(a));
        w.u32(static_cast<std::uint32_t>(b));
    }

    w.u32(static_cast<std::uint32_t>(set.geometry.size()));
    for (size_t i = 0; i < set.geometry.size(); ++i) {
        const EdgeGeometry& g = set.geometry[i];
        w.u32(static_cast<std::uint32_t>(g.over.size()));
        for (const Obb& o : g.over) {
            w.vec3(o.center);
            for (const Vec3& a : o.axes) w.vec3(a);
            w.vec3(o.half_extents);
        }
        for (const auto& body : g.under) {
            w.u32(static_cast<std::uint32_t>(body.size()));
            for (const Spline& s : body) {
                w.f64(s.radius);
                w.u32(static_cast<std::uint32_t>(s.sphere_index));
                w.u32(static_cast<std::uint32_t>(s.points.size()));
                for (const Vec3& p : s.points) w.vec3(p);
            }
        }
    }

    w.u32(crc32(w.buf.data(), w.buf.size()));

    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw RoadmapIoError(IoErrorKind::WriteFailed, "cannot open " + path + " for writing");
    const size_t written = std::fwrite(w.buf.data(), 1, w.buf.size(), f);
    const bool ok = written == w.buf.size() && std::fclose(f) == 0;
    if (!ok) throw RoadmapIoError(IoErrorKind::WriteFailed, "short write to " + path);
}

RoadmapFile load_roadmap(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw RoadmapIoError(IoErrorKind::Truncated, "cannot open " + path);
    std::vector<std::uint8_t> buf;
    std::uint8_t chunk[65536];
    size_t got;
    while ((got = std::fread(chunk, 1, sizeof(chunk), f)) > 0) buf.insert(buf.end(), chunk, chunk + got);
    std::fclose(f);

    if (buf.size() < sizeof(kMagic) + 8) throw RoadmapIoError(IoErrorKind::Truncated, "file too small");
    if (std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0) {
        throw RoadmapIoError(IoErrorKind::BadMagic, "not a roadmap file");
    }
    const std::uint32_t file_crc = static_cast<std::uint32_t>(buf[buf.size() - 4]) |
                                   static_cast<std::uint32_t>(buf[buf.size() - 3]) << 8 |
                                   static_cast<std::uint32_t>(buf[buf.size() - 2]) << 16 |
                                   static_cast<std::uint32_t>(buf[buf.size() - 1]) << 24;
    if (crc32(buf.data(), buf.size() - 4) != file_crc) {
        throw RoadmapIoError(IoErrorKind::ChecksumMismatch, "checksum mismatch");
    }

    Reader rd{buf.data(), buf.size() - 4};
    rd.pos = sizeof(kMagic);
    const std::uint32_t version = rd.u32();
    if (version != kVersion) throw RoadmapIoError(IoErrorKind::BadVersion, "unsupported roadmap file version");

    RoadmapFile out;
    out.robot = read_robot(rd);

    ComponentSet& set = out.components;
    const std::uint32_t nb = sanity_count(rd.u32(), 1u << 16, "sphere bodies");
    set.spheres.per_body.resize(nb);
    for (std::uint32_t b = 0; b < nb; ++b) {
        const std::uint32_t ns = sanity_count(rd.u32(), 1u << 20, "spheres");
        for (std::uint32_t s = 0; s < ns; ++s) {
            Sphere sp;
            sp.center = rd.vec3();
            sp.radius = rd.f64();
            set.spheres.per_body[b].push_back(sp);
        }
    }
    set.epsilon = rd.f64();
    set.max_segments = static_cast<int>(rd.u32());

    Roadmap& r = out.roadmap;
    const std::uint32_t n_nodes = sanity_count(rd.u32(), 1u << 24, "nodes");
    const std::uint32_t dof = sanity_count(rd.u32(), 1u << 10, "dof");
    for (std::uint32_t i = 0; i < n_nodes; ++i) {
        Configuration c(dof);
        for (std::uint32_t k = 0; k < dof; ++k) c[k] = rd.f64();
        r.nodes.push_back(std::move(c));
    }
    const std::uint32_t n_edges = sanity_count(rd.u32(), 1u << 26, "edges");
    for (std::uint32_t i = 0; i < n_edges; ++i) {
        const auto a = static_cast<NodeId>(rd.u32());
        const auto b = static_cast<NodeId>(rd.u32());
        r.edges.push_back({a, b});
    }
    r.rebuild_adjacency();

    set.n_nodes = static_cast<int>(n_nodes);
    set.n_edges = static_cast<int>(n_edges);
    const std::uint32_t n_geom = sanity_count(rd.u32(), 1u << 26, "geometry");
    if (n_geom != n_nodes + n_edges) throw RoadmapIoError(IoErrorKind::Truncated, "geometry count mismatch");
    for (std::uint32_t i = 0; i < n_geom; ++i) {
        EdgeGeometry g;
        const std::uint32_t n_over = sanity_count(rd.u32(), 1u << 16, "over boxes");
        for (std::uint32_t b = 0; b < n_over; ++b) {
            Obb o;
            o.center = rd.vec3();
            for (Vec3& a : o.axes) a = rd.vec3();
            o.half_extents = rd.vec3();
            g.over.push_back(o);
        }
        g.under.resize(n_over);
        for (std::uint32_t b = 0; b < n_over; ++b) {
            const std::uint32_t n_spl = sanity_count(rd.u32(), 1u << 20, "splines");
            for (std::uint32_t s = 0; s < n_spl; ++s) {
                Spline sp;
                sp.radius = rd.f64();
                sp.sphere_index = static_cast<int>(rd.u32());
                const std::uint32_t n_pts = sanity_count(rd.u32(), 1u << 24, "spline points");
                sp.points.reserve(n_pts);
                for (std::uint32_t p = 0; p < n_pts; ++p) sp.points.push_back(rd.vec3());
                g.under[b].push_back(std::move(sp));
            }
        }
        set.geometry.push_back(std::move(g));
    }

    // Discretizations are not stored; rebuild them the same way they were
    // built (deterministic given nodes, edges, epsilon).
    set.cfgs.reserve(n_geom);
    for (const Configuration& c : r.nodes) set.cfgs.push_back(discretize_edge(c, c, set.epsilon));
    for (const auto& [a, b] : r.edges) set.cfgs.push_back(discretize_edge(r.nodes[a], r.nodes[b], set.epsilon));
    return out;
}

} // namespace rgg
