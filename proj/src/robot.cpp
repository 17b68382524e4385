#include "rgg/robot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rgg {

double RobotModel::min_body_half_extent() const {
    double m = std::numeric_limits<double>::infinity();
    for (const BoxBody& b : bodies) {
        m = std::min({m, b.half_extents.x, b.half_extents.y, b.half_extents.z});
    }
    return m;
}

void RobotModel::validate() const {
    if (bodies.empty()) throw std::invalid_argument("robot needs at least one body");
    for (const BoxBody& b : bodies) {
        if (!(b.half_extents.x > 0 && b.half_extents.y > 0 && b.half_extents.z > 0)) {
            throw std::invalid_argument("body half extents must be positive");
        }
        if (!b.local.t.finite() || !b.local.rotation_valid(1e-9)) {
            throw std::invalid_argument("body local frame invalid");
        }
    }
    if (kinematics == KinematicsType::SerialChain) {
        if (joints.size() != bodies.size()) {
            throw std::invalid_argument("serial chain needs one joint per body");
        }
        for (const Joint& j : joints) {
            if (!j.offset.finite() || !(norm(j.axis) > 0)) {
                throw std::invalid_argument("joint axis/offset invalid");
            }
        }
    }
}

std::vector<Configuration> discretize_edge(const Configuration& a, const Configuration& b, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("resolution must be positive");
    if (a.size() != b.size()) throw std::invalid_argument("configuration DOF mismatch");
    double len2 = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        len2 += d * d;
    }
    const double len = std::sqrt(len2);
    const int n = std::max(2, static_cast<int>(std::ceil(len / eps)) + 1);
    std::vector<Configuration> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            out.push_back(a);
        } else if (i == n - 1) {
            out.push_back(b);
        } else {
            const double t = static_cast<double>(i) / static_cast<double>(n - 1);
            Configuration c(a.size());
            for (size_t k = 0; k < a.size(); ++k) c[k] = a[k] + (b[k] - a[k]) * t;
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<Transform> forward_kinematics(const RobotModel& m, const Configuration& c) {
    if (static_cast<int>(c.size()) != m.dof_count()) throw std::invalid_argument("configuration DOF mismatch");
    std::vector<Transform> out;
    out.reserve(m.bodies.size());
    if (m.kinematics == KinematicsType::FreeFlying) {
        Transform world = Transform::from_euler_xyz(c[3], c[4], c[5]);
        world.t = {c[0], c[1], c[2]};
        for (const BoxBody& b : m.bodies) out.push_back(world * b.local);
    } else {
        Transform acc = Transform::identity();
        for (size_t j = 0; j < m.joints.size(); ++j) {
            const Joint& joint = m.joints[j];
            const Transform jt = Transform::translation(joint.offset) * Transform::rotation_axis_angle(joint.axis, c[j]);
            acc = acc * jt;
            out.push_back(acc * m.bodies[j].local);
        }
    }
    return out;
}

RobotModel make_free_flying_box(const Vec3& half_extents) {
    RobotModel m;
    m.kinematics = KinematicsType::FreeFlying;
    m.bodies.push_back({half_extents, Transform::identity()});
    m.validate();
    return m;
}

} // namespace rgg
