#pragma once

#include <cstdint>
#include <vector>

#include "rgg/geometry.hpp"

namespace rgg {

/// One box-shaped robot body. `local` maps the box frame to the body's
/// attachment frame (the world frame for free-flying robots, the joint
/// frame for serial chains).
struct BoxBody {
    Vec3 half_extents;
    Transform local;
};

/// Revolute joint of a serial chain: rotation about `axis` after a fixed
/// `offset` translation from the parent joint frame.
struct Joint {
    Vec3 axis{0, 0, 1};
    Vec3 offset;
};

enum class KinematicsType : std::uint8_t {
    FreeFlying,  // 3 translation + 3 rotation DOFs (fixed-axis XYZ Euler)
    SerialChain, // one revolute joint per body
};

struct RobotModel {
    KinematicsType kinematics = KinematicsType::FreeFlying;
    std::vector<BoxBody> bodies;
    std::vector<Joint> joints; // empty for FreeFlying, size bodies.size() for chains

    int dof_count() const {
        return kinematics == KinematicsType::FreeFlying ? 6 : static_cast<int>(joints.size());
    }

    /// Smallest half extent over all bodies; the default resolution is a
    /// tenth of this.
    double min_body_half_extent() const;

    void validate() const; // throws std::invalid_argument on malformed models
};

/// DOF vector: lengths for translations, radians for rotations/joints.
using Configuration = std::vector<double>;

/// N = max(2, ceil(|b - a| / eps) + 1) linearly interpolated configurations,
/// first exactly a, last exactly b. Euclidean norm over DOFs.
std::vector<Configuration> discretize_edge(const Configuration& a, const Configuration& b, double eps);

/// World pose of every body box frame at configuration c.
std::vector<Transform> forward_kinematics(const RobotModel& m, const Configuration& c);

RobotModel make_free_flying_box(const Vec3& half_extents);

} // namespace rgg
