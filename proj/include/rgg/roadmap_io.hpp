#pragma once

#include <stdexcept>
#include <string>

#include "rgg/roadmap.hpp"

namespace rgg {

enum class IoErrorKind {
    BadMagic,
    BadVersion,
    Truncated,
    ChecksumMismatch,
    WriteFailed,
};

class RoadmapIoError : public std::runtime_error {
public:
    RoadmapIoError(IoErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    IoErrorKind kind() const { return kind_; }

private:
    IoErrorKind kind_;
};

struct RoadmapFile {
    RobotModel robot;
    Roadmap roadmap;
    ComponentSet components;
};

/// Little-endian binary sections with a whole-file CRC32. Round trips are
/// bitwise lossless.
void save_roadmap(const std::string& path, const RobotModel& robot, const Roadmap& r, const ComponentSet& set);

/// Loads and fully verifies before constructing anything; a corrupt file
/// never yields a partial result.
RoadmapFile load_roadmap(const std::string& path);

std::uint32_t crc32(const void* data, std::size_t size);

} // namespace rgg
