#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "vrtile/sphere_geometry.hpp"

namespace vrtile {

// Unit quaternion (w, x, y, z). Axis convention matches the rest of the
// project: right-handed, Y up, forward -Z.
struct Quaternion {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    Quaternion conjugate() const { return {w, -x, -y, -z}; }
    Quaternion operator*(const Quaternion& o) const;
    Vec3 rotate(const Vec3& v) const;
};

// One timestamped head orientation sample.
struct Pose {
    std::int64_t t_ms = 0;
    double yaw_deg = 0.0;
    double pitch_deg = 0.0;
    double roll_deg = 0.0;

    bool operator==(const Pose&) const = default;
};

// Per-face viewport overlap for one pose. Fractions are normalized by the
// viewport area (h_fov times the pitch extent left after clamping to the
// poles), so they sum to at most 1. The face under the gaze direction is
// always part of the visible set, whatever its fraction.
struct Visibility {
    Pose pose;
    double min_overlap = 0.0;
    SegmentId gaze = SegmentId::M0;
    std::array<double, 6> fractions{};

    double fraction(SegmentId s) const { return fractions[segment_index(s)]; }
    bool is_visible(SegmentId s) const { return s == gaze || fraction(s) > min_overlap; }
    std::vector<SegmentId> visible_set() const;
};

// Intrinsic yaw (+Y), then pitch (+X), then roll (+Z). Unit by construction.
Quaternion euler_to_quaternion(double yaw_deg, double pitch_deg, double roll_deg);

// Gaze direction: the forward axis (0,0,-1) rotated by q.
// Throws ParameterError if |q| deviates from 1 by more than 1e-6.
Vec3 direction_vector(const Quaternion& q);

// (yaw_deg, pitch_deg) of a unit direction; inverse of the euler/direction
// pipeline for roll = 0 and |pitch| < 90.
// Throws ParameterError if |d| deviates from 1 by more than 1e-6.
std::pair<double, double> direction_to_angles(const Vec3& d);

// Viewport model: the angle-space rectangle yaw in [psi +/- h_fov/2]
// (wrap-aware) by pitch in [phi +/- v_fov/2] clamped to [-90, 90]. Roll is
// carried in the pose but does not change the rectangle.
Visibility visible_segments(const HexafacePartition& p, const Pose& pose, double min_overlap);

}  // namespace vrtile
