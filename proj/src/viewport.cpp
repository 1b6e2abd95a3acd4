#include "vrtile/viewport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vrtile/errors.hpp"

namespace vrtile {

Quaternion Quaternion::operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
}

Vec3 Quaternion::rotate(const Vec3& v) const {
    Quaternion r = *this * Quaternion{0.0, v.x, v.y, v.z} * conjugate();
    return {r.x, r.y, r.z};
}

Quaternion euler_to_quaternion(double yaw_deg, double pitch_deg, double roll_deg) {
    double hy = deg_to_rad(yaw_deg) / 2.0;
    double hp = deg_to_rad(pitch_deg) / 2.0;
    double hr = deg_to_rad(roll_deg) / 2.0;
    Quaternion qy{std::cos(hy), 0.0, std::sin(hy), 0.0};
    Quaternion qx{std::cos(hp), std::sin(hp), 0.0, 0.0};
    Quaternion qz{std::cos(hr), 0.0, 0.0, std::sin(hr)};
    return qy * qx * qz;
}

Vec3 direction_vector(const Quaternion& q) {
    if (std::abs(q.norm() - 1.0) > 1e-6)
        throw ParameterError("quaternion is not unit, |q| = " + std::to_string(q.norm()));
    return q.rotate({0.0, 0.0, -1.0});
}

std::pair<double, double> direction_to_angles(const Vec3& d) {
    if (std::abs(d.norm() - 1.0) > 1e-6)
        throw ParameterError("direction is not unit, |d| = " + std::to_string(d.norm()));
    double pitch = rad_to_deg(std::asin(std::clamp(d.y, -1.0, 1.0)));
    double yaw = rad_to_deg(std::atan2(-d.x, -d.z));
    return {yaw, pitch};
}

std::vector<SegmentId> Visibility::visible_set() const {
    std::vector<SegmentId> out;
    for (SegmentId s : kAllSegments)
        if (is_visible(s)) out.push_back(s);
    return out;
}

Visibility visible_segments(const HexafacePartition& p, const Pose& pose, double min_overlap) {
    if (!(pose.pitch_deg >= -90.0 && pose.pitch_deg <= 90.0))
        throw ParameterError("pose pitch_deg must be in [-90, 90], got " +
                             std::to_string(pose.pitch_deg));
    if (!(min_overlap >= 0.0 && min_overlap < 1.0))
        throw ParameterError("min_overlap must be in [0, 1), got " + std::to_string(min_overlap));

    Visibility vis;
    vis.pose = pose;
    vis.min_overlap = min_overlap;
    vis.gaze = classify_direction(p, pose.yaw_deg, pose.pitch_deg);

    const YawArc view_yaw =
        YawArc::from_bounds(pose.yaw_deg - p.h_fov_deg / 2.0, pose.yaw_deg + p.h_fov_deg / 2.0);
    const double pitch_lo = std::max(pose.pitch_deg - p.v_fov_deg / 2.0, -90.0);
    const double pitch_hi = std::min(pose.pitch_deg + p.v_fov_deg / 2.0, 90.0);
    const double v_extent = pitch_hi - pitch_lo;  // clamped viewport pitch extent

    for (SegmentId s : kAllSegments) {
        const AngularRegion& r = p.region(s);
        double pitch_overlap =
            std::min(pitch_hi, r.pitch_max_deg) - std::max(pitch_lo, r.pitch_min_deg);
        if (pitch_overlap <= 0.0 || v_extent <= 0.0) continue;
        // Caps cover every yaw, so their yaw overlap is the whole viewport width.
        double yaw_overlap = r.yaw_span_deg() >= 360.0 ? view_yaw.span_deg
                                                       : view_yaw.overlap(r.yaw_arc());
        vis.fractions[segment_index(s)] =
            (yaw_overlap * pitch_overlap) / (p.h_fov_deg * v_extent);
    }
    return vis;
}

}  // namespace vrtile
