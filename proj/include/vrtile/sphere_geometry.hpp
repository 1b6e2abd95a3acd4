#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "vrtile/angles.hpp"

namespace vrtile {

// The six faces of the partition: two polar caps and four middle segments.
// The integer encoding is stable and shared by SRD spatial_set_id values,
// tile file names and report columns.
enum class SegmentId : int { Top = 0, Bottom = 1, M0 = 2, M1 = 3, M2 = 4, M3 = 5 };

inline constexpr std::array<SegmentId, 6> kAllSegments = {
    SegmentId::Top, SegmentId::Bottom, SegmentId::M0,
    SegmentId::M1,  SegmentId::M2,     SegmentId::M3,
};

constexpr int segment_index(SegmentId s) { return static_cast<int>(s); }

std::string_view segment_name(SegmentId s);  // "TOP", "BOTTOM", "M0".."M3"
std::string_view segment_key(SegmentId s);   // "top", "bottom", "m0".."m3"
SegmentId segment_from_key(std::string_view key);  // accepts either spelling

// One face's angular extent. Yaw bounds are half-open [min, max) and may wrap
// past +180; pitch bounds carry explicit openness so caps and middle body
// partition the sphere without overlap.
struct AngularRegion {
    double yaw_min_deg = 0.0;
    double yaw_max_deg = 0.0;
    double pitch_min_deg = 0.0;
    double pitch_max_deg = 0.0;
    bool pitch_min_open = false;
    bool pitch_max_open = false;

    double yaw_span_deg() const { return yaw_max_deg - yaw_min_deg; }
    double pitch_span_deg() const { return pitch_max_deg - pitch_min_deg; }
    YawArc yaw_arc() const { return YawArc::from_bounds(yaw_min_deg, yaw_max_deg); }

    bool contains(double yaw_deg, double pitch_deg) const;
};

struct HexafacePartition {
    double h_fov_deg = 0.0;
    double v_fov_deg = 0.0;
    double beta_deg = 0.0;  // = v_fov_deg / 2; middle body spans [-beta, beta]
    std::array<AngularRegion, 6> regions{};

    const AngularRegion& region(SegmentId s) const { return regions[segment_index(s)]; }
};

// Splits the viewing sphere into the six faces: caps above/below pitch
// +/-beta and four 90-degree middle segments with M0 centered at yaw 0.
// Throws ParameterError unless both FoVs are in (0, 180).
HexafacePartition partition_sphere(double h_fov_deg, double v_fov_deg);

// Total and unique under the boundary convention: middle body closed at
// pitch +/-beta, caps open there; yaw intervals half-open eastward.
// Throws ParameterError if pitch is outside [-90, 90].
SegmentId classify_direction(const HexafacePartition& p, double yaw_deg, double pitch_deg);

// Analytic region area: yaw span (radians) times (sin(pitch_max) - sin(pitch_min)).
double solid_angle(const HexafacePartition& p, SegmentId s);

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// Unit direction for (yaw, pitch) under the project-wide convention:
// right-handed, Y up, forward -Z, yaw about +Y, pitch about +X.
Vec3 direction_from_angles(double yaw_deg, double pitch_deg);

struct TexCoord {
    double u = 0.0, v = 0.0;
};

struct Triangle {
    int a = 0, b = 0, c = 0;
};

// Triangle mesh of one face on the unit sphere. UVs map the face's own
// (yaw, pitch) extent linearly onto [0,1]^2; triangles wind counter-clockwise
// as seen from the sphere center, where the camera sits.
struct SegmentMesh {
    SegmentId segment = SegmentId::Top;
    int slices = 0;
    int stacks = 0;
    std::vector<Vec3> vertices;
    std::vector<TexCoord> uvs;  // parallel to vertices
    std::vector<Triangle> triangles;
};

// Samples the face on a (slices+1) x (stacks+1) angular grid; cap meshes
// collapse the pole ring to a single vertex. Throws ParameterError for
// slices < 2 or stacks < 1.
SegmentMesh tessellate_segment(const HexafacePartition& p, SegmentId s, int slices, int stacks);

// Wavefront OBJ text: v/vt/f records, 1-based indices, 6-decimal fixed floats.
std::string export_obj(const SegmentMesh& mesh);

}  // namespace vrtile
