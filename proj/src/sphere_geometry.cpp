#include "vrtile/sphere_geometry.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "vrtile/errors.hpp"

namespace vrtile {

namespace {

constexpr std::array<std::string_view, 6> kNames = {"TOP", "BOTTOM", "M0", "M1", "M2", "M3"};
constexpr std::array<std::string_view, 6> kKeys = {"top", "bottom", "m0", "m1", "m2", "m3"};

}  // namespace

std::string_view segment_name(SegmentId s) { return kNames[segment_index(s)]; }
std::string_view segment_key(SegmentId s) { return kKeys[segment_index(s)]; }

SegmentId segment_from_key(std::string_view key) {
    std::string lower(key);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (SegmentId s : kAllSegments) {
        if (lower == kKeys[segment_index(s)]) return s;
    }
    throw ParameterError("unknown segment name: " + std::string(key));
}

bool AngularRegion::contains(double yaw_deg, double pitch_deg) const {
    if (pitch_min_open ? pitch_deg <= pitch_min_deg : pitch_deg < pitch_min_deg) return false;
    if (pitch_max_open ? pitch_deg >= pitch_max_deg : pitch_deg > pitch_max_deg) return false;
    if (yaw_span_deg() >= 360.0) return true;
    return yaw_arc().contains(yaw_deg);
}

HexafacePartition partition_sphere(double h_fov_deg, double v_fov_deg) {
    if (!(h_fov_deg > 0.0 && h_fov_deg < 180.0))
        throw ParameterError("h_fov_deg must be in (0, 180), got " + std::to_string(h_fov_deg));
    if (!(v_fov_deg > 0.0 && v_fov_deg < 180.0))
        throw ParameterError("v_fov_deg must be in (0, 180), got " + std::to_string(v_fov_deg));

    HexafacePartition p;
    p.h_fov_deg = h_fov_deg;
    p.v_fov_deg = v_fov_deg;
    p.beta_deg = v_fov_deg / 2.0;
    const double beta = p.beta_deg;

    p.regions[segment_index(SegmentId::Top)] =
        {-180.0, 180.0, beta, 90.0, /*min_open=*/true, /*max_open=*/false};
    p.regions[segment_index(SegmentId::Bottom)] =
        {-180.0, 180.0, -90.0, -beta, /*min_open=*/false, /*max_open=*/true};

    // Four middle segments of fixed 90-degree yaw width, M0 centered at yaw 0.
    for (int i = 0; i < 4; ++i) {
        double center = 90.0 * i;
        p.regions[segment_index(SegmentId::M0) + i] =
            {center - 45.0, center + 45.0, -beta, beta, false, false};
    }
    return p;
}

SegmentId classify_direction(const HexafacePartition& p, double yaw_deg, double pitch_deg) {
    if (!(pitch_deg >= -90.0 && pitch_deg <= 90.0))
        throw ParameterError("pitch_deg must be in [-90, 90], got " + std::to_string(pitch_deg));

    if (pitch_deg > p.beta_deg) return SegmentId::Top;
    if (pitch_deg < -p.beta_deg) return SegmentId::Bottom;

    // Middle body: yaw quadrant with half-open boundaries advancing eastward.
    double t = std::fmod(normalize_yaw(yaw_deg) + 45.0, 360.0);
    if (t < 0.0) t += 360.0;
    int quadrant = static_cast<int>(t / 90.0);
    if (quadrant > 3) quadrant = 3;  // t == 360 cannot occur, guard fp edge
    return static_cast<SegmentId>(segment_index(SegmentId::M0) + quadrant);
}

double solid_angle(const HexafacePartition& p, SegmentId s) {
    const AngularRegion& r = p.region(s);
    double span = std::min(r.yaw_span_deg(), 360.0);
    return deg_to_rad(span) *
           (std::sin(deg_to_rad(r.pitch_max_deg)) - std::sin(deg_to_rad(r.pitch_min_deg)));
}

Vec3 direction_from_angles(double yaw_deg, double pitch_deg) {
    double psi = deg_to_rad(yaw_deg);
    double phi = deg_to_rad(pitch_deg);
    return {-std::cos(phi) * std::sin(psi), std::sin(phi), -std::cos(phi) * std::cos(psi)};
}

namespace {

// Quad between grid rows j and j+1, columns i and i+1, split so both
// triangles wind counter-clockwise from the sphere center. With yaw
// increasing leftward on screen and pitch increasing upward, the CCW
// order of a quad is (i,j) -> (i,j+1) -> (i+1,j+1) -> (i+1,j).
void push_quad(std::vector<Triangle>& out, int a, int b, int c, int d) {
    // a=(i,j), b=(i+1,j), c=(i+1,j+1), d=(i,j+1)
    out.push_back({a, d, c});
    out.push_back({a, c, b});
}

}  // namespace

SegmentMesh tessellate_segment(const HexafacePartition& p, SegmentId s, int slices, int stacks) {
    if (slices < 2) throw ParameterError("slices must be >= 2, got " + std::to_string(slices));
    if (stacks < 1) throw ParameterError("stacks must be >= 1, got " + std::to_string(stacks));

    const AngularRegion& r = p.region(s);
    SegmentMesh mesh;
    mesh.segment = s;
    mesh.slices = slices;
    mesh.stacks = stacks;

    const double yaw0 = r.yaw_min_deg;
    const double yaw_step = r.yaw_span_deg() / slices;
    const double pitch0 = r.pitch_min_deg;
    const double pitch_step = r.pitch_span_deg() / stacks;

    auto uv_of = [&](double yaw, double pitch) -> TexCoord {
        return {(yaw - r.yaw_min_deg) / r.yaw_span_deg(),
                (pitch - r.pitch_min_deg) / r.pitch_span_deg()};
    };

    const bool top_pole = (s == SegmentId::Top);       // pole at the last row
    const bool bottom_pole = (s == SegmentId::Bottom);  // pole at row 0

    // Ring rows, skipping whichever row collapses into a pole vertex.
    const int row_begin = bottom_pole ? 1 : 0;
    const int row_end = top_pole ? stacks - 1 : stacks;
    const int ring_rows = row_end - row_begin + 1;

    auto ring_vertex = [&](int i, int j) { return (j - row_begin) * (slices + 1) + i; };

    for (int j = row_begin; j <= row_end; ++j) {
        double pitch = pitch0 + pitch_step * j;
        for (int i = 0; i <= slices; ++i) {
            double yaw = yaw0 + yaw_step * i;
            mesh.vertices.push_back(direction_from_angles(yaw, pitch));
            mesh.uvs.push_back(uv_of(yaw, pitch));
        }
    }

    int pole = -1;
    if (top_pole || bottom_pole) {
        pole = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back({0.0, top_pole ? 1.0 : -1.0, 0.0});
        mesh.uvs.push_back({0.5, top_pole ? 1.0 : 0.0});
    }

    for (int j = 0; j + 1 < ring_rows; ++j) {
        int row = row_begin + j;
        for (int i = 0; i < slices; ++i) {
            push_quad(mesh.triangles, ring_vertex(i, row), ring_vertex(i + 1, row),
                      ring_vertex(i + 1, row + 1), ring_vertex(i, row + 1));
        }
    }
    if (top_pole) {
        for (int i = 0; i < slices; ++i)
            mesh.triangles.push_back({ring_vertex(i, row_end), pole, ring_vertex(i + 1, row_end)});
    } else if (bottom_pole) {
        for (int i = 0; i < slices; ++i)
            mesh.triangles.push_back({pole, ring_vertex(i, row_begin), ring_vertex(i + 1, row_begin)});
    }
    return mesh;
}

std::string export_obj(const SegmentMesh& mesh) {
    std::string out;
    out.reserve(64 * mesh.vertices.size());
    char line[96];

    out += "o ";
    out += segment_key(mesh.segment);
    out += '\n';
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(line, sizeof line, "v %.6f %.6f %.6f\n", v.x, v.y, v.z);
        out += line;
    }
    for (const TexCoord& t : mesh.uvs) {
        std::snprintf(line, sizeof line, "vt %.6f %.6f\n", t.u, t.v);
        out += line;
    }
    for (const Triangle& t : mesh.triangles) {
        std::snprintf(line, sizeof line, "f %d/%d %d/%d %d/%d\n", t.a + 1, t.a + 1, t.b + 1,
                      t.b + 1, t.c + 1, t.c + 1);
        out += line;
    }
    return out;
}

}  // namespace vrtile
