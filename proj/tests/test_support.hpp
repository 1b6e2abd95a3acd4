#pragma once

// Shared helpers for the test suites: a platform-independent RNG, random
// generators for directions/poses/models, and a minimal OBJ reader used to
// round-trip mesh exports. Everything here is independent of the library
// code paths it is used to check.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "vrtile/manifest.hpp"
#include "vrtile/sphere_geometry.hpp"
#include "vrtile/tiling.hpp"
#include "vrtile/viewport.hpp"

namespace testsupport {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// Uniform on the sphere: yaw uniform, sin(pitch) uniform.
struct Direction {
    double yaw_deg;
    double pitch_deg;
};

inline Direction random_direction(SplitMix64& rng) {
    double yaw = rng.uniform(-180.0, 180.0);
    double pitch = vrtile::rad_to_deg(std::asin(rng.uniform(-1.0, 1.0)));
    return {yaw, pitch};
}

inline vrtile::Pose random_pose(SplitMix64& rng, double max_abs_pitch = 90.0) {
    vrtile::Pose pose;
    pose.yaw_deg = rng.uniform(-180.0, 180.0);
    pose.pitch_deg = rng.uniform(-max_abs_pitch, max_abs_pitch);
    pose.roll_deg = rng.uniform(-30.0, 30.0);
    return pose;
}

// Minimal OBJ reader: v/vt/f records only, enough to round-trip export_obj.
struct ParsedObj {
    std::vector<vrtile::Vec3> vertices;
    std::vector<vrtile::TexCoord> uvs;
    std::vector<std::array<int, 3>> faces;  // 0-based position indices
};

inline ParsedObj parse_obj(const std::string& text) {
    ParsedObj obj;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            vrtile::Vec3 v;
            ls >> v.x >> v.y >> v.z;
            obj.vertices.push_back(v);
        } else if (tag == "vt") {
            vrtile::TexCoord t;
            ls >> t.u >> t.v;
            obj.uvs.push_back(t);
        } else if (tag == "f") {
            std::array<int, 3> face{};
            for (int k = 0; k < 3; ++k) {
                std::string ref;
                ls >> ref;
                face[k] = std::stoi(ref.substr(0, ref.find('/'))) - 1;
            }
            obj.faces.push_back(face);
        }
    }
    return obj;
}

// Default 3840x1920 pipeline pieces used across suites.
inline vrtile::HexafacePartition default_partition() {
    return vrtile::partition_sphere(96.0, 90.0);
}

inline vrtile::TileGrid default_grid() {
    return vrtile::compute_tile_grid(default_partition(), 3840, 1920);
}

inline vrtile::Ladder default_ladder() {
    return vrtile::build_ladder(default_grid(), {1.0, 0.75, 0.5, 0.25}, {});
}

inline vrtile::MpdModel default_mpd(double duration_s = 10.0, double segment_s = 1.0) {
    return vrtile::generate_mpd(default_grid(), default_ladder(), duration_s, segment_s);
}

// Randomized valid manifest for round-trip properties.
inline vrtile::MpdModel random_mpd(SplitMix64& rng) {
    static const int heights[] = {960, 1440, 1920, 2048, 2880};
    static const double vfovs[] = {80.0, 90.0, 100.0, 120.0};
    int h = heights[rng.next() % 5];
    auto partition = vrtile::partition_sphere(96.0, vfovs[rng.next() % 4]);
    auto grid = vrtile::compute_tile_grid(partition, 2 * h, h);

    double f2 = rng.uniform(0.6, 0.9);
    double f3 = rng.uniform(0.35, 0.55);
    double f4 = rng.uniform(0.1, 0.3);
    vrtile::BitrateModel model;
    model.bits_per_pixel = rng.uniform(0.05, 0.2);
    model.fps = (rng.next() % 2) ? 60.0 : 30.0;
    auto ladder = vrtile::build_ladder(grid, {1.0, f2, f3, f4}, model);

    // Millisecond-precision durations survive the PT...S round trip exactly.
    double seg_s = static_cast<double>(rng.uniform_int(500, 4000)) / 1000.0;
    double dur_s = static_cast<double>(rng.uniform_int(2000, 600000)) / 1000.0;
    return vrtile::generate_mpd(grid, ladder, dur_s, seg_s);
}

}  // namespace testsupport
