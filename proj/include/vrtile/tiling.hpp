#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>

#include "vrtile/sphere_geometry.hpp"

namespace vrtile {

// Pixel rectangle of one face in the equirectangular frame. Top-left origin,
// y grows downward. Columns are cyclic: the seam tile (M2, centered at yaw
// 180) stores x + w > frame_w and wraps into column 0.
struct TileRect {
    SegmentId segment = SegmentId::Top;
    int x = 0, y = 0, w = 0, h = 0;

    bool wraps(int frame_w) const { return x + w > frame_w; }

    bool contains_column(int col, int frame_w) const {
        int d = col - x;
        if (d < 0) d += frame_w;
        return d < w;
    }
    bool contains(int col, int row, int frame_w) const {
        return row >= y && row < y + h && contains_column(col, frame_w);
    }

    bool operator==(const TileRect&) const = default;
};

// The six rectangles tiling the frame: full-width cap strips plus a middle
// row of four equal-width tiles in cyclic order M3, M0, M1, M2.
struct TileGrid {
    int frame_w = 0;
    int frame_h = 0;
    std::array<TileRect, 6> tiles{};  // by segment encoding

    const TileRect& tile(SegmentId s) const { return tiles[segment_index(s)]; }

    bool operator==(const TileGrid&) const = default;
};

// Derives the pixel grid from the partition. Requires a 2:1 frame; cap strip
// heights round to the nearest row and the middle row absorbs the remainder,
// as do the middle tile widths for frames not divisible by 8.
TileGrid compute_tile_grid(const HexafacePartition& p, int frame_w, int frame_h);

// One quality level of a tile. rep_id 1 is the highest.
struct Representation {
    int rep_id = 0;
    int width = 0;
    int height = 0;
    double bandwidth_bps = 0.0;

    bool operator==(const Representation&) const = default;
};

// Pixel-proportional bitrate model with optional per-(segment, rep)
// overrides from a bitrate table.
struct BitrateModel {
    double bits_per_pixel = 0.1;
    double fps = 60.0;
    std::map<std::pair<int, int>, double> overrides;  // (segment index, rep_id) -> bps

    double bandwidth(SegmentId s, int rep_id, int width, int height) const;
};

// Parses the override table: a JSON array of {segment, rep_id, bandwidth_bps}.
std::map<std::pair<int, int>, double> parse_bitrate_table(const std::string& json_text);

// Four representations per tile, REP1 at the tile's native size.
struct Ladder {
    std::array<double, 4> scale_factors{};
    std::array<std::array<Representation, 4>, 6> reps{};  // [segment][rep_id - 1]

    const Representation& rep(SegmentId s, int rep_id) const {
        return reps[segment_index(s)][rep_id - 1];
    }

    bool operator==(const Ladder&) const = default;
};

// REPk dimensions are the tile dimensions scaled by factor k (rounded, at
// least 1). Factors must start at 1.0 and decrease strictly within (0, 1].
Ladder build_ladder(const TileGrid& grid, const std::array<double, 4>& scale_factors,
                    const BitrateModel& model = {});

// Tiling plan: tile rects, per-rep dimensions and "w:h:x:y" crop strings.
std::string tiling_plan_json(const TileGrid& grid, const Ladder& ladder);

}  // namespace vrtile
