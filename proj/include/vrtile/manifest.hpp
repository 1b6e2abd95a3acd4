#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vrtile/tiling.hpp"

namespace vrtile {

// MPEG-DASH SRD supplemental property value, plus the 3D extension: the
// optional spatial_set_id slot carries the hexaface segment encoding (0..5),
// which links the 2D tile to its 3D sub-mesh. The reference space is
// horizontally cyclic, so object_x + object_w may exceed total_w for the
// seam tile; the overflow wraps to column 0.
struct SrdDescriptor {
    int source_id = 0;
    int object_x = 0;
    int object_y = 0;
    int object_w = 0;
    int object_h = 0;
    int total_w = 0;
    int total_h = 0;
    std::optional<int> spatial_set_id;

    std::string value() const;  // "source_id,x,y,w,h,total_w,total_h[,spatial_set_id]"

    bool operator==(const SrdDescriptor&) const = default;
};

struct MpdRepresentation {
    int rep_id = 0;  // 1..4, assigned by descending bandwidth
    int width = 0;
    int height = 0;
    std::int64_t bandwidth_bps = 0;
    std::string media_template;  // number-based, e.g. "tile2_rep1_$Number$.m4s"

    bool operator==(const MpdRepresentation&) const = default;
};

struct MpdAdaptationSet {
    SrdDescriptor srd;
    std::vector<MpdRepresentation> representations;

    bool operator==(const MpdAdaptationSet&) const = default;
};

struct MpdModel {
    double media_duration_s = 0.0;
    double segment_duration_s = 0.0;
    std::vector<MpdAdaptationSet> adaptation_sets;  // ordered by spatial_set_id

    bool operator==(const MpdModel&) const = default;
};

// One adaptation set per tile, SRD rect taken from the grid, representations
// from the ladder with bandwidths rounded to whole bits per second.
// Throws ParameterError if the ladder's REP1 sizes do not match the grid or
// the durations are not positive.
MpdModel generate_mpd(const TileGrid& grid, const Ladder& ladder, double media_duration_s,
                      double segment_duration_s);

// Deterministic XML: fixed attribute order, adaptation sets ordered by
// spatial_set_id, two-space indent, UTF-8, "\n" newlines.
std::string serialize_mpd(const MpdModel& model);

// Inverse of serialize_mpd, tolerant of unknown elements and attributes and
// of whitespace inside SRD values. Throws ParseError with a named code and
// location for syntax errors, SRD problems and model invariant violations.
MpdModel parse_mpd(const std::string& text);

// Model invariant checks shared by parse_mpd and the tests; throws
// ParseError with codes: adaptation-set-count, representation-count,
// spatial-set-id, duplicate-spatial-set-id, total-mismatch, total-aspect,
// srd-bounds, representation-order, duration.
void validate_mpd(const MpdModel& model);

}  // namespace vrtile
