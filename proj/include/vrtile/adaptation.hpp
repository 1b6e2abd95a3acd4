#pragma once

#include <array>
#include <string>

#include "vrtile/viewport.hpp"

namespace vrtile {

// Three quality tiers: tiles overlapping the viewport, the yaw-neighbors of
// in-FoV middle tiles (when adjacency is on), and everything else. Lower
// rep_id means higher quality, so the tiers must not decrease.
struct AdaptationPolicy {
    int in_fov_rep = 1;
    int adjacent_rep = 2;
    int far_rep = 4;
    double min_overlap = 0.05;
    bool adjacency = true;

    void validate() const;

    // Strict field set {in_fov_rep, adjacent_rep, far_rep, min_overlap, adjacency};
    // missing fields keep their defaults, unknown fields are rejected.
    static AdaptationPolicy from_json(const std::string& text);
    std::string to_json() const;
};

// Per-tile representation choice for one interval.
struct AdaptationDecision {
    int interval_index = 0;
    Pose trigger_pose;
    std::array<int, 6> rep_for{};  // by segment encoding, values 1..4

    int rep(SegmentId s) const { return rep_for[segment_index(s)]; }

    bool operator==(const AdaptationDecision&) const = default;
};

// Applies the tier table to one visibility result. The gaze tile is always
// in-FoV regardless of its overlap fraction.
AdaptationDecision decide(const Visibility& vis, const AdaptationPolicy& policy);

// The no-adaptation reference: every tile at REP1.
AdaptationDecision baseline_decision();

}  // namespace vrtile
