#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "vrtile/sphere_geometry.hpp"
#include "vrtile/viewport.hpp"

namespace vrtile {

// Data-parallel kernels over many directions or poses. Every kernel has a
// serial reference implementation and an OpenMP one; both produce identical
// output element-for-element, so results never depend on thread count or
// schedule. Without OpenMP support the parallel mode falls back to serial.
enum class Execution { serial, parallel };

struct AngleDirection {
    double yaw_deg = 0.0;
    double pitch_deg = 0.0;
};

// classify_direction over a batch.
std::vector<SegmentId> classify_batch(const HexafacePartition& p,
                                      std::span<const AngleDirection> directions,
                                      Execution mode = Execution::parallel);

// Per-segment hit counts for a batch of directions.
std::array<std::int64_t, 6> segment_histogram(const HexafacePartition& p,
                                              std::span<const AngleDirection> directions,
                                              Execution mode = Execution::parallel);

// visible_segments for every pose of a trace (per-frame viewport tracking).
std::vector<Visibility> visibility_batch(const HexafacePartition& p, std::span<const Pose> poses,
                                         double min_overlap,
                                         Execution mode = Execution::parallel);

}  // namespace vrtile
