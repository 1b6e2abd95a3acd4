#include "vrtile/batch.hpp"

#include <string>

#include "vrtile/errors.hpp"

namespace vrtile {

namespace {

// Parallel regions must not throw, so reject bad samples up front; the
// kernels below then call the throwing entry points on known-good input.
void require_valid_pitch(double pitch_deg, std::int64_t index) {
    if (!(pitch_deg >= -90.0 && pitch_deg <= 90.0))
        throw ParameterError("pitch_deg must be in [-90, 90], got " + std::to_string(pitch_deg) +
                             " at sample " + std::to_string(index));
}

void validate_directions(std::span<const AngleDirection> directions) {
    for (std::size_t i = 0; i < directions.size(); ++i)
        require_valid_pitch(directions[i].pitch_deg, static_cast<std::int64_t>(i));
}

void validate_poses(std::span<const Pose> poses, double min_overlap) {
    if (!(min_overlap >= 0.0 && min_overlap < 1.0))
        throw ParameterError("min_overlap must be in [0, 1), got " + std::to_string(min_overlap));
    for (std::size_t i = 0; i < poses.size(); ++i)
        require_valid_pitch(poses[i].pitch_deg, static_cast<std::int64_t>(i));
}

}  // namespace

std::vector<SegmentId> classify_batch(const HexafacePartition& p,
                                      std::span<const AngleDirection> directions,
                                      Execution mode) {
    validate_directions(directions);
    std::vector<SegmentId> out(directions.size());
    const std::int64_t n = static_cast<std::int64_t>(directions.size());
    if (mode == Execution::serial) {
        for (std::int64_t i = 0; i < n; ++i)
            out[i] = classify_direction(p, directions[i].yaw_deg, directions[i].pitch_deg);
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
            out[i] = classify_direction(p, directions[i].yaw_deg, directions[i].pitch_deg);
    }
    return out;
}

std::array<std::int64_t, 6> segment_histogram(const HexafacePartition& p,
                                              std::span<const AngleDirection> directions,
                                              Execution mode) {
    validate_directions(directions);
    std::array<std::int64_t, 6> counts{};
    const std::int64_t n = static_cast<std::int64_t>(directions.size());
    if (mode == Execution::serial) {
        for (std::int64_t i = 0; i < n; ++i)
            ++counts[segment_index(
                classify_direction(p, directions[i].yaw_deg, directions[i].pitch_deg))];
    } else {
        std::int64_t c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
#pragma omp parallel for schedule(static) reduction(+ : c0, c1, c2, c3, c4, c5)
        for (std::int64_t i = 0; i < n; ++i) {
            switch (segment_index(
                classify_direction(p, directions[i].yaw_deg, directions[i].pitch_deg))) {
                case 0: ++c0; break;
                case 1: ++c1; break;
                case 2: ++c2; break;
                case 3: ++c3; break;
                case 4: ++c4; break;
                default: ++c5; break;
            }
        }
        counts = {c0, c1, c2, c3, c4, c5};
    }
    return counts;
}

std::vector<Visibility> visibility_batch(const HexafacePartition& p, std::span<const Pose> poses,
                                         double min_overlap, Execution mode) {
    validate_poses(poses, min_overlap);
    std::vector<Visibility> out(poses.size());
    const std::int64_t n = static_cast<std::int64_t>(poses.size());
    if (mode == Execution::serial) {
        for (std::int64_t i = 0; i < n; ++i)
            out[i] = visible_segments(p, poses[i], min_overlap);
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
            out[i] = visible_segments(p, poses[i], min_overlap);
    }
    return out;
}

}  // namespace vrtile
