#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vrtile/adaptation.hpp"
#include "vrtile/manifest.hpp"
#include "vrtile/viewport.hpp"

namespace vrtile {

// Time-ordered head orientation samples; the trace duration is the last
// sample's timestamp.
struct OrientationTrace {
    std::vector<Pose> samples;

    std::int64_t duration_ms() const { return samples.back().t_ms; }

    // Latest sample at or before t_ms (zero-order hold before the first).
    const Pose& pose_at(std::int64_t t_ms) const;

    bool operator==(const OrientationTrace&) const = default;
};

// CSV with header "t_ms,yaw_deg,pitch_deg,roll_deg". Rejects bad headers,
// non-numeric fields, non-increasing timestamps and out-of-range pitch,
// each with the offending line number. Yaw is normalized to [-180, 180).
OrientationTrace load_trace(const std::string& csv_text);

struct IntervalRecord {
    int index = 0;
    std::int64_t start_ms = 0;
    AdaptationDecision decision;
    std::array<double, 6> segment_bytes{};
    double total_bytes = 0.0;

    bool operator==(const IntervalRecord&) const = default;
};

struct SessionReport {
    double segment_duration_s = 0.0;
    std::vector<IntervalRecord> intervals;
    double total_bytes = 0.0;
    double mean_in_fov_rep = 0.0;  // mean chosen rep over (interval, in-FoV tile) pairs
    int switch_count = 0;          // interval-to-interval rep changes summed over tiles

    bool operator==(const SessionReport&) const = default;
};

struct IntervalSavings {
    double adaptive_bytes = 0.0;
    double baseline_bytes = 0.0;
    double savings_fraction = 0.0;

    bool operator==(const IntervalSavings&) const = default;
};

struct SavingsReport {
    std::string label;
    double adaptive_bytes = 0.0;
    double baseline_bytes = 0.0;
    double savings_fraction = 0.0;  // 1 - adaptive/baseline
    std::vector<IntervalSavings> per_interval;

    bool operator==(const SavingsReport&) const = default;
};

// One decision per segment-duration interval, driven by the pose at the
// interval start. Bytes come from the manifest's representation bandwidths
// (bandwidth * segment_duration / 8). The partition must reproduce the
// manifest's tile rects. Deterministic.
SessionReport simulate(const MpdModel& mpd, const OrientationTrace& trace,
                       const AdaptationPolicy& policy, const HexafacePartition& partition);

SavingsReport compare(const SessionReport& adaptive, const SessionReport& baseline,
                      const std::string& label = "");

enum class ReportFormat { csv, json };

std::string emit_report(const SessionReport& report, ReportFormat format);
std::string emit_report(const SavingsReport& report, ReportFormat format);

SessionReport session_report_from_json(const std::string& text);
SavingsReport savings_report_from_json(const std::string& text);

}  // namespace vrtile
