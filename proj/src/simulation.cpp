#include "vrtile/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "vrtile/errors.hpp"

namespace vrtile {

namespace {

std::string fixed2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fixed4(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(const std::string& field, int line_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0') || !std::isfinite(value))
        throw ParseError("trace-number", "line " + std::to_string(line_no),
                         "non-numeric field '" + field + "' at line " + std::to_string(line_no));
    return value;
}

}  // namespace

const Pose& OrientationTrace::pose_at(std::int64_t t_ms) const {
    auto it = std::upper_bound(samples.begin(), samples.end(), t_ms,
                               [](std::int64_t t, const Pose& p) { return t < p.t_ms; });
    if (it == samples.begin()) return samples.front();
    return *(it - 1);
}

OrientationTrace load_trace(const std::string& csv_text) {
    OrientationTrace trace;
    std::istringstream in(csv_text);
    std::string line;
    int line_no = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        if (!header_seen) {
            if (line != "t_ms,yaw_deg,pitch_deg,roll_deg")
                throw ParseError("trace-header", "line " + std::to_string(line_no),
                                 "expected header 't_ms,yaw_deg,pitch_deg,roll_deg', got '" +
                                     line + "'");
            header_seen = true;
            continue;
        }

        auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw ParseError("trace-field-count", "line " + std::to_string(line_no),
                             "expected 4 fields at line " + std::to_string(line_no) + ", got " +
                                 std::to_string(fields.size()));
        Pose pose;
        pose.t_ms = std::llround(parse_number(fields[0], line_no));
        pose.yaw_deg = normalize_yaw(parse_number(fields[1], line_no));
        pose.pitch_deg = parse_number(fields[2], line_no);
        pose.roll_deg = parse_number(fields[3], line_no);
        if (pose.pitch_deg < -90.0 || pose.pitch_deg > 90.0)
            throw ParseError("trace-pitch", "line " + std::to_string(line_no),
                             "pitch out of [-90, 90] at line " + std::to_string(line_no));
        if (!trace.samples.empty() && pose.t_ms <= trace.samples.back().t_ms)
            throw ParseError("trace-order", "line " + std::to_string(line_no),
                             "non-increasing timestamp at line " + std::to_string(line_no));
        trace.samples.push_back(pose);
    }

    if (!header_seen)
        throw ParseError("trace-header", "line 1", "trace is empty, header expected");
    if (trace.samples.empty())
        throw ParseError("trace-empty", "line " + std::to_string(line_no),
                         "trace has no samples");
    return trace;
}

SessionReport simulate(const MpdModel& mpd, const OrientationTrace& trace,
                       const AdaptationPolicy& policy, const HexafacePartition& partition) {
    validate_mpd(mpd);
    policy.validate();
    if (trace.samples.empty()) throw ParameterError("trace has no samples");

    // The manifest's tiling must be the one this partition produces.
    const int total_w = mpd.adaptation_sets[0].srd.total_w;
    const int total_h = mpd.adaptation_sets[0].srd.total_h;
    TileGrid grid = compute_tile_grid(partition, total_w, total_h);
    std::array<const MpdAdaptationSet*, 6> set_for{};
    for (const MpdAdaptationSet& set : mpd.adaptation_sets) {
        SegmentId s = static_cast<SegmentId>(*set.srd.spatial_set_id);
        set_for[segment_index(s)] = &set;
        const TileRect& t = grid.tile(s);
        if (set.srd.object_x != t.x || set.srd.object_y != t.y || set.srd.object_w != t.w ||
            set.srd.object_h != t.h)
            throw ParameterError("manifest does not match the partition: tile " +
                                 std::string(segment_key(s)) + " SRD rect is " +
                                 set.srd.value());
    }

    const double seg_s = mpd.segment_duration_s;
    const std::int64_t seg_ms = std::llround(seg_s * 1000.0);
    if (seg_ms <= 0) throw ParameterError("segment duration is below 1 ms");
    const std::int64_t duration = trace.duration_ms();
    const int interval_count =
        std::max<std::int64_t>(1, (duration + seg_ms - 1) / seg_ms);

    SessionReport report;
    report.segment_duration_s = seg_s;
    report.intervals.reserve(interval_count);

    double rep_sum = 0.0;
    std::int64_t rep_count = 0;
    for (int i = 0; i < interval_count; ++i) {
        IntervalRecord rec;
        rec.index = i;
        rec.start_ms = static_cast<std::int64_t>(i) * seg_ms;
        const Pose& pose = trace.pose_at(rec.start_ms);
        Visibility vis = visible_segments(partition, pose, policy.min_overlap);
        rec.decision = decide(vis, policy);
        rec.decision.interval_index = i;

        for (SegmentId s : kAllSegments) {
            int rep_id = rec.decision.rep(s);
            double bw = static_cast<double>(
                set_for[segment_index(s)]->representations[rep_id - 1].bandwidth_bps);
            double bytes = bw * seg_s / 8.0;
            rec.segment_bytes[segment_index(s)] = bytes;
            rec.total_bytes += bytes;
            if (vis.is_visible(s)) {
                rep_sum += rep_id;
                ++rep_count;
            }
        }
        report.total_bytes += rec.total_bytes;
        report.intervals.push_back(std::move(rec));
    }

    report.mean_in_fov_rep = rep_count > 0 ? rep_sum / static_cast<double>(rep_count) : 0.0;
    for (std::size_t i = 1; i < report.intervals.size(); ++i)
        for (SegmentId s : kAllSegments)
            if (report.intervals[i].decision.rep(s) != report.intervals[i - 1].decision.rep(s))
                ++report.switch_count;
    return report;
}

SavingsReport compare(const SessionReport& adaptive, const SessionReport& baseline,
                      const std::string& label) {
    if (adaptive.intervals.size() != baseline.intervals.size())
        throw ParameterError("interval counts differ: " +
                             std::to_string(adaptive.intervals.size()) + " vs " +
                             std::to_string(baseline.intervals.size()));
    if (!(baseline.total_bytes > 0.0))
        throw ParameterError("baseline session has no bytes");

    SavingsReport report;
    report.label = label;
    report.adaptive_bytes = adaptive.total_bytes;
    report.baseline_bytes = baseline.total_bytes;
    report.savings_fraction = 1.0 - adaptive.total_bytes / baseline.total_bytes;
    report.per_interval.reserve(adaptive.intervals.size());
    for (std::size_t i = 0; i < adaptive.intervals.size(); ++i) {
        double b = baseline.intervals[i].total_bytes;
        double a = adaptive.intervals[i].total_bytes;
        report.per_interval.push_back({a, b, b > 0.0 ? 1.0 - a / b : 0.0});
    }
    return report;
}

std::string emit_report(const SessionReport& report, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::string out = "interval,start_ms,rep_top,rep_bottom,rep_m0,rep_m1,rep_m2,rep_m3,bytes\n";
        for (const IntervalRecord& rec : report.intervals) {
            out += std::to_string(rec.index) + "," + std::to_string(rec.start_ms);
            for (SegmentId s : kAllSegments) out += "," + std::to_string(rec.decision.rep(s));
            out += "," + fixed2(rec.total_bytes) + "\n";
        }
        return out;
    }

    nlohmann::ordered_json doc;
    doc["segment_duration_s"] = report.segment_duration_s;
    doc["totals"] = {{"total_bytes", report.total_bytes},
                     {"mean_in_fov_rep", report.mean_in_fov_rep},
                     {"switch_count", report.switch_count}};
    doc["intervals"] = nlohmann::ordered_json::array();
    for (const IntervalRecord& rec : report.intervals) {
        nlohmann::ordered_json entry;
        entry["interval"] = rec.index;
        entry["start_ms"] = rec.start_ms;
        entry["trigger_pose"] = {{"t_ms", rec.decision.trigger_pose.t_ms},
                                 {"yaw_deg", rec.decision.trigger_pose.yaw_deg},
                                 {"pitch_deg", rec.decision.trigger_pose.pitch_deg},
                                 {"roll_deg", rec.decision.trigger_pose.roll_deg}};
        nlohmann::ordered_json reps, bytes;
        for (SegmentId s : kAllSegments) {
            reps[std::string(segment_key(s))] = rec.decision.rep(s);
            bytes[std::string(segment_key(s))] = rec.segment_bytes[segment_index(s)];
        }
        entry["rep"] = std::move(reps);
        entry["segment_bytes"] = std::move(bytes);
        entry["total_bytes"] = rec.total_bytes;
        doc["intervals"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

std::string emit_report(const SavingsReport& report, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::string out = "interval,adaptive_bytes,baseline_bytes,savings_fraction\n";
        for (std::size_t i = 0; i < report.per_interval.size(); ++i) {
            const IntervalSavings& row = report.per_interval[i];
            out += std::to_string(i) + "," + fixed2(row.adaptive_bytes) + "," +
                   fixed2(row.baseline_bytes) + "," + fixed4(row.savings_fraction) + "\n";
        }
        out += "total," + fixed2(report.adaptive_bytes) + "," + fixed2(report.baseline_bytes) +
               "," + fixed4(report.savings_fraction) + "\n";
        return out;
    }

    nlohmann::ordered_json doc;
    doc["label"] = report.label;
    doc["adaptive_bytes"] = report.adaptive_bytes;
    doc["baseline_bytes"] = report.baseline_bytes;
    doc["savings_fraction"] = report.savings_fraction;
    doc["per_interval"] = nlohmann::ordered_json::array();
    for (const IntervalSavings& row : report.per_interval)
        doc["per_interval"].push_back({{"adaptive_bytes", row.adaptive_bytes},
                                       {"baseline_bytes", row.baseline_bytes},
                                       {"savings_fraction", row.savings_fraction}});
    return doc.dump(2) + "\n";
}

SessionReport session_report_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("report-json", "byte " + std::to_string(e.byte), e.what());
    }
    try {
        SessionReport report;
        report.segment_duration_s = doc.at("segment_duration_s").get<double>();
        report.total_bytes = doc.at("totals").at("total_bytes").get<double>();
        report.mean_in_fov_rep = doc.at("totals").at("mean_in_fov_rep").get<double>();
        report.switch_count = doc.at("totals").at("switch_count").get<int>();
        for (const auto& entry : doc.at("intervals")) {
            IntervalRecord rec;
            rec.index = entry.at("interval").get<int>();
            rec.start_ms = entry.at("start_ms").get<std::int64_t>();
            rec.decision.interval_index = rec.index;
            const auto& pose = entry.at("trigger_pose");
            rec.decision.trigger_pose = {pose.at("t_ms").get<std::int64_t>(),
                                         pose.at("yaw_deg").get<double>(),
                                         pose.at("pitch_deg").get<double>(),
                                         pose.at("roll_deg").get<double>()};
            for (SegmentId s : kAllSegments) {
                std::string key(segment_key(s));
                rec.decision.rep_for[segment_index(s)] = entry.at("rep").at(key).get<int>();
                rec.segment_bytes[segment_index(s)] =
                    entry.at("segment_bytes").at(key).get<double>();
            }
            rec.total_bytes = entry.at("total_bytes").get<double>();
            report.intervals.push_back(std::move(rec));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("report-json", "document", e.what());
    }
}

SavingsReport savings_report_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("report-json", "byte " + std::to_string(e.byte), e.what());
    }
    try {
        SavingsReport report;
        report.label = doc.at("label").get<std::string>();
        report.adaptive_bytes = doc.at("adaptive_bytes").get<double>();
        report.baseline_bytes = doc.at("baseline_bytes").get<double>();
        report.savings_fraction = doc.at("savings_fraction").get<double>();
        for (const auto& row : doc.at("per_interval"))
            report.per_interval.push_back({row.at("adaptive_bytes").get<double>(),
                                           row.at("baseline_bytes").get<double>(),
                                           row.at("savings_fraction").get<double>()});
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("report-json", "document", e.what());
    }
}

}  // namespace vrtile
