#include "vrtile/tiling.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

#include "vrtile/errors.hpp"

namespace vrtile {

TileGrid compute_tile_grid(const HexafacePartition& p, int frame_w, int frame_h) {
    if (frame_w <= 0 || frame_h <= 0)
        throw ParameterError("frame dimensions must be positive");
    if (frame_w != 2 * frame_h)
        throw ParameterError("frame must be 2:1 equirectangular, got " + std::to_string(frame_w) +
                             "x" + std::to_string(frame_h));

    TileGrid grid;
    grid.frame_w = frame_w;
    grid.frame_h = frame_h;

    const int cap_h = static_cast<int>(std::lround(frame_h * (90.0 - p.beta_deg) / 180.0));
    const int mid_h = frame_h - 2 * cap_h;
    if (cap_h < 1 || mid_h < 1)
        throw ParameterError("frame too small for the partition's cap/middle rows");

    grid.tiles[segment_index(SegmentId::Top)] = {SegmentId::Top, 0, 0, frame_w, cap_h};
    grid.tiles[segment_index(SegmentId::Bottom)] =
        {SegmentId::Bottom, 0, frame_h - cap_h, frame_w, cap_h};

    // Middle tile columns from the yaw mapping that puts yaw -180 at x = 0.
    // Left-to-right: M3, M0, M1, then M2 wrapping across the seam.
    auto column_of = [&](double yaw_deg) {
        double wrapped = std::fmod(yaw_deg + 180.0, 360.0);
        if (wrapped < 0.0) wrapped += 360.0;
        return static_cast<int>(std::lround(frame_w * wrapped / 360.0));
    };
    const std::array<SegmentId, 4> by_column = {SegmentId::M3, SegmentId::M0, SegmentId::M1,
                                                SegmentId::M2};
    std::array<int, 4> left{};
    for (int i = 0; i < 4; ++i)
        left[i] = column_of(p.region(by_column[i]).yaw_min_deg);
    for (int i = 0; i < 4; ++i) {
        int next = (i < 3) ? left[i + 1] : left[0] + frame_w;
        grid.tiles[segment_index(by_column[i])] =
            {by_column[i], left[i], cap_h, next - left[i], mid_h};
    }
    return grid;
}

double BitrateModel::bandwidth(SegmentId s, int rep_id, int width, int height) const {
    auto it = overrides.find({segment_index(s), rep_id});
    if (it != overrides.end()) return it->second;
    return bits_per_pixel * width * height * fps;
}

std::map<std::pair<int, int>, double> parse_bitrate_table(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("bitrate-table-json", "byte " + std::to_string(e.byte), e.what());
    }
    if (!doc.is_array())
        throw ParseError("bitrate-table-json", "document",
                         "bitrate table must be a JSON array of {segment, rep_id, bandwidth_bps}");

    std::map<std::pair<int, int>, double> table;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& row = doc[i];
        std::string where = "entry " + std::to_string(i);
        if (!row.is_object() || !row.contains("segment") || !row.contains("rep_id") ||
            !row.contains("bandwidth_bps"))
            throw ParseError("bitrate-table-entry", where,
                             "each entry needs segment, rep_id and bandwidth_bps");
        SegmentId seg;
        try {
            seg = segment_from_key(row.at("segment").get<std::string>());
        } catch (const ParameterError& e) {
            throw ParseError("bitrate-table-entry", where, e.what());
        }
        int rep_id = row.at("rep_id").get<int>();
        if (rep_id < 1 || rep_id > 4)
            throw ParseError("bitrate-table-entry", where, "rep_id must be 1..4");
        double bps = row.at("bandwidth_bps").get<double>();
        if (!(bps > 0.0))
            throw ParseError("bitrate-table-entry", where, "bandwidth_bps must be positive");
        table[{segment_index(seg), rep_id}] = bps;
    }
    return table;
}

Ladder build_ladder(const TileGrid& grid, const std::array<double, 4>& scale_factors,
                    const BitrateModel& model) {
    if (scale_factors[0] != 1.0)
        throw ParameterError("scale factor 1 must be 1.0");
    for (int k = 0; k < 4; ++k) {
        if (!(scale_factors[k] > 0.0 && scale_factors[k] <= 1.0))
            throw ParameterError("scale factors must lie in (0, 1]");
        if (k > 0 && !(scale_factors[k] < scale_factors[k - 1]))
            throw ParameterError("scale factors must be strictly decreasing");
    }

    Ladder ladder;
    ladder.scale_factors = scale_factors;
    for (SegmentId s : kAllSegments) {
        const TileRect& t = grid.tile(s);
        for (int k = 0; k < 4; ++k) {
            Representation& rep = ladder.reps[segment_index(s)][k];
            rep.rep_id = k + 1;
            rep.width = std::max(1, static_cast<int>(std::lround(t.w * scale_factors[k])));
            rep.height = std::max(1, static_cast<int>(std::lround(t.h * scale_factors[k])));
            rep.bandwidth_bps = model.bandwidth(s, rep.rep_id, rep.width, rep.height);
        }
        for (int k = 1; k < 4; ++k) {
            const auto& hi = ladder.reps[segment_index(s)][k - 1];
            const auto& lo = ladder.reps[segment_index(s)][k];
            if (!(static_cast<long long>(lo.width) * lo.height <
                  static_cast<long long>(hi.width) * hi.height))
                throw ParameterError("ladder pixel counts must decrease strictly (tile " +
                                     std::string(segment_key(s)) + ")");
            if (!(lo.bandwidth_bps < hi.bandwidth_bps))
                throw ParameterError("ladder bandwidths must decrease strictly (tile " +
                                     std::string(segment_key(s)) + ")");
        }
    }
    return ladder;
}

std::string tiling_plan_json(const TileGrid& grid, const Ladder& ladder) {
    nlohmann::ordered_json plan;
    plan["frame_w"] = grid.frame_w;
    plan["frame_h"] = grid.frame_h;
    plan["scale_factors"] = ladder.scale_factors;
    plan["tiles"] = nlohmann::ordered_json::array();
    for (SegmentId s : kAllSegments) {
        const TileRect& t = grid.tile(s);
        nlohmann::ordered_json entry;
        entry["segment"] = segment_key(s);
        entry["x"] = t.x;
        entry["y"] = t.y;
        entry["w"] = t.w;
        entry["h"] = t.h;
        entry["wraps"] = t.wraps(grid.frame_w);
        entry["crop"] = std::to_string(t.w) + ":" + std::to_string(t.h) + ":" +
                        std::to_string(t.x) + ":" + std::to_string(t.y);
        entry["representations"] = nlohmann::ordered_json::array();
        for (int rep_id = 1; rep_id <= 4; ++rep_id) {
            const Representation& rep = ladder.rep(s, rep_id);
            entry["representations"].push_back({{"rep_id", rep.rep_id},
                                                {"width", rep.width},
                                                {"height", rep.height},
                                                {"bandwidth_bps", rep.bandwidth_bps}});
        }
        plan["tiles"].push_back(std::move(entry));
    }
    return plan.dump(2) + "\n";
}

}  // namespace vrtile
