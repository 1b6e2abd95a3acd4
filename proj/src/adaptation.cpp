#include "vrtile/adaptation.hpp"

#include <json.hpp>

#include "vrtile/errors.hpp"

namespace vrtile {

void AdaptationPolicy::validate() const {
    auto check_rep = [](int rep, const char* name) {
        if (rep < 1 || rep > 4)
            throw ParameterError(std::string(name) + " must be in 1..4, got " +
                                 std::to_string(rep));
    };
    check_rep(in_fov_rep, "in_fov_rep");
    check_rep(adjacent_rep, "adjacent_rep");
    check_rep(far_rep, "far_rep");
    if (!(in_fov_rep <= adjacent_rep && adjacent_rep <= far_rep))
        throw ParameterError("policy tiers must satisfy in_fov_rep <= adjacent_rep <= far_rep");
    if (!(min_overlap >= 0.0 && min_overlap < 1.0))
        throw ParameterError("min_overlap must be in [0, 1), got " + std::to_string(min_overlap));
}

AdaptationPolicy AdaptationPolicy::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("policy-json", "byte " + std::to_string(e.byte), e.what());
    }
    if (!doc.is_object())
        throw ParseError("policy-json", "document", "policy must be a JSON object");

    AdaptationPolicy policy;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "in_fov_rep") policy.in_fov_rep = value.get<int>();
            else if (key == "adjacent_rep") policy.adjacent_rep = value.get<int>();
            else if (key == "far_rep") policy.far_rep = value.get<int>();
            else if (key == "min_overlap") policy.min_overlap = value.get<double>();
            else if (key == "adjacency") policy.adjacency = value.get<bool>();
            else
                throw ParseError("policy-key", key, "unknown policy field '" + key + "'");
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("policy-json", key, e.what());
        }
    }
    try {
        policy.validate();
    } catch (const ParameterError& e) {
        throw ParseError("policy-value", "document", e.what());
    }
    return policy;
}

std::string AdaptationPolicy::to_json() const {
    nlohmann::ordered_json doc;
    doc["in_fov_rep"] = in_fov_rep;
    doc["adjacent_rep"] = adjacent_rep;
    doc["far_rep"] = far_rep;
    doc["min_overlap"] = min_overlap;
    doc["adjacency"] = adjacency;
    return doc.dump(2) + "\n";
}

namespace {

bool is_middle(SegmentId s) { return segment_index(s) >= segment_index(SegmentId::M0); }

SegmentId middle_neighbor(SegmentId s, int step) {
    int i = segment_index(s) - segment_index(SegmentId::M0);
    int j = (i + step + 4) % 4;
    return static_cast<SegmentId>(segment_index(SegmentId::M0) + j);
}

}  // namespace

AdaptationDecision decide(const Visibility& vis, const AdaptationPolicy& policy) {
    policy.validate();

    AdaptationDecision decision;
    decision.trigger_pose = vis.pose;

    std::array<bool, 6> in_fov{};
    in_fov[segment_index(vis.gaze)] = true;
    for (SegmentId s : kAllSegments)
        if (vis.fraction(s) > policy.min_overlap) in_fov[segment_index(s)] = true;

    // Adjacency promotes only the yaw-neighbors of in-FoV middle tiles; the
    // caps stay in the far tier unless the viewport itself reaches them.
    std::array<bool, 6> adjacent{};
    if (policy.adjacency) {
        for (SegmentId s : kAllSegments) {
            if (!in_fov[segment_index(s)] || !is_middle(s)) continue;
            adjacent[segment_index(middle_neighbor(s, +1))] = true;
            adjacent[segment_index(middle_neighbor(s, -1))] = true;
        }
    }

    for (SegmentId s : kAllSegments) {
        int i = segment_index(s);
        decision.rep_for[i] = in_fov[i]   ? policy.in_fov_rep
                              : adjacent[i] ? policy.adjacent_rep
                                            : policy.far_rep;
    }
    return decision;
}

AdaptationDecision baseline_decision() {
    AdaptationDecision decision;
    decision.rep_for.fill(1);
    return decision;
}

}  // namespace vrtile
