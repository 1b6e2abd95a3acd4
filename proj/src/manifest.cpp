#include "vrtile/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "vrtile/errors.hpp"
#include "vrtile/xml.hpp"

namespace vrtile {

namespace {

constexpr std::string_view kSrdScheme = "urn:mpeg:dash:srd:2014";

std::string format_seconds(double seconds) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", seconds);
    std::string s(buf);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::string format_duration(double seconds) { return "PT" + format_seconds(seconds) + "S"; }

double parse_duration(const std::string& text, const std::string& location) {
    std::size_t i = 0;
    if (text.rfind("PT", 0) != 0)
        throw ParseError("duration", location, "duration must start with PT: " + text);
    i = 2;
    double seconds = 0.0;
    bool any = false;
    while (i < text.size()) {
        std::size_t start = i;
        while (i < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.'))
            ++i;
        if (i == start || i >= text.size())
            throw ParseError("duration", location, "malformed duration: " + text);
        double value = std::strtod(text.c_str() + start, nullptr);
        switch (text[i]) {
            case 'H': seconds += value * 3600.0; break;
            case 'M': seconds += value * 60.0; break;
            case 'S': seconds += value; break;
            default:
                throw ParseError("duration", location,
                                 std::string("unknown duration unit '") + text[i] + "'");
        }
        ++i;
        any = true;
    }
    if (!any) throw ParseError("duration", location, "empty duration: " + text);
    return seconds;
}

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

int parse_int_field(const std::string& text, const std::string& location, const char* what) {
    std::string t = trim(text);
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw ParseError("srd-value", location,
                         std::string("SRD ") + what + " is not an integer: '" + text + "'");
    return value;
}

SrdDescriptor parse_srd_value(const std::string& value, const std::string& location) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = value.find(',', start);
        fields.push_back(value.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (fields.size() != 7 && fields.size() != 8)
        throw ParseError("srd-arity", location,
                         "SRD value must have 7 or 8 fields, got " +
                             std::to_string(fields.size()) + ": '" + value + "'");

    SrdDescriptor srd;
    srd.source_id = parse_int_field(fields[0], location, "source_id");
    srd.object_x = parse_int_field(fields[1], location, "object_x");
    srd.object_y = parse_int_field(fields[2], location, "object_y");
    srd.object_w = parse_int_field(fields[3], location, "object_w");
    srd.object_h = parse_int_field(fields[4], location, "object_h");
    srd.total_w = parse_int_field(fields[5], location, "total_w");
    srd.total_h = parse_int_field(fields[6], location, "total_h");
    if (fields.size() == 8)
        srd.spatial_set_id = parse_int_field(fields[7], location, "spatial_set_id");
    return srd;
}

std::int64_t attr_as_int(const xml::Element& e, const char* name, const std::string& location) {
    const std::string* raw = e.attr(name);
    if (!raw)
        throw ParseError("attribute", location,
                         "<" + e.name + "> is missing attribute " + name);
    std::string t = trim(*raw);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw ParseError("attribute", location,
                         std::string("attribute ") + name + " is not an integer: '" + *raw + "'");
    return value;
}

}  // namespace

std::string SrdDescriptor::value() const {
    std::string out = std::to_string(source_id) + "," + std::to_string(object_x) + "," +
                      std::to_string(object_y) + "," + std::to_string(object_w) + "," +
                      std::to_string(object_h) + "," + std::to_string(total_w) + "," +
                      std::to_string(total_h);
    if (spatial_set_id) out += "," + std::to_string(*spatial_set_id);
    return out;
}

MpdModel generate_mpd(const TileGrid& grid, const Ladder& ladder, double media_duration_s,
                      double segment_duration_s) {
    if (!(media_duration_s > 0.0))
        throw ParameterError("media_duration_s must be positive");
    if (!(segment_duration_s > 0.0))
        throw ParameterError("segment_duration_s must be positive");
    for (SegmentId s : kAllSegments) {
        const TileRect& t = grid.tile(s);
        const Representation& rep1 = ladder.rep(s, 1);
        if (rep1.width != t.w || rep1.height != t.h)
            throw ParameterError("ladder does not match grid: tile " +
                                 std::string(segment_key(s)) + " REP1 is " +
                                 std::to_string(rep1.width) + "x" + std::to_string(rep1.height) +
                                 ", tile is " + std::to_string(t.w) + "x" + std::to_string(t.h));
    }

    MpdModel model;
    model.media_duration_s = media_duration_s;
    model.segment_duration_s = segment_duration_s;
    for (SegmentId s : kAllSegments) {
        const TileRect& t = grid.tile(s);
        MpdAdaptationSet set;
        set.srd = {0, t.x, t.y, t.w, t.h, grid.frame_w, grid.frame_h, segment_index(s)};
        for (int rep_id = 1; rep_id <= 4; ++rep_id) {
            const Representation& rep = ladder.rep(s, rep_id);
            MpdRepresentation mr;
            mr.rep_id = rep_id;
            mr.width = rep.width;
            mr.height = rep.height;
            mr.bandwidth_bps = std::llround(rep.bandwidth_bps);
            mr.media_template = "tile" + std::to_string(segment_index(s)) + "_rep" +
                                std::to_string(rep_id) + "_$Number$.m4s";
            set.representations.push_back(std::move(mr));
        }
        model.adaptation_sets.push_back(std::move(set));
    }
    return model;
}

std::string serialize_mpd(const MpdModel& model) {
    std::vector<const MpdAdaptationSet*> ordered;
    for (const auto& set : model.adaptation_sets) ordered.push_back(&set);
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        return a->srd.spatial_set_id.value_or(0) < b->srd.spatial_set_id.value_or(0);
    });

    const std::int64_t timescale = 1000;
    const std::int64_t seg_dur_ticks = std::llround(model.segment_duration_s * timescale);

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<MPD xmlns=\"urn:mpeg:dash:schema:mpd:2011\""
           " profiles=\"urn:mpeg:dash:profile:isoff-on-demand:2011\" type=\"static\""
           " mediaPresentationDuration=\"" + format_duration(model.media_duration_s) + "\""
           " minBufferTime=\"PT1S\">\n";
    out += "  <Period id=\"0\" start=\"PT0S\">\n";
    for (const MpdAdaptationSet* set : ordered) {
        out += "    <AdaptationSet id=\"" +
               std::to_string(set->srd.spatial_set_id.value_or(0)) +
               "\" contentType=\"video\" mimeType=\"video/mp4\" segmentAlignment=\"true\">\n";
        out += "      <SupplementalProperty schemeIdUri=\"" + std::string(kSrdScheme) +
               "\" value=\"" + set->srd.value() + "\"/>\n";
        for (const MpdRepresentation& rep : set->representations) {
            out += "      <Representation id=\"tile" +
                   std::to_string(set->srd.spatial_set_id.value_or(0)) + "_rep" +
                   std::to_string(rep.rep_id) + "\" width=\"" + std::to_string(rep.width) +
                   "\" height=\"" + std::to_string(rep.height) + "\" bandwidth=\"" +
                   std::to_string(rep.bandwidth_bps) + "\">\n";
            out += "        <SegmentTemplate media=\"" + xml::escape_attribute(rep.media_template) +
                   "\" timescale=\"" + std::to_string(timescale) + "\" duration=\"" +
                   std::to_string(seg_dur_ticks) + "\" startNumber=\"1\"/>\n";
            out += "      </Representation>\n";
        }
        out += "    </AdaptationSet>\n";
    }
    out += "  </Period>\n";
    out += "</MPD>\n";
    return out;
}

MpdModel parse_mpd(const std::string& text) {
    xml::Element root = xml::parse_document(text);
    if (root.name != "MPD")
        throw ParseError("root-element", "line " + std::to_string(root.line),
                         "root element is <" + root.name + ">, expected <MPD>");

    MpdModel model;
    if (const std::string* dur = root.attr("mediaPresentationDuration"))
        model.media_duration_s = parse_duration(*dur, "MPD");

    const xml::Element* period = root.first_child("Period");
    if (!period)
        throw ParseError("period", "MPD", "manifest has no <Period>");

    auto sets = period->children_named("AdaptationSet");
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const xml::Element& e = *sets[i];
        std::string where = "AdaptationSet[" + std::to_string(i) + "] (line " +
                            std::to_string(e.line) + ")";
        MpdAdaptationSet set;

        const xml::Element* srd_property = nullptr;
        for (const xml::Element* prop : e.children_named("SupplementalProperty")) {
            const std::string* scheme = prop->attr("schemeIdUri");
            if (scheme && *scheme == kSrdScheme) {
                srd_property = prop;
                break;
            }
        }
        if (!srd_property)
            throw ParseError("missing-srd", where, "adaptation set has no SRD property");
        const std::string* value = srd_property->attr("value");
        if (!value)
            throw ParseError("missing-srd", where, "SRD property has no value attribute");
        set.srd = parse_srd_value(*value, where);

        for (const xml::Element* rep_el : e.children_named("Representation")) {
            std::string rep_where = where + "/Representation (line " +
                                    std::to_string(rep_el->line) + ")";
            MpdRepresentation rep;
            rep.width = static_cast<int>(attr_as_int(*rep_el, "width", rep_where));
            rep.height = static_cast<int>(attr_as_int(*rep_el, "height", rep_where));
            rep.bandwidth_bps = attr_as_int(*rep_el, "bandwidth", rep_where);
            if (const xml::Element* tmpl = rep_el->first_child("SegmentTemplate")) {
                if (const std::string* media = tmpl->attr("media")) rep.media_template = *media;
                if (tmpl->attr("duration")) {
                    std::int64_t ticks = attr_as_int(*tmpl, "duration", rep_where);
                    std::int64_t timescale =
                        tmpl->attr("timescale") ? attr_as_int(*tmpl, "timescale", rep_where) : 1;
                    if (timescale > 0 && model.segment_duration_s == 0.0)
                        model.segment_duration_s =
                            static_cast<double>(ticks) / static_cast<double>(timescale);
                }
            }
            set.representations.push_back(std::move(rep));
        }
        // rep_id by descending bandwidth; ties keep document order.
        std::stable_sort(set.representations.begin(), set.representations.end(),
                         [](const auto& a, const auto& b) {
                             return a.bandwidth_bps > b.bandwidth_bps;
                         });
        for (std::size_t k = 0; k < set.representations.size(); ++k)
            set.representations[k].rep_id = static_cast<int>(k) + 1;

        model.adaptation_sets.push_back(std::move(set));
    }

    validate_mpd(model);
    return model;
}

void validate_mpd(const MpdModel& model) {
    if (!(model.media_duration_s > 0.0))
        throw ParseError("duration", "MPD", "media duration must be positive");
    if (!(model.segment_duration_s > 0.0))
        throw ParseError("duration", "MPD", "segment duration must be positive");
    if (model.adaptation_sets.size() != 6)
        throw ParseError("adaptation-set-count", "MPD",
                         "expected 6 adaptation sets, got " +
                             std::to_string(model.adaptation_sets.size()));

    std::set<int> seen_ids;
    for (std::size_t i = 0; i < model.adaptation_sets.size(); ++i) {
        const MpdAdaptationSet& set = model.adaptation_sets[i];
        const SrdDescriptor& srd = set.srd;
        std::string where = "AdaptationSet[" + std::to_string(i) + "]";

        if (!srd.spatial_set_id || *srd.spatial_set_id < 0 || *srd.spatial_set_id > 5)
            throw ParseError("spatial-set-id", where,
                             "SRD needs a spatial_set_id in 0..5 for the 3D extension");
        if (!seen_ids.insert(*srd.spatial_set_id).second)
            throw ParseError("duplicate-spatial-set-id", where,
                             "spatial_set_id " + std::to_string(*srd.spatial_set_id) +
                                 " appears more than once");
        if (srd.total_w != model.adaptation_sets[0].srd.total_w ||
            srd.total_h != model.adaptation_sets[0].srd.total_h)
            throw ParseError("total-mismatch", where,
                             "SRD totals differ between adaptation sets");
        if (srd.total_w != 2 * srd.total_h)
            throw ParseError("total-aspect", where,
                             "SRD reference space must be 2:1, got " +
                                 std::to_string(srd.total_w) + "x" +
                                 std::to_string(srd.total_h));
        // Cyclic columns: x+w may pass total_w (seam wrap), but never self-overlap.
        if (srd.object_w < 1 || srd.object_h < 1 || srd.object_x < 0 ||
            srd.object_x >= srd.total_w || srd.object_w > srd.total_w || srd.object_y < 0 ||
            srd.object_y + srd.object_h > srd.total_h)
            throw ParseError("srd-bounds", where,
                             "SRD object rect does not fit the reference space: " + srd.value());

        if (set.representations.size() != 4)
            throw ParseError("representation-count", where,
                             "expected 4 representations, got " +
                                 std::to_string(set.representations.size()));
        for (std::size_t k = 1; k < set.representations.size(); ++k) {
            if (!(set.representations[k].bandwidth_bps <
                  set.representations[k - 1].bandwidth_bps))
                throw ParseError("representation-order", where,
                                 "representation bandwidths must decrease strictly");
        }
    }
}

}  // namespace vrtile
