#include "swisscheese/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace swisscheese {

using nlohmann::json;

namespace {

constexpr const char* kCheeseFormat = "swisscheese/1";
constexpr const char* kRegionsFormat = "swisscheese-regions/1";
constexpr const char* kLayoutFormat = "swisscheese-ofarrell-layout/1";

json disk_to_json(const Disk& d) {
    return json{{"cx", d.center.x}, {"cy", d.center.y}, {"r", d.radius}};
}

double require_number(const json& j, const std::string& where, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        throw parse_error("missing or non-numeric field '" + where + "." + field + "'");
    return j[field].get<double>();
}

Disk disk_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw parse_error("field '" + where + "' must be an object");
    return Disk{{require_number(j, where, "cx"), require_number(j, where, "cy")},
                require_number(j, where, "r")};
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

void require_format(const json& doc, const char* expected) {
    if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string() ||
        doc["format"].get<std::string>() != expected)
        throw parse_error(std::string("document format must be \"") + expected + "\"");
}

} // namespace

std::string serialize_cheese(const Cheese& c, const Metadata& metadata) {
    json doc;
    doc["format"] = kCheeseFormat;
    doc["outer"] = disk_to_json(c.outer);
    if (c.hole) doc["hole"] = disk_to_json(*c.hole);
    doc["disks"] = json::array();
    for (const Disk& d : c.inner) doc["disks"].push_back(disk_to_json(d));
    doc["tail_budget"] = c.tail_budget;
    if (!metadata.empty()) {
        json meta;
        for (const auto& [k, v] : metadata) meta[k] = v;
        doc["metadata"] = meta;
    }
    return doc.dump(2) + "\n";
}

Cheese parse_cheese(const std::string& text) {
    const json doc = parse_json(text);
    require_format(doc, kCheeseFormat);
    if (!doc.contains("outer")) throw parse_error("missing field 'outer'");

    Cheese c;
    c.outer = disk_from_json(doc["outer"], "outer");
    if (doc.contains("hole")) c.hole = disk_from_json(doc["hole"], "hole");
    if (doc.contains("disks")) {
        if (!doc["disks"].is_array()) throw parse_error("field 'disks' must be an array");
        std::size_t i = 0;
        for (const json& dj : doc["disks"])
            c.inner.push_back(disk_from_json(dj, "disks[" + std::to_string(i++) + "]"));
    }
    if (doc.contains("tail_budget")) {
        if (!doc["tail_budget"].is_number())
            throw parse_error("field 'tail_budget' must be a number");
        c.tail_budget = doc["tail_budget"].get<double>();
    }
    try {
        validate(c);
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
    return c;
}

std::string serialize_regions(const ControllingCollection& cc) {
    json doc;
    doc["format"] = kRegionsFormat;
    doc["pairs"] = json::array();
    for (const ControllingPair& p : cc.pairs) {
        json region;
        if (const Disk* d = std::get_if<Disk>(&p.k_region.shape)) {
            region = {{"type", "disk"}, {"cx", d->center.x}, {"cy", d->center.y},
                      {"r", d->radius}};
        } else if (const Annulus* a = std::get_if<Annulus>(&p.k_region.shape)) {
            region = {{"type", "annulus"}, {"cx", a->center.x}, {"cy", a->center.y},
                      {"inner_r", a->inner_radius}, {"outer_r", a->outer_radius}};
        } else {
            throw std::invalid_argument(
                "serialize_regions: only disk and annulus regions have a document form");
        }
        doc["pairs"].push_back(json{{"region", region}, {"margin", p.margin}});
    }
    return doc.dump(2) + "\n";
}

ControllingCollection parse_regions(const std::string& text) {
    const json doc = parse_json(text);
    require_format(doc, kRegionsFormat);
    if (!doc.contains("pairs") || !doc["pairs"].is_array() || doc["pairs"].empty())
        throw parse_error("field 'pairs' must be a non-empty array");

    ControllingCollection cc;
    std::size_t i = 0;
    for (const json& pj : doc["pairs"]) {
        const std::string where = "pairs[" + std::to_string(i++) + "]";
        if (!pj.is_object() || !pj.contains("region"))
            throw parse_error("missing field '" + where + ".region'");
        const json& rj = pj["region"];
        if (!rj.contains("type") || !rj["type"].is_string())
            throw parse_error("missing field '" + where + ".region.type'");
        const std::string type = rj["type"].get<std::string>();

        Region region;
        if (type == "disk") {
            region = region_disk(Disk{{require_number(rj, where, "cx"),
                                       require_number(rj, where, "cy")},
                                      require_number(rj, where, "r")});
        } else if (type == "annulus") {
            const Annulus a{{require_number(rj, where, "cx"),
                             require_number(rj, where, "cy")},
                            require_number(rj, where, "inner_r"),
                            require_number(rj, where, "outer_r")};
            if (!(0.0 <= a.inner_radius && a.inner_radius < a.outer_radius))
                throw parse_error("'" + where + ".region' has invalid annulus radii");
            region = region_annulus(a);
        } else {
            throw parse_error("'" + where + ".region.type' must be disk or annulus");
        }
        const double margin = require_number(pj, where, "margin");
        if (!(margin > 0.0)) throw parse_error("'" + where + ".margin' must be positive");
        cc.pairs.push_back(ControllingPair{region, margin});
    }
    return cc;
}

std::string serialize_layout(const OFarrellLayout& layout, double epsilon) {
    json doc;
    doc["format"] = kLayoutFormat;
    doc["epsilon"] = epsilon;
    doc["levels"] = layout.gamma.size();
    doc["gamma"] = layout.gamma;
    doc["tail_budget"] = layout.merged.tail_budget;
    doc["e_bands"] = json::array();
    for (const Annulus& a : layout.e_bands)
        doc["e_bands"].push_back(json{{"cx", a.center.x},
                                      {"cy", a.center.y},
                                      {"inner_r", a.inner_radius},
                                      {"outer_r", a.outer_radius}});
    return doc.dump(2) + "\n";
}

namespace {

const char* step_kind_name(StepKind k) {
    switch (k) {
    case StepKind::Combine: return "combine";
    case StepKind::PullIn: return "pull_in";
    case StepKind::AnnularPullIn: return "annular_pull_in";
    case StepKind::Delete: return "delete";
    }
    return "?";
}

} // namespace

std::string serialize_report(const ClassicalisationReport& rep) {
    json doc;
    doc["steps"] = json::array();
    for (const RewriteStep& s : rep.steps) {
        json sj{{"kind", step_kind_name(s.kind)},
                {"first", s.first},
                {"second", s.second},
                {"result", disk_to_json(s.result)}};
        if (s.annulus)
            sj["annulus"] = {{"inner_r", s.annulus->inner_radius},
                             {"outer_r", s.annulus->outer_radius}};
        doc["steps"].push_back(sj);
    }
    doc["delta1_before"] = rep.delta1_before;
    doc["delta1_after"] = rep.delta1_after;
    doc["delta2_before"] = rep.delta2_before;
    doc["delta2_after"] = rep.delta2_after;
    if (rep.annular_delta_before) doc["annular_delta_before"] = *rep.annular_delta_before;
    if (rep.annular_delta_after) doc["annular_delta_after"] = *rep.annular_delta_after;
    doc["preserved_map"] = json::array();
    for (const auto& [in, out] : rep.preserved_map)
        doc["preserved_map"].push_back(json::array({in, out}));
    doc["assertions_checked"] = {
        {"step_monotonicity", rep.assertions_checked.step_monotonicity},
        {"combined_in_dilation", rep.assertions_checked.combined_in_dilation},
        {"local_rho_monotone", rep.assertions_checked.local_rho_monotone}};
    doc["initial_significant"] = rep.initial_significant;
    return doc.dump(2) + "\n";
}

std::string serialize_stats(const CheeseStats& s) {
    json doc{{"delta1", s.delta1},
             {"delta2", s.delta2},
             {"rho", s.rho},
             {"mu", s.mu},
             {"significant_count", s.significant_count},
             {"classical", s.classical},
             {"semiclassical", s.semiclassical}};
    if (s.annular_rho) doc["annular_rho"] = *s.annular_rho;
    if (s.annular_delta) doc["annular_delta"] = *s.annular_delta;
    return doc.dump(2) + "\n";
}

std::string serialize_hallstrom(const HallstromReport& h) {
    json doc{{"band_local_rho", h.band_local_rho},
             {"weighted_partial_sum", h.weighted_partial_sum},
             {"tail_bound", h.tail_bound},
             {"total", h.total},
             {"epsilon", h.epsilon},
             {"within_epsilon", h.within_epsilon}};
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

Cheese load_cheese(const std::string& path) { return parse_cheese(read_file(path)); }

ControllingCollection load_regions(const std::string& path) {
    return parse_regions(read_file(path));
}

} // namespace swisscheese
