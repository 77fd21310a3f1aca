#pragma once

#include <map>
#include <string>

#include "swisscheese/construct.hpp"

namespace swisscheese {

/// Malformed or invalid input document.
class parse_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Metadata = std::map<std::string, std::string>;

// "swisscheese/1" documents. Round-trip is exact: doubles are emitted with
// enough decimal digits to reparse bit-identically.
std::string serialize_cheese(const Cheese& c, const Metadata& metadata = {});
Cheese parse_cheese(const std::string& text);

// "swisscheese-regions/1" documents (disk and annulus regions only).
std::string serialize_regions(const ControllingCollection& cc);
ControllingCollection parse_regions(const std::string& text);

// "swisscheese-ofarrell-layout/1": gamma table, E bands and tail bound for
// downstream verification of generated layouts.
std::string serialize_layout(const OFarrellLayout& layout, double epsilon);

std::string serialize_report(const ClassicalisationReport& rep);
std::string serialize_stats(const CheeseStats& s);
std::string serialize_hallstrom(const HallstromReport& h);

// File helpers; throw parse_error / std::runtime_error on I/O failure.
Cheese load_cheese(const std::string& path);
ControllingCollection load_regions(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct RenderOptions {
    const ControllingCollection* overlay_regions = nullptr;
};

/// Deterministic SVG: filled outer disk, white cutouts for the hole and the
/// deleted disks, optional outlined rings for controlling regions.
std::string render_svg(const Cheese& c, const RenderOptions& opts = {});

} // namespace swisscheese
