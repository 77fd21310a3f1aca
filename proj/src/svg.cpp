#include <cstdio>
#include <sstream>

#include "swisscheese/serialize.hpp"

namespace swisscheese {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Circle as a two-arc subpath so several circles can share one even-odd path.
void circle_subpath(std::ostream& os, Point c, double r) {
    os << "M " << fmt(c.x + r) << " " << fmt(c.y) << " A " << fmt(r) << " " << fmt(r)
       << " 0 1 0 " << fmt(c.x - r) << " " << fmt(c.y) << " A " << fmt(r) << " " << fmt(r)
       << " 0 1 0 " << fmt(c.x + r) << " " << fmt(c.y) << " Z ";
}

void stroked_circle(std::ostream& os, Point c, double r, const char* stroke,
                    double stroke_width, const char* dash) {
    os << "  <circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\"" << fmt(r)
       << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
       << fmt(stroke_width) << "\"";
    if (dash) os << " stroke-dasharray=\"" << dash << "\"";
    os << "/>\n";
}

void region_rings(std::ostream& os, const Region& region, double margin, double sw) {
    if (const Disk* d = std::get_if<Disk>(&region.shape)) {
        stroked_circle(os, d->center, d->radius, "#1f6feb", sw, nullptr);
        stroked_circle(os, d->center, d->radius + margin, "#1f6feb", sw, "4 3");
    } else if (const Annulus* a = std::get_if<Annulus>(&region.shape)) {
        stroked_circle(os, a->center, a->inner_radius, "#1f6feb", sw, nullptr);
        stroked_circle(os, a->center, a->outer_radius, "#1f6feb", sw, nullptr);
        if (a->inner_radius - margin > 0.0)
            stroked_circle(os, a->center, a->inner_radius - margin, "#1f6feb", sw, "4 3");
        stroked_circle(os, a->center, a->outer_radius + margin, "#1f6feb", sw, "4 3");
    } else if (const auto* parts = std::get_if<Region::List>(&region.shape)) {
        for (const Region& part : *parts) region_rings(os, part, margin, sw);
    }
}

} // namespace

std::string render_svg(const Cheese& c, const RenderOptions& opts) {
    const double r = c.outer.radius;
    const double pad = 0.05 * r;
    const double x0 = c.outer.center.x - r - pad;
    const double y0 = c.outer.center.y - r - pad;
    const double side = 2.0 * (r + pad);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(x0) << " "
       << fmt(y0) << " " << fmt(side) << " " << fmt(side) << "\">\n";

    // Cheese body: outer disk with the hole as an even-odd cutout.
    os << "  <path fill=\"#e6b84c\" fill-rule=\"evenodd\" d=\"";
    circle_subpath(os, c.outer.center, c.outer.radius);
    if (c.hole) circle_subpath(os, c.hole->center, c.hole->radius);
    os << "\"/>\n";

    // Deleted disks on top; overlaps union up correctly in white.
    for (const Disk& d : c.inner) {
        if (d.radius <= 0.0) continue;
        os << "  <circle cx=\"" << fmt(d.center.x) << "\" cy=\"" << fmt(d.center.y)
           << "\" r=\"" << fmt(d.radius) << "\" fill=\"#ffffff\"/>\n";
    }

    stroked_circle(os, c.outer.center, c.outer.radius, "#333333", 0.004 * r, nullptr);
    if (c.hole)
        stroked_circle(os, c.hole->center, c.hole->radius, "#333333", 0.004 * r, nullptr);

    if (opts.overlay_regions)
        for (const ControllingPair& p : opts.overlay_regions->pairs)
            region_rings(os, p.k_region, p.margin, 0.003 * r);

    os << "</svg>\n";
    return os.str();
}

} // namespace swisscheese
