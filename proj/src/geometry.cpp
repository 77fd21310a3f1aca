#include "swisscheese/geometry.hpp"

namespace swisscheese {

bool closed_in_closed(const Disk& inner, const Disk& outer) {
    return distance(inner.center, outer.center) <= outer.radius - inner.radius;
}

bool open_outside_closed(const Disk& open_disk, const Disk& closed_disk) {
    if (open_disk.radius <= 0.0)
        throw std::invalid_argument("open_outside_closed: open disk must be non-degenerate");
    return distance(open_disk.center, closed_disk.center) >=
           closed_disk.radius + open_disk.radius;
}

bool closed_disks_intersect(const Disk& d1, const Disk& d2) {
    return distance(d1.center, d2.center) <= d1.radius + d2.radius;
}

bool open_in_open(const Disk& inner, const Disk& outer) {
    if (inner.radius <= 0.0) return true; // empty set
    return distance(inner.center, outer.center) <= outer.radius - inner.radius;
}

bool closed_in_open(const Disk& inner, const Disk& outer) {
    return distance(inner.center, outer.center) < outer.radius - inner.radius;
}

bool open_disks_intersect(const Disk& d1, const Disk& d2) {
    if (d1.radius <= 0.0 || d2.radius <= 0.0) return false;
    return distance(d1.center, d2.center) < d1.radius + d2.radius;
}

Disk combine_disks(const Disk& d1, const Disk& d2) {
    if (d1.radius <= 0.0 || d2.radius <= 0.0)
        throw std::invalid_argument("combine_disks: both disks must be non-degenerate");

    // Containment (which also covers coincident centres): the larger disk
    // is already minimal.
    if (open_in_open(d1, d2)) return d2;
    if (open_in_open(d2, d1)) return d1;

    const double d = distance(d1.center, d2.center);
    const double r = (d1.radius + d2.radius + d) / 2.0;
    const Point dir = (1.0 / d) * (d2.center - d1.center);
    return Disk{d1.center + (r - d1.radius) * dir, r};
}

Disk pull_in_disk(const Disk& outer, const Disk& obstacle) {
    if (!(outer.radius > obstacle.radius && obstacle.radius > 0.0))
        throw std::invalid_argument(
            "pull_in_disk: requires outer.radius > obstacle.radius > 0");
    if (closed_in_open(obstacle, outer))
        throw std::invalid_argument(
            "pull_in_disk: cb(obstacle) must not be contained in ob(outer)");

    const double d = distance(outer.center, obstacle.center);
    if (d >= outer.radius + obstacle.radius) return outer; // already disjoint

    // Non-containment forces d >= r1 - r2 > 0, so the direction is defined.
    if (d <= 0.0)
        throw std::logic_error("pull_in_disk: coincident centres violate the hypotheses");

    const double r = (outer.radius + d - obstacle.radius) / 2.0;
    const Point away = (1.0 / d) * (outer.center - obstacle.center);
    return Disk{outer.center + (outer.radius - r) * away, r};
}

Annulus annular_pull_in(const Annulus& annulus, const Disk& obstacle) {
    const double r0 = annulus.outer_radius;
    const double r1 = annulus.inner_radius;
    const double s = obstacle.radius;
    if (!(s > 0.0 && s < (r0 - r1) / 2.0))
        throw std::invalid_argument(
            "annular_pull_in: requires 0 < obstacle.radius < width/2");

    const double d = distance(obstacle.center, annulus.center);

    // ob(obstacle) wholly inside the complement of K: nothing to do.
    if (d <= r1 - s || d >= r0 + s) return annulus;

    if (d <= r1 + s) {
        // cb(obstacle) meets the closed hole: grow the hole.
        return Annulus{annulus.center, d + s, r0};
    }
    if (d + s >= r0) {
        // cb(obstacle) reaches the outer circle (the open disk intrudes from
        // the boundary side): shrink the outside.
        return Annulus{annulus.center, r1, d - s};
    }
    throw std::invalid_argument(
        "annular_pull_in: cb(obstacle) does not meet the closure of the complement");
}

} // namespace swisscheese
