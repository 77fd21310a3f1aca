#pragma once

#include <cmath>
#include <stdexcept>

namespace swisscheese {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double t, Point p) { return {t * p.x, t * p.y}; }

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// A disk is a centre and a non-negative radius. Whether it stands for the
/// open or the closed disk is decided by each operation; a radius-zero disk
/// is degenerate (closed = {centre}, open = empty).
struct Disk {
    Point center;
    double radius = 0.0;

    friend bool operator==(const Disk&, const Disk&) = default;
};

/// Closed concentric annulus {z : inner_radius <= |z - center| <= outer_radius}.
struct Annulus {
    Point center;
    double inner_radius = 0.0;
    double outer_radius = 0.0;

    double width() const { return outer_radius - inner_radius; }

    friend bool operator==(const Annulus&, const Annulus&) = default;
};

// ---- containment / separation predicates ------------------------------

/// cb(inner) subseteq cb(outer), i.e. |z-w| <= s-r.
bool closed_in_closed(const Disk& inner, const Disk& outer);

/// ob(open_disk) and cb(closed_disk) disjoint, i.e. |w-z| >= s+r.
/// Requires open_disk.radius > 0.
bool open_outside_closed(const Disk& open_disk, const Disk& closed_disk);

/// cb(d1) meets cb(d2), i.e. |z-w| <= r1+r2.
bool closed_disks_intersect(const Disk& d1, const Disk& d2);

/// ob(inner) subseteq ob(outer); same distance criterion as the closed
/// case when inner.radius > 0.
bool open_in_open(const Disk& inner, const Disk& outer);

/// cb(inner) subseteq ob(outer), i.e. |z-w| < s-r strictly.
bool closed_in_open(const Disk& inner, const Disk& outer);

/// ob(d1) meets ob(d2); false if either is degenerate.
bool open_disks_intersect(const Disk& d1, const Disk& d2);

// ---- extremal disk operations ------------------------------------------

/// Smallest open disk containing ob(d1) and ob(d2). The centre lies on the
/// segment between the input centres. If the closed disks intersect, the
/// result radius is <= r1+r2, with equality exactly when the open disks are
/// disjoint. Rejects degenerate inputs.
Disk combine_disks(const Disk& d1, const Disk& d2);

/// Largest closed disk inside cb(outer) and disjoint from ob(obstacle).
/// Requires outer.radius > obstacle.radius > 0 and cb(obstacle) not
/// contained in ob(outer). Result radius is >= outer.radius -
/// obstacle.radius, with equality exactly when ob(obstacle) subseteq
/// ob(outer). If the obstacle misses cb(outer) entirely, returns outer.
Disk pull_in_disk(const Disk& outer, const Disk& obstacle);

/// Shrinks a closed annulus K so that it avoids ob(obstacle), keeping the
/// centre and losing at most 2*obstacle.radius of width. The obstacle must
/// satisfy 0 < radius < width(K)/2 and its closed disk must meet the
/// closure of the complement of K. If ob(obstacle) lies wholly in that
/// complement the annulus is returned unchanged.
Annulus annular_pull_in(const Annulus& annulus, const Disk& obstacle);

} // namespace swisscheese
