#include "swisscheese/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace swisscheese {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t SampleStream::bits(std::uint64_t i) const {
    return splitmix64(seed_ + i * 0x9e3779b97f4a7c15ULL);
}

double SampleStream::uniform01(std::uint64_t i) const {
    return static_cast<double>(bits(i) >> 11) * 0x1.0p-53;
}

Point Rng::in_disk(const Disk& d) {
    for (;;) {
        const double x = uniform(-1.0, 1.0);
        const double y = uniform(-1.0, 1.0);
        if (x * x + y * y <= 1.0)
            return {d.center.x + d.radius * x, d.center.y + d.radius * y};
    }
}

namespace {

Box outer_box(const Cheese& c) {
    const Disk& o = c.outer;
    return Box{{o.center.x - o.radius, o.center.y - o.radius},
               {o.center.x + o.radius, o.center.y + o.radius}};
}

Box join(const Box& a, const Box& b) {
    return Box{{std::min(a.min.x, b.min.x), std::min(a.min.y, b.min.y)},
               {std::max(a.max.x, b.max.x), std::max(a.max.y, b.max.y)}};
}

Point sample_in_box(const SampleStream& s, const Box& box, std::uint64_t i) {
    return {s.uniform(2 * i, box.min.x, box.max.x),
            s.uniform(2 * i + 1, box.min.y, box.max.y)};
}

} // namespace

AreaEstimate mc_area(const Cheese& c, const SampleConfig& cfg) {
    const Box box = cfg.bounding_box.value_or(outer_box(c));
    if (!(box.max.x > box.min.x && box.max.y > box.min.y))
        throw std::invalid_argument("mc_area: degenerate bounding box");
    const double box_area = (box.max.x - box.min.x) * (box.max.y - box.min.y);
    const SampleStream stream(cfg.seed);

    std::size_t hits = 0;
    for (std::size_t i = 0; i < cfg.n_points; ++i)
        if (membership(c, sample_in_box(stream, box, i))) ++hits;

    const double n = static_cast<double>(cfg.n_points);
    const double p = static_cast<double>(hits) / n;
    AreaEstimate est;
    est.value = p * box_area;
    est.std_error = box_area * std::sqrt(p * (1.0 - p) / n);
    est.n_points = cfg.n_points;
    est.exact = c.tail_budget == 0.0;
    return est;
}

ContainmentResult containment_check(const Cheese& sub, const Cheese& sup,
                                    const SampleConfig& cfg) {
    const Box box = cfg.bounding_box.value_or(outer_box(sub));
    const SampleStream stream(cfg.seed);
    for (std::size_t i = 0; i < cfg.n_points; ++i) {
        const Point p = sample_in_box(stream, box, i);
        if (membership(sub, p) && !membership(sup, p)) return {false, p};
    }
    return {true, std::nullopt};
}

ContainmentResult equality_outside_region(const Cheese& a, const Cheese& b,
                                          const Region& v, const SampleConfig& cfg) {
    const Box box = cfg.bounding_box.value_or(join(outer_box(a), outer_box(b)));
    const SampleStream stream(cfg.seed);
    for (std::size_t i = 0; i < cfg.n_points; ++i) {
        const Point p = sample_in_box(stream, box, i);
        if (region_contains_point(v, p)) continue;
        if (membership(a, p) != membership(b, p)) return {false, p};
    }
    return {true, std::nullopt};
}

namespace {

// Radius needed at centre c to enclose both open disks.
double enclosing_radius(Point c, const Disk& d1, const Disk& d2) {
    return std::max(distance(c, d1.center) + d1.radius,
                    distance(c, d2.center) + d2.radius);
}

} // namespace

Disk brute_min_enclosing(const Disk& d1, const Disk& d2) {
    if (d1.radius <= 0.0 || d2.radius <= 0.0)
        throw std::invalid_argument("brute_min_enclosing: degenerate input");
    if (open_in_open(d1, d2)) return d2;
    if (open_in_open(d2, d1)) return d1;

    // The optimum centre lies on the segment between the two centres;
    // the objective is convex along it, so ternary search converges.
    double lo = 0.0, hi = 1.0;
    const auto at = [&](double t) { return d1.center + t * (d2.center - d1.center); };
    for (int iter = 0; iter < 200; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (enclosing_radius(at(m1), d1, d2) <= enclosing_radius(at(m2), d1, d2))
            hi = m2;
        else
            lo = m1;
    }
    const Point c = at((lo + hi) / 2.0);
    return Disk{c, enclosing_radius(c, d1, d2)};
}

Disk brute_max_avoiding(const Disk& outer, const Disk& obstacle) {
    if (!(outer.radius > obstacle.radius && obstacle.radius > 0.0))
        throw std::invalid_argument("brute_max_avoiding: invalid radii");
    const double d = distance(outer.center, obstacle.center);
    if (d >= outer.radius + obstacle.radius) return outer;
    if (d < outer.radius - obstacle.radius)
        throw std::invalid_argument("brute_max_avoiding: obstacle inside open outer disk");

    // Centre at distance t beyond outer.center, away from the obstacle.
    // Feasible radius is min(stay inside, stay clear); concave in t.
    const Point away = (1.0 / d) * (outer.center - obstacle.center);
    const auto radius_at = [&](double t) {
        return std::min(outer.radius - t, t + d - obstacle.radius);
    };
    double lo = 0.0, hi = outer.radius;
    for (int iter = 0; iter < 200; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (radius_at(m1) >= radius_at(m2))
            hi = m2;
        else
            lo = m1;
    }
    const double t = (lo + hi) / 2.0;
    return Disk{outer.center + t * away, radius_at(t)};
}

Disk brute_min_enclosing_grid(const Disk& d1, const Disk& d2) {
    if (open_in_open(d1, d2)) return d2;
    if (open_in_open(d2, d1)) return d1;

    Point lo{std::min(d1.center.x, d2.center.x), std::min(d1.center.y, d2.center.y)};
    Point hi{std::max(d1.center.x, d2.center.x), std::max(d1.center.y, d2.center.y)};
    Point best = d1.center;
    double best_r = enclosing_radius(best, d1, d2);
    // Halve the window each round; a faster shrink loses the optimum, which
    // drifts along the kink valley of the max().
    for (int round = 0; round < 60; ++round) {
        constexpr int kGrid = 64;
        for (int i = 0; i <= kGrid; ++i)
            for (int j = 0; j <= kGrid; ++j) {
                const Point c{lo.x + (hi.x - lo.x) * i / kGrid,
                              lo.y + (hi.y - lo.y) * j / kGrid};
                const double r = enclosing_radius(c, d1, d2);
                if (r < best_r) {
                    best_r = r;
                    best = c;
                }
            }
        const Point span{(hi.x - lo.x) / 4, (hi.y - lo.y) / 4};
        lo = best - span;
        hi = best + span;
    }
    return Disk{best, best_r};
}

} // namespace swisscheese
