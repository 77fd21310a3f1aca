#include "swisscheese/cheese.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace swisscheese {

Region region_union(std::vector<Region> parts) {
    if (parts.empty())
        throw std::invalid_argument("region_union: union must be non-empty");
    return Region{std::move(parts)};
}

bool region_contains_point(const Region& r, Point p) {
    return std::visit(
        [&](const auto& shape) -> bool {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return distance(p, shape.center) <= shape.radius;
            } else if constexpr (std::is_same_v<T, Annulus>) {
                const double d = distance(p, shape.center);
                return shape.inner_radius <= d && d <= shape.outer_radius;
            } else {
                return std::any_of(shape.begin(), shape.end(), [&](const Region& part) {
                    return region_contains_point(part, p);
                });
            }
        },
        r.shape);
}

bool region_meets_closed_disk(const Region& r, const Disk& d) {
    return std::visit(
        [&](const auto& shape) -> bool {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return closed_disks_intersect(shape, d);
            } else if constexpr (std::is_same_v<T, Annulus>) {
                const double dist = distance(d.center, shape.center);
                return dist - d.radius <= shape.outer_radius &&
                       dist + d.radius >= shape.inner_radius;
            } else {
                return std::any_of(shape.begin(), shape.end(), [&](const Region& part) {
                    return region_meets_closed_disk(part, d);
                });
            }
        },
        r.shape);
}

double region_distance(const Region& r, Point p) {
    return std::visit(
        [&](const auto& shape) -> double {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return std::max(0.0, distance(p, shape.center) - shape.radius);
            } else if constexpr (std::is_same_v<T, Annulus>) {
                const double d = distance(p, shape.center);
                if (d < shape.inner_radius) return shape.inner_radius - d;
                if (d > shape.outer_radius) return d - shape.outer_radius;
                return 0.0;
            } else {
                double best = std::numeric_limits<double>::infinity();
                for (const Region& part : shape)
                    best = std::min(best, region_distance(part, p));
                return best;
            }
        },
        r.shape);
}

void validate(const Cheese& c) {
    if (!(c.outer.radius > 0.0) || !std::isfinite(c.outer.radius))
        throw std::invalid_argument("cheese: outer radius must be positive and finite");
    if (c.hole) {
        if (c.hole->center != c.outer.center)
            throw std::invalid_argument("cheese: hole must be concentric with the outer disk");
        if (!(c.hole->radius > 0.0 && c.hole->radius < c.outer.radius))
            throw std::invalid_argument("cheese: hole radius must lie in (0, outer.radius)");
    }
    for (const Disk& d : c.inner)
        if (!(d.radius >= 0.0) || !std::isfinite(d.radius) ||
            !std::isfinite(d.center.x) || !std::isfinite(d.center.y))
            throw std::invalid_argument("cheese: inner disks must be finite with radius >= 0");
    if (!(c.tail_budget >= 0.0) || c.tail_budget > c.outer.radius)
        throw std::invalid_argument("cheese: tail_budget must lie in [0, outer.radius]");
}

std::vector<std::size_t> significant_indices(const Cheese& c) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.inner.size(); ++i)
        if (c.inner[i].radius > 0.0) out.push_back(i);
    return out;
}

bool membership(const Cheese& c, Point p) {
    if (distance(p, c.outer.center) > c.outer.radius) return false;
    if (c.hole && distance(p, c.hole->center) < c.hole->radius) return false;
    for (const Disk& d : c.inner)
        if (distance(p, d.center) < d.radius) return false;
    return true;
}

namespace {

double power(double x, double alpha) {
    if (alpha == 1.0) return x;
    if (alpha == 2.0) return x * x;
    return std::pow(x, alpha);
}

} // namespace

double delta(const Cheese& c, double alpha) {
    if (!(alpha >= 1.0))
        throw std::invalid_argument("delta: alpha must be >= 1");
    double sum = 0.0;
    for (const Disk& d : c.inner) sum += power(d.radius, alpha);
    return power(c.outer.radius, alpha) - sum - power(c.tail_budget, alpha);
}

double rho(const Cheese& c) {
    double sum = 0.0;
    for (const Disk& d : c.inner) sum += d.radius;
    return sum + c.tail_budget;
}

double mu(const Cheese& c) {
    double best = 0.0;
    for (const Disk& d : c.inner) best = std::max(best, norm(d.center));
    return best;
}

double local_rho(const Cheese& c, const Region& e) {
    double sum = 0.0;
    for (const Disk& d : c.inner)
        if (d.radius > 0.0 && region_meets_closed_disk(e, d)) sum += d.radius;
    return sum + c.tail_budget;
}

double annular_rho(const Cheese& c) {
    if (!c.annular())
        throw std::invalid_argument("annular_rho: cheese has no hole");
    return rho(c);
}

double annular_delta(const Cheese& c) {
    if (!c.annular())
        throw std::invalid_argument("annular_delta: cheese has no hole");
    return c.outer.radius - c.hole->radius - 2.0 * rho(c);
}

double analytic_area(const Cheese& c) {
    const double hole_sq = c.hole ? c.hole->radius * c.hole->radius : 0.0;
    return M_PI * (delta(c, 2.0) - hole_sq);
}

namespace {

// Containment of a significant inner disk in the cheese body, closed-disk
// (classical) or open-disk (semiclassical) version.
bool disk_sits_inside(const Cheese& c, const Disk& d, bool strict) {
    const double dist_out = distance(d.center, c.outer.center);
    if (strict) {
        if (!(dist_out < c.outer.radius - d.radius)) return false;
    } else {
        if (!(dist_out <= c.outer.radius - d.radius)) return false;
    }
    if (c.hole) {
        const double dist_hole = distance(d.center, c.hole->center);
        if (strict) {
            if (!(dist_hole > c.hole->radius + d.radius)) return false;
        } else {
            if (!(dist_hole >= c.hole->radius + d.radius)) return false;
        }
    }
    return true;
}

bool classicality(const Cheese& c, bool strict) {
    if (!(c.outer.radius > 0.0)) return false;
    const auto sig = significant_indices(c);
    for (std::size_t idx : sig)
        if (!disk_sits_inside(c, c.inner[idx], strict)) return false;
    for (std::size_t a = 0; a < sig.size(); ++a)
        for (std::size_t b = a + 1; b < sig.size(); ++b) {
            const Disk& p = c.inner[sig[a]];
            const Disk& q = c.inner[sig[b]];
            const double d = distance(p.center, q.center);
            if (strict ? d <= p.radius + q.radius : d < p.radius + q.radius)
                return false;
        }
    return true;
}

} // namespace

bool is_classical(const Cheese& c) { return classicality(c, true); }
bool is_semiclassical(const Cheese& c) { return classicality(c, false); }

CheeseStats stats(const Cheese& c) {
    CheeseStats s;
    s.delta1 = delta(c, 1.0);
    s.delta2 = delta(c, 2.0);
    s.rho = rho(c);
    s.mu = mu(c);
    s.significant_count = significant_indices(c).size();
    s.classical = is_classical(c);
    s.semiclassical = is_semiclassical(c);
    if (c.annular()) {
        s.annular_rho = annular_rho(c);
        s.annular_delta = annular_delta(c);
    }
    return s;
}

std::pair<Cheese, std::vector<std::size_t>> remove_redundancy_traced(const Cheese& c) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < c.inner.size(); ++i) {
        const Disk& d = c.inner[i];
        if (d.radius <= 0.0) continue;
        // Drop disks whose open disk misses the outer closed disk.
        if (distance(d.center, c.outer.center) >= c.outer.radius + d.radius) continue;
        order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return c.inner[a].radius > c.inner[b].radius;
    });

    Cheese out{c.outer, c.hole, {}, c.tail_budget};
    std::vector<std::size_t> trace;
    for (std::size_t idx : order) {
        const Disk& d = c.inner[idx];
        const bool swallowed = std::any_of(
            out.inner.begin(), out.inner.end(),
            [&](const Disk& kept) { return open_in_open(d, kept); });
        if (!swallowed) {
            out.inner.push_back(d);
            trace.push_back(idx);
        }
    }
    return {std::move(out), std::move(trace)};
}

Cheese remove_redundancy(const Cheese& c) { return remove_redundancy_traced(c).first; }

Cheese insert_disk(const Cheese& c, const Disk& d, std::size_t at) {
    if (at > c.inner.size())
        throw std::out_of_range("insert_disk: index out of range");
    Cheese out = c;
    out.inner.insert(out.inner.begin() + static_cast<std::ptrdiff_t>(at), d);
    return out;
}

Cheese delete_disk(const Cheese& c, std::size_t at) {
    if (at >= c.inner.size())
        throw std::out_of_range("delete_disk: index out of range");
    Cheese out = c;
    out.inner.erase(out.inner.begin() + static_cast<std::ptrdiff_t>(at));
    return out;
}

std::size_t sorted_insert_position(const std::vector<Disk>& disks, double radius) {
    std::size_t p = 0;
    while (p < disks.size() && disks[p].radius > radius) ++p;
    return p;
}

Cheese replace_disks(const Cheese& c, std::size_t i, std::size_t j, const Disk& d) {
    if (i == j)
        throw std::invalid_argument("replace_disks: indices must differ");
    if (i >= c.inner.size() || j >= c.inner.size())
        throw std::out_of_range("replace_disks: index out of range");
    for (std::size_t k = 0; k + 1 < c.inner.size(); ++k)
        if (c.inner[k].radius < c.inner[k + 1].radius)
            throw std::invalid_argument("replace_disks: radius sequence must be non-increasing");

    Cheese out = delete_disk(delete_disk(c, std::max(i, j)), std::min(i, j));
    return insert_disk(out, d, sorted_insert_position(out.inner, d.radius));
}

} // namespace swisscheese
