#include "swisscheese/classicalise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace swisscheese {

namespace {

constexpr double kGeomTol = 1e-9;   // containment / postcondition slack
constexpr double kEqTol = 1e-12;    // equality detection in step invariants

double scaled_tol(double tol, double magnitude) {
    return tol * std::max(1.0, std::abs(magnitude));
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// ---- circular arcs ------------------------------------------------------
//
// The violation regions (intersection lenses and boundary escapes) are
// bounded by at most two circular arcs, so the range of |z - q| over such a
// region reduces to ranges over arcs.

struct Arc {
    Point center;
    double radius;
    double mid;  // angle of the arc midpoint
    double half; // half-width in radians; pi means the full circle
};

double angle_of(Point v) { return std::atan2(v.y, v.x); }

Point at_angle(const Arc& a, double theta) {
    return {a.center.x + a.radius * std::cos(theta),
            a.center.y + a.radius * std::sin(theta)};
}

bool arc_contains_angle(const Arc& a, double theta) {
    return std::abs(std::remainder(theta - a.mid, 2.0 * M_PI)) <= a.half;
}

// Portion of the circle |z - c| = r with |z - p| <= t.
std::optional<Arc> arc_within(const Disk& circle, Point p, double t) {
    const double d = distance(circle.center, p);
    if (d == 0.0) {
        if (circle.radius <= t) return Arc{circle.center, circle.radius, 0.0, M_PI};
        return std::nullopt;
    }
    const double kappa =
        (d * d + circle.radius * circle.radius - t * t) / (2.0 * d * circle.radius);
    if (kappa > 1.0) return std::nullopt;
    if (kappa <= -1.0) return Arc{circle.center, circle.radius, 0.0, M_PI};
    return Arc{circle.center, circle.radius, angle_of(p - circle.center),
               std::acos(kappa)};
}

// Portion of the circle |z - c| = r with |z - p| >= t.
std::optional<Arc> arc_outside(const Disk& circle, Point p, double t) {
    const double d = distance(circle.center, p);
    if (d == 0.0) {
        if (circle.radius >= t) return Arc{circle.center, circle.radius, 0.0, M_PI};
        return std::nullopt;
    }
    const double kappa =
        (d * d + circle.radius * circle.radius - t * t) / (2.0 * d * circle.radius);
    if (kappa < -1.0) return std::nullopt;
    if (kappa >= 1.0) return Arc{circle.center, circle.radius, 0.0, M_PI};
    return Arc{circle.center, circle.radius, angle_of(circle.center - p),
               M_PI - std::acos(kappa)};
}

struct DistRange {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void merge(const DistRange& o) {
        lo = std::min(lo, o.lo);
        hi = std::max(hi, o.hi);
    }
};

DistRange arc_distance_range(const Arc& a, Point q) {
    DistRange r;
    const double d = distance(q, a.center);
    if (d == 0.0) {
        r.include(a.radius);
        return r;
    }
    const double toward = angle_of(q - a.center);
    r.include(distance(at_angle(a, a.mid - a.half), q));
    r.include(distance(at_angle(a, a.mid + a.half), q));
    if (arc_contains_angle(a, toward)) r.include(std::abs(d - a.radius));
    if (arc_contains_angle(a, toward + M_PI)) r.include(d + a.radius);
    return r;
}

// A violation region described by its boundary arcs plus a membership test
// (distance from an interior query point is zero).
struct ViolationShape {
    std::vector<Arc> arcs;
    std::function<bool(Point)> contains;
};

ViolationShape lens_shape(const Disk& d1, const Disk& d2) {
    ViolationShape s;
    s.contains = [d1, d2](Point p) {
        return distance(p, d1.center) <= d1.radius && distance(p, d2.center) <= d2.radius;
    };
    if (closed_in_closed(d1, d2)) {
        s.arcs.push_back(Arc{d1.center, d1.radius, 0.0, M_PI});
        return s;
    }
    if (closed_in_closed(d2, d1)) {
        s.arcs.push_back(Arc{d2.center, d2.radius, 0.0, M_PI});
        return s;
    }
    if (auto a = arc_within(d1, d2.center, d2.radius)) s.arcs.push_back(*a);
    if (auto a = arc_within(d2, d1.center, d1.radius)) s.arcs.push_back(*a);
    return s;
}

// cb(k) minus ob(outer).
ViolationShape escape_shape(const Disk& k, const Disk& outer) {
    ViolationShape s;
    s.contains = [k, outer](Point p) {
        return distance(p, k.center) <= k.radius &&
               distance(p, outer.center) >= outer.radius;
    };
    if (auto a = arc_outside(k, outer.center, outer.radius)) s.arcs.push_back(*a);
    if (auto a = arc_within(Disk{outer.center, outer.radius}, k.center, k.radius))
        s.arcs.push_back(*a);
    return s;
}

DistRange shape_distance_range(const ViolationShape& s, Point q) {
    DistRange r;
    for (const Arc& a : s.arcs) r.merge(arc_distance_range(a, q));
    if (s.contains(q)) r.lo = 0.0;
    return r;
}

std::vector<Point> shape_boundary_samples(const ViolationShape& s, std::size_t total) {
    std::vector<Point> pts;
    if (s.arcs.empty()) return pts;
    const std::size_t per = std::max<std::size_t>(1, total / s.arcs.size());
    for (const Arc& a : s.arcs)
        for (std::size_t i = 0; i < per; ++i) {
            const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(per);
            pts.push_back(at_angle(a, a.mid - a.half + 2.0 * a.half * t));
        }
    return pts;
}

bool region_contains_shape(const Region& f, const ViolationShape& shape) {
    return std::visit(
        [&](const auto& component) -> bool {
            using T = std::decay_t<decltype(component)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return shape_distance_range(shape, component.center).hi <=
                       component.radius + kGeomTol;
            } else if constexpr (std::is_same_v<T, Annulus>) {
                const DistRange r = shape_distance_range(shape, component.center);
                return r.lo >= component.inner_radius - kGeomTol &&
                       r.hi <= component.outer_radius + kGeomTol;
            } else {
                // A union contains the shape when a single component does;
                // otherwise fall back to sampling the shape boundary.
                for (const Region& part : component)
                    if (region_contains_shape(part, shape)) return true;
                const auto samples = shape_boundary_samples(shape, 512);
                if (samples.empty()) return false;
                return std::all_of(samples.begin(), samples.end(), [&](Point p) {
                    return region_distance(f, p) <= kGeomTol;
                });
            }
        },
        f.shape);
}

} // namespace

// ---- error set ----------------------------------------------------------

ErrorSet error_set(const Cheese& c) {
    ErrorSet es;
    const auto sig = significant_indices(c);
    for (std::size_t a = 0; a < sig.size(); ++a)
        for (std::size_t b = a + 1; b < sig.size(); ++b)
            if (closed_disks_intersect(c.inner[sig[a]], c.inner[sig[b]]))
                es.pair_violations.emplace_back(sig[a], sig[b]);
    for (std::size_t k : sig)
        if (!closed_in_open(c.inner[k], c.outer)) es.boundary_violations.push_back(k);
    return es;
}

bool error_set_contained(const Cheese& c, const Region& f) {
    const ErrorSet es = error_set(c);
    for (const auto& [i, j] : es.pair_violations)
        if (!region_contains_shape(f, lens_shape(c.inner[i], c.inner[j]))) return false;
    for (std::size_t k : es.boundary_violations)
        if (!region_contains_shape(f, escape_shape(c.inner[k], c.outer))) return false;
    return true;
}

// ---- dilations ----------------------------------------------------------

bool dilation_meets_closed_disk(const ControllingPair& p, const Disk& d) {
    return region_distance(p.k_region, d.center) < p.margin + d.radius;
}

bool dilation_contains_point(const ControllingPair& p, Point pt) {
    return region_distance(p.k_region, pt) < p.margin;
}

double local_rho_dilation(const Cheese& c, const ControllingPair& p) {
    double sum = 0.0;
    for (const Disk& d : c.inner)
        if (d.radius > 0.0 && dilation_meets_closed_disk(p, d)) sum += d.radius;
    return sum + c.tail_budget;
}

namespace {

bool leaf_dilation_contains(const Region& k, double margin, const Disk& d) {
    return std::visit(
        [&](const auto& shape) -> bool {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return distance(d.center, shape.center) + d.radius <
                       shape.radius + margin;
            } else if constexpr (std::is_same_v<T, Annulus>) {
                const double dist = distance(d.center, shape.center);
                return dist + d.radius < shape.outer_radius + margin &&
                       shape.inner_radius - margin < dist - d.radius;
            } else {
                for (const Region& part : shape)
                    if (leaf_dilation_contains(part, margin, d)) return true;
                return false;
            }
        },
        k.shape);
}

// The dilation of any leaf is sandwiched between these radii about its
// centre (inner = 0 for disks). Used for conservative disjointness tests.
struct DilationLeaf {
    Point center;
    double outer;
    double inner;
};

void collect_dilation_leaves(const Region& k, double margin, std::vector<DilationLeaf>& out) {
    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Disk>) {
                out.push_back({shape.center, shape.radius + margin, 0.0});
            } else if constexpr (std::is_same_v<T, Annulus>) {
                out.push_back({shape.center, shape.outer_radius + margin,
                               std::max(0.0, shape.inner_radius - margin)});
            } else {
                for (const Region& part : shape)
                    collect_dilation_leaves(part, margin, out);
            }
        },
        k.shape);
}

bool leaves_disjoint(const DilationLeaf& a, const DilationLeaf& b) {
    const double d = distance(a.center, b.center);
    if (d >= a.outer + b.outer) return true; // separated outer circles
    if (d + a.outer <= b.inner) return true; // a sits inside b's hole
    if (d + b.outer <= a.inner) return true; // b sits inside a's hole
    return false;
}

} // namespace

bool dilation_contains_closed_disk(const ControllingPair& p, const Disk& d) {
    if (leaf_dilation_contains(p.k_region, p.margin, d)) return true;
    if (!std::holds_alternative<Region::List>(p.k_region.shape)) return false;
    // Sampling fallback for a closed disk straddling union components.
    if (!(region_distance(p.k_region, d.center) < p.margin)) return false;
    constexpr int kSamples = 512;
    for (int i = 0; i < kSamples; ++i) {
        const double th = 2.0 * M_PI * (i + 0.5) / kSamples;
        const Point z{d.center.x + d.radius * std::cos(th),
                      d.center.y + d.radius * std::sin(th)};
        if (!(region_distance(p.k_region, z) < p.margin)) return false;
    }
    return true;
}

bool dilation_inside_open_disk(const ControllingPair& p, const Disk& outer) {
    const auto inside = [&](const auto& self, const Region& k) -> bool {
        return std::visit(
            [&](const auto& shape) -> bool {
                using T = std::decay_t<decltype(shape)>;
                if constexpr (std::is_same_v<T, Disk>) {
                    return distance(shape.center, outer.center) + shape.radius + p.margin <=
                           outer.radius;
                } else if constexpr (std::is_same_v<T, Annulus>) {
                    return distance(shape.center, outer.center) + shape.outer_radius +
                               p.margin <=
                           outer.radius;
                } else {
                    return std::all_of(shape.begin(), shape.end(), [&](const Region& part) {
                        return self(self, part);
                    });
                }
            },
            k.shape);
    };
    return inside(inside, p.k_region);
}

bool dilations_disjoint(const ControllingPair& a, const ControllingPair& b) {
    std::vector<DilationLeaf> la, lb;
    collect_dilation_leaves(a.k_region, a.margin, la);
    collect_dilation_leaves(b.k_region, b.margin, lb);
    for (const DilationLeaf& x : la)
        for (const DilationLeaf& y : lb)
            if (!leaves_disjoint(x, y)) return false;
    return true;
}

bool dilation_inside_annulus(const ControllingPair& p, const Annulus& band) {
    std::vector<DilationLeaf> leaves;
    collect_dilation_leaves(p.k_region, p.margin, leaves);
    for (const DilationLeaf& l : leaves) {
        const double d = distance(l.center, band.center);
        if (d == 0.0) {
            if (!(l.inner >= band.inner_radius && l.outer <= band.outer_radius))
                return false;
        } else {
            // Conservative: bound the leaf by its outer disk.
            if (!(d - l.outer >= band.inner_radius && d + l.outer <= band.outer_radius))
                return false;
        }
    }
    return true;
}

bool dilation_disjoint_from_annulus(const ControllingPair& p, const Annulus& band) {
    std::vector<DilationLeaf> leaves;
    collect_dilation_leaves(p.k_region, p.margin, leaves);
    for (const DilationLeaf& l : leaves) {
        const double d = distance(l.center, band.center);
        if (d == 0.0) {
            if (!(l.outer <= band.inner_radius || l.inner >= band.outer_radius))
                return false;
        } else {
            if (!(d + l.outer <= band.inner_radius || d - l.outer >= band.outer_radius))
                return false;
        }
    }
    return true;
}

// ---- rewrite engine -----------------------------------------------------

namespace {

enum class Mode { Plain, Controlled, Annular };

struct Slot {
    Disk disk;
    std::optional<std::size_t> origin;
    bool alive = true;
};

class Engine {
public:
    Engine(Mode mode, const Cheese& reduced, const std::vector<std::size_t>& origins,
           const ControllingCollection* cc, const RewriteOptions& opts)
        : mode_(mode), outer_(reduced.outer), hole_(reduced.hole),
          tail_(reduced.tail_budget), cc_(cc), opts_(opts) {
        slots_.reserve(reduced.inner.size());
        for (std::size_t i = 0; i < reduced.inner.size(); ++i)
            slots_.push_back(Slot{reduced.inner[i], origins[i], true});
        budget_ = slots_.size();
        scan_all();
    }

    void run(ClassicalisationReport& rep) {
        while (true) {
            if (auto pr = pick_pair()) {
                apply_combine(pr->first, pr->second, rep);
            } else if (auto single = pick_single()) {
                apply_single(*single, rep);
            } else {
                break;
            }
            if (rep.steps.size() > budget_)
                throw assertion_error("rewriter exceeded its step budget");
        }
    }

    Cheese assemble() const {
        Cheese out{outer_, hole_, {}, tail_};
        for (std::size_t id : sorted_alive()) out.inner.push_back(slots_[id].disk);
        return out;
    }

    /// (input index, output position) for inner disks carried over verbatim.
    /// In particular every disk whose closed disk misses V(C) appears here.
    std::vector<std::pair<std::size_t, std::size_t>> preserved() const {
        const auto ids = sorted_alive();
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t pos = 0; pos < ids.size(); ++pos) {
            const Slot& s = slots_[ids[pos]];
            if (s.origin) out.emplace_back(*s.origin, pos);
        }
        return out;
    }

private:
    std::vector<std::size_t> sorted_alive() const {
        std::vector<std::size_t> ids;
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (slots_[i].alive) ids.push_back(i);
        std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
            return slots_[a].disk.radius > slots_[b].disk.radius;
        });
        return ids;
    }

    bool pair_violates(std::size_t a, std::size_t b) const {
        return closed_disks_intersect(slots_[a].disk, slots_[b].disk);
    }

    bool single_violates(std::size_t k) const {
        const Disk& d = slots_[k].disk;
        if (mode_ == Mode::Plain) return !closed_in_open(d, outer_);
        // Annular: the closed disk meets the closure of the complement of K.
        const double dist = distance(d.center, outer_.center);
        return dist <= hole_->radius + d.radius || dist + d.radius >= outer_.radius;
    }

    void scan_all() {
        pair_v_.clear();
        for (std::size_t a = 0; a < slots_.size(); ++a)
            for (std::size_t b = a + 1; b < slots_.size(); ++b)
                if (pair_violates(a, b)) pair_v_.emplace_back(a, b);
        rescan_singles();
        if (mode_ == Mode::Controlled)
            for (const Slot& s : slots_)
                if (s.alive && !closed_in_open(s.disk, outer_))
                    throw assertion_error(
                        "controlled rewriting found a boundary escape that the "
                        "error-set precondition should have excluded");
    }

    void rescan_singles() {
        single_v_.clear();
        if (mode_ == Mode::Controlled) return;
        for (std::size_t k = 0; k < slots_.size(); ++k)
            if (slots_[k].alive && single_violates(k)) single_v_.push_back(k);
    }

    void drop_dead_entries() {
        std::erase_if(pair_v_, [&](const auto& pr) {
            return !slots_[pr.first].alive || !slots_[pr.second].alive;
        });
        std::erase_if(single_v_, [&](std::size_t k) { return !slots_[k].alive; });
    }

    std::optional<std::pair<std::size_t, std::size_t>> pick_pair() {
        drop_dead_entries();
        if (pair_v_.empty()) return std::nullopt;
        if (opts_.randomized)
            return pair_v_[static_cast<std::size_t>(
                splitmix64(opts_.seed + rng_counter_++) % pair_v_.size())];
        auto best = pair_v_.front();
        double best_sum = slots_[best.first].disk.radius + slots_[best.second].disk.radius;
        for (const auto& pr : pair_v_) {
            const double sum =
                slots_[pr.first].disk.radius + slots_[pr.second].disk.radius;
            if (sum > best_sum) {
                best = pr;
                best_sum = sum;
            }
        }
        return best;
    }

    std::optional<std::size_t> pick_single() {
        drop_dead_entries();
        if (single_v_.empty()) return std::nullopt;
        if (opts_.randomized)
            return single_v_[static_cast<std::size_t>(
                splitmix64(opts_.seed + rng_counter_++) % single_v_.size())];
        std::size_t best = single_v_.front();
        for (std::size_t k : single_v_)
            if (slots_[k].disk.radius > slots_[best].disk.radius) best = k;
        return best;
    }

    /// Position the slot holds in the assembled inner list right now.
    std::size_t position_of(std::size_t id) const {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < slots_.size(); ++i) {
            if (!slots_[i].alive || i == id) continue;
            if (slots_[i].disk.radius > slots_[id].disk.radius ||
                (slots_[i].disk.radius == slots_[id].disk.radius && i < id))
                ++pos;
        }
        return pos;
    }

    // Every step must raise the budget functional, or preserve it (within
    // rounding) while strictly lowering delta2.
    void check_step(double gain, double delta2_drop, ClassicalisationReport& rep) const {
        const double tol = scaled_tol(kEqTol, outer_.radius);
        if (gain < -tol)
            throw assertion_error("rewrite step decreased the discrepancy");
        if (gain <= tol && !(delta2_drop > 0.0))
            throw assertion_error("discrepancy-preserving step failed to decrease delta2");
        ++rep.assertions_checked.step_monotonicity;
    }

    void apply_combine(std::size_t a, std::size_t b, ClassicalisationReport& rep) {
        const Disk A = slots_[a].disk;
        const Disk B = slots_[b].disk;
        const Disk D = combine_disks(A, B);

        int anchor = -1;
        if (mode_ == Mode::Controlled) {
            for (std::size_t m = 0; m < cc_->pairs.size() && anchor < 0; ++m)
                if (region_meets_closed_disk(cc_->pairs[m].k_region, A) ||
                    region_meets_closed_disk(cc_->pairs[m].k_region, B))
                    anchor = static_cast<int>(m);
            if (anchor < 0)
                throw assertion_error(
                    "controlled combine: neither participant meets a controlling region");
        }

        const std::size_t pa = position_of(a);
        const std::size_t pb = position_of(b);
        check_step((A.radius + B.radius) - D.radius,
                   D.radius * D.radius - (A.radius * A.radius + B.radius * B.radius), rep);

        slots_[a].alive = false;
        slots_[b].alive = false;
        slots_.push_back(Slot{D, std::nullopt, true});
        const std::size_t id = slots_.size() - 1;

        if (mode_ == Mode::Controlled) {
            if (!dilation_contains_closed_disk(
                    cc_->pairs[static_cast<std::size_t>(anchor)], D))
                throw assertion_error(
                    "controlled combine: combined disk left its controlling dilation");
            ++rep.assertions_checked.combined_in_dilation;
            if (!closed_in_open(D, outer_))
                throw assertion_error(
                    "controlled combine: combined disk escaped the outer disk");
        }

        for (std::size_t i = 0; i < id; ++i)
            if (slots_[i].alive && pair_violates(i, id)) pair_v_.emplace_back(i, id);
        if (mode_ != Mode::Controlled && single_violates(id)) single_v_.push_back(id);

        rep.steps.push_back(RewriteStep{StepKind::Combine, std::min(pa, pb),
                                        std::max(pa, pb), D, std::nullopt});
    }

    void apply_single(std::size_t k, ClassicalisationReport& rep) {
        const Disk K = slots_[k].disk;
        const std::size_t pos = position_of(k);
        if (mode_ == Mode::Plain) {
            const Disk new_outer = pull_in_disk(outer_, K);
            check_step((new_outer.radius - outer_.radius) + K.radius,
                       outer_.radius * outer_.radius -
                           (new_outer.radius * new_outer.radius + K.radius * K.radius),
                       rep);
            const bool moved = !(new_outer == outer_);
            outer_ = new_outer;
            slots_[k].alive = false;
            rescan_singles();
            rep.steps.push_back(RewriteStep{moved ? StepKind::PullIn : StepKind::Delete,
                                            pos, pos, moved ? new_outer : K,
                                            std::nullopt});
            return;
        }

        // Annular: shrink the annulus past the offending disk, then drop it.
        const Annulus before{outer_.center, hole_->radius, outer_.radius};
        const Annulus after = annular_pull_in(before, K);
        const double gain = (after.width() - before.width()) + 2.0 * K.radius;
        double delta2_drop = 2.0 * K.radius * K.radius; // annulus unchanged
        if (after.inner_radius > before.inner_radius)
            delta2_drop = (after.inner_radius * after.inner_radius -
                           before.inner_radius * before.inner_radius) -
                          K.radius * K.radius;
        else if (after.outer_radius < before.outer_radius)
            delta2_drop = (before.outer_radius * before.outer_radius -
                           after.outer_radius * after.outer_radius) -
                          K.radius * K.radius;
        check_step(gain, delta2_drop, rep);

        const bool moved = !(after == before);
        outer_.radius = after.outer_radius;
        hole_->radius = after.inner_radius;
        slots_[k].alive = false;
        rescan_singles();
        rep.steps.push_back(RewriteStep{moved ? StepKind::AnnularPullIn : StepKind::Delete,
                                        pos, pos,
                                        moved ? Disk{outer_.center, after.outer_radius} : K,
                                        moved ? std::optional<Annulus>(after)
                                              : std::nullopt});
    }

    Mode mode_;
    Disk outer_;
    std::optional<Disk> hole_;
    double tail_;
    std::vector<Slot> slots_;
    const ControllingCollection* cc_;
    RewriteOptions opts_;
    std::vector<std::pair<std::size_t, std::size_t>> pair_v_;
    std::vector<std::size_t> single_v_;
    std::size_t budget_ = 0;
    std::uint64_t rng_counter_ = 0;
};

void finish_report(const Cheese& input, const Cheese& output, ClassicalisationReport& rep) {
    rep.delta1_before = delta(input, 1.0);
    rep.delta1_after = delta(output, 1.0);
    rep.delta2_before = delta(input, 2.0);
    rep.delta2_after = delta(output, 2.0);
    rep.initial_significant = significant_indices(input).size();
    if (input.annular() && output.annular()) {
        rep.annular_delta_before = annular_delta(input);
        rep.annular_delta_after = annular_delta(output);
        if (*rep.annular_delta_after < *rep.annular_delta_before - kGeomTol)
            throw assertion_error("annular discrepancy decreased across the rewrite");
    } else if (rep.delta1_after < rep.delta1_before - kGeomTol) {
        throw assertion_error("delta1 decreased across the rewrite");
    }
}

} // namespace

std::pair<Cheese, ClassicalisationReport> classicalise(const Cheese& c,
                                                       const RewriteOptions& opts) {
    validate(c);
    if (c.annular())
        throw precondition_error("not_annular",
                                 "classicalise: annular input, use annular_classicalise");
    if (!(delta(c, 1.0) > 0.0))
        throw precondition_error("delta1_positive",
                                 "classicalise: requires delta1(A) > 0 (tail included)");

    auto [reduced, trace] = remove_redundancy_traced(c);
    Engine engine(Mode::Plain, reduced, trace, nullptr, opts);
    ClassicalisationReport rep;
    engine.run(rep);
    Cheese out = engine.assemble();
    rep.preserved_map = engine.preserved();
    finish_report(c, out, rep);
    if (!is_classical(out))
        throw assertion_error("classicalise: output failed the classical predicate");
    return {std::move(out), std::move(rep)};
}

std::pair<Cheese, ClassicalisationReport> controlled_classicalise(
    const Cheese& c, const ControllingCollection& cc, const RewriteOptions& opts) {
    validate(c);
    if (c.annular())
        throw precondition_error("not_annular",
                                 "controlled_classicalise: annular input not supported");
    if (cc.pairs.empty())
        throw precondition_error("collection_nonempty",
                                 "controlled_classicalise: controlling collection is empty");
    for (const ControllingPair& p : cc.pairs)
        if (!(p.margin > 0.0))
            throw precondition_error("margin_positive",
                                     "controlled_classicalise: margins must be positive");

    auto [reduced, trace] = remove_redundancy_traced(c);

    // A single pair only needs rho_U < M; a collection needs M/2 per entry.
    const bool single = cc.pairs.size() == 1;
    for (std::size_t n = 0; n < cc.pairs.size(); ++n) {
        const double bound = single ? cc.pairs[n].margin : cc.pairs[n].margin / 2.0;
        const double got = local_rho_dilation(reduced, cc.pairs[n]);
        if (!(got < bound))
            throw precondition_error(
                "rho_U_bound", "controlled_classicalise: local radius sum over U_" +
                                   std::to_string(n) + " is " + std::to_string(got) +
                                   ", not below " + std::to_string(bound));
    }

    for (std::size_t n = 0; n < cc.pairs.size(); ++n)
        if (!dilation_inside_open_disk(cc.pairs[n], reduced.outer))
            throw precondition_error("dilation_inside_outer",
                                     "controlled_classicalise: U_" + std::to_string(n) +
                                         " is not contained in the open outer disk");

    for (std::size_t a = 0; a < cc.pairs.size(); ++a)
        for (std::size_t b = a + 1; b < cc.pairs.size(); ++b)
            if (!dilations_disjoint(cc.pairs[a], cc.pairs[b]))
                throw precondition_error(
                    "dilations_disjoint",
                    "controlled_classicalise: dilations U_" + std::to_string(a) +
                        " and U_" + std::to_string(b) + " are not verifiably disjoint");

    Region f = [&] {
        if (cc.pairs.size() == 1) return cc.pairs.front().k_region;
        std::vector<Region> parts;
        for (const ControllingPair& p : cc.pairs) parts.push_back(p.k_region);
        return region_union(std::move(parts));
    }();
    if (!error_set_contained(reduced, f))
        throw precondition_error("error_set_in_F",
                                 "controlled_classicalise: the error set is not contained "
                                 "in the union of the controlling regions");

    Engine engine(Mode::Controlled, reduced, trace, &cc, opts);
    ClassicalisationReport rep;
    engine.run(rep);
    Cheese out = engine.assemble();
    rep.preserved_map = engine.preserved();
    finish_report(c, out, rep);

    if (!(out.outer == c.outer))
        throw assertion_error("controlled_classicalise: the outer disk changed");
    for (const ControllingPair& p : cc.pairs) {
        if (local_rho_dilation(out, p) >
            local_rho_dilation(reduced, p) + scaled_tol(kGeomTol, p.margin))
            throw assertion_error(
                "controlled_classicalise: local radius sum increased over a dilation");
        ++rep.assertions_checked.local_rho_monotone;
    }
    if (!is_classical(out))
        throw assertion_error(
            "controlled_classicalise: output failed the classical predicate");
    return {std::move(out), std::move(rep)};
}

std::pair<Cheese, std::vector<std::size_t>> annular_remove_redundancy_traced(
    const Cheese& c) {
    validate(c);
    if (!c.annular())
        throw precondition_error("annular_input",
                                 "annular_remove_redundancy: cheese has no hole");
    const double r0 = c.outer.radius;
    const double r1 = c.hole->radius;

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < c.inner.size(); ++i) {
        const Disk& d = c.inner[i];
        if (d.radius <= 0.0) continue;
        const double dist = distance(d.center, c.outer.center);
        // Keep only disks whose open disk meets the closed annulus.
        if (dist + d.radius <= r1 || dist - d.radius >= r0) continue;
        order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return c.inner[a].radius > c.inner[b].radius;
    });

    Cheese out{c.outer, c.hole, {}, c.tail_budget};
    std::vector<std::size_t> trace;
    for (std::size_t idx : order) {
        const Disk& d = c.inner[idx];
        const bool swallowed =
            std::any_of(out.inner.begin(), out.inner.end(),
                        [&](const Disk& kept) { return open_in_open(d, kept); });
        if (!swallowed) {
            out.inner.push_back(d);
            trace.push_back(idx);
        }
    }
    return {std::move(out), std::move(trace)};
}

Cheese annular_remove_redundancy(const Cheese& c) {
    return annular_remove_redundancy_traced(c).first;
}

std::pair<Cheese, ClassicalisationReport> annular_classicalise(const Cheese& c,
                                                               const RewriteOptions& opts) {
    validate(c);
    if (!c.annular())
        throw precondition_error("annular_input", "annular_classicalise: cheese has no hole");
    if (!(annular_delta(c) > 0.0))
        throw precondition_error(
            "annular_delta_positive",
            "annular_classicalise: requires annular delta > 0 (tail included)");

    auto [reduced, trace] = annular_remove_redundancy_traced(c);
    Engine engine(Mode::Annular, reduced, trace, nullptr, opts);
    ClassicalisationReport rep;
    engine.run(rep);
    Cheese out = engine.assemble();
    rep.preserved_map = engine.preserved();
    finish_report(c, out, rep);

    const double slack = 2.0 * annular_rho(reduced);
    const double tol = scaled_tol(kGeomTol, c.outer.radius);
    if (out.outer.radius > c.outer.radius + tol ||
        out.outer.radius < c.outer.radius - slack - tol ||
        out.hole->radius < c.hole->radius - tol ||
        out.hole->radius > c.hole->radius + slack + tol)
        throw assertion_error("annular_classicalise: radius bounds violated");
    if (!is_classical(out))
        throw assertion_error("annular_classicalise: output failed the classical predicate");
    return {std::move(out), std::move(rep)};
}

} // namespace swisscheese
