#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "swisscheese/geometry.hpp"

namespace swisscheese {

/// An analytic plane region: a closed disk, a closed concentric annulus, or
/// a finite union of regions.
struct Region {
    using List = std::vector<Region>;
    std::variant<Disk, Annulus, List> shape;
};

inline Region region_disk(const Disk& d) { return Region{d}; }
inline Region region_annulus(const Annulus& a) { return Region{a}; }
Region region_union(std::vector<Region> parts);

/// p in the region (closed components).
bool region_contains_point(const Region& r, Point p);

/// Does cb(d) meet the region?
bool region_meets_closed_disk(const Region& r, const Disk& d);

/// Euclidean distance from p to the region (0 if p is inside).
double region_distance(const Region& r, Point p);

/// A finite abstract Swiss cheese: a closed outer disk, an optional
/// concentric open hole, and a list of deleted open disks. tail_budget is a
/// bound on the radius sum of disks omitted by truncation; it is added to
/// every radius sum and subtracted from every discrepancy, so all one-sided
/// guarantees stay valid for the untruncated object.
struct Cheese {
    Disk outer;
    std::optional<Disk> hole;
    std::vector<Disk> inner;
    double tail_budget = 0.0;

    bool annular() const { return hole.has_value(); }

    friend bool operator==(const Cheese&, const Cheese&) = default;
};

/// Throws std::invalid_argument if the structural invariants fail: positive
/// outer radius, finite non-negative inner radii, concentric hole with
/// 0 < hole.radius < outer.radius, and 0 <= tail_budget <= outer.radius.
void validate(const Cheese& c);

struct CheeseStats {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double rho = 0.0;
    double mu = 0.0;
    std::size_t significant_count = 0;
    bool classical = false;
    bool semiclassical = false;
    std::optional<double> annular_rho;
    std::optional<double> annular_delta;
};

/// Indices into c.inner with strictly positive radius, in stored order.
std::vector<std::size_t> significant_indices(const Cheese& c);

/// Point membership in X = cb(outer) minus the hole and the deleted open disks.
bool membership(const Cheese& c, Point p);

/// Discrepancy of order alpha >= 1: outer.radius^alpha minus the sum of
/// inner radii^alpha minus tail_budget^alpha. The hole is not counted; it
/// belongs to the annular accounting.
double delta(const Cheese& c, double alpha);

/// Radius sum of the inner disks plus tail_budget (hole excluded).
double rho(const Cheese& c);

/// Largest |center| over the inner disks; 0 when there are none. The tail
/// carries no centre information and is ignored here.
double mu(const Cheese& c);

/// Radius sum over significant inner disks whose closed disk meets e, plus
/// tail_budget.
double local_rho(const Cheese& c, const Region& e);

/// Annular radius sum and discrepancy; require an annular cheese.
double annular_rho(const Cheese& c);
double annular_delta(const Cheese& c);

/// Area of X for (semi)classical cheeses with tail_budget = 0: pi times the
/// squared-radius discrepancy, with the hole counted as a deleted disk.
double analytic_area(const Cheese& c);

/// Classical: every significant closed inner disk lies strictly inside the
/// open outer disk (for annular cheeses: inside the open annulus between
/// hole and outer), and all pairs of significant closed inner disks are
/// disjoint. Semiclassical is the same with open disks and non-strict
/// containment.
bool is_classical(const Cheese& c);
bool is_semiclassical(const Cheese& c);

CheeseStats stats(const Cheese& c);

/// Removes redundancy without changing X: drops degenerate disks, disks
/// whose open disk misses the outer closed disk, and disks contained in
/// another retained open disk; sorts the rest by non-increasing radius.
Cheese remove_redundancy(const Cheese& c);

/// As remove_redundancy, but also reports, for every retained disk, the
/// index it had in the input.
std::pair<Cheese, std::vector<std::size_t>> remove_redundancy_traced(const Cheese& c);

// ---- list manipulation (indices are 0-based into c.inner) ---------------

Cheese insert_disk(const Cheese& c, const Disk& d, std::size_t at);
Cheese delete_disk(const Cheese& c, std::size_t at);

/// Deletes the disks at i and j, then inserts d at the first position that
/// keeps the radius sequence non-increasing (before any equal radii).
/// Requires i != j and a non-increasing input radius sequence.
Cheese replace_disks(const Cheese& c, std::size_t i, std::size_t j, const Disk& d);

/// Position where replace_disks would insert a disk of the given radius.
std::size_t sorted_insert_position(const std::vector<Disk>& disks, double radius);

} // namespace swisscheese
