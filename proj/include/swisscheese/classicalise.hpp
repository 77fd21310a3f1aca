#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "swisscheese/cheese.hpp"

namespace swisscheese {

/// A rewriter input failed one of the stated hypotheses. name() is a stable
/// identifier for the violated precondition, for callers that dispatch on it.
class precondition_error : public std::runtime_error {
public:
    precondition_error(std::string name, const std::string& message)
        : std::runtime_error(message), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// A guarantee the rewriter maintains internally was observed to fail.
class assertion_error : public std::logic_error {
    using std::logic_error::logic_error;
};

/// A compact region K together with a dilation margin M; the controlled
/// rewriter may only alter disks inside U(K,M) = {z : dist(z,K) < M}.
struct ControllingPair {
    Region k_region;
    double margin = 0.0;
};

struct ControllingCollection {
    std::vector<ControllingPair> pairs;
};

/// Does cb(d) meet the open dilation U(K,M)?
bool dilation_meets_closed_disk(const ControllingPair& p, const Disk& d);

/// Is cb(d) contained in U(K,M)? Exact for disk/annulus regions; for unions
/// falls back to single-component containment, then boundary sampling.
bool dilation_contains_closed_disk(const ControllingPair& p, const Disk& d);

bool dilation_contains_point(const ControllingPair& p, Point pt);

/// Radius sum over significant disks meeting U(K,M), plus tail_budget.
double local_rho_dilation(const Cheese& c, const ControllingPair& p);

/// Is U(K,M) contained in the open disk?
bool dilation_inside_open_disk(const ControllingPair& p, const Disk& outer);

/// Sufficient analytic disjointness test for two dilations; false means
/// "could not verify", which callers treat as a violation.
bool dilations_disjoint(const ControllingPair& a, const ControllingPair& b);

/// Band-placement checks used when positioning dilations between annuli;
/// conservative (sufficient) for non-concentric shapes.
bool dilation_inside_annulus(const ControllingPair& p, const Annulus& band);
bool dilation_disjoint_from_annulus(const ControllingPair& p, const Annulus& band);

enum class StepKind { Combine, PullIn, AnnularPullIn, Delete };

struct RewriteStep {
    StepKind kind;
    std::size_t first = 0;  ///< position of the (first) participant when applied
    std::size_t second = 0; ///< second participant, combine steps only
    Disk result;            ///< combined disk, or the new outer disk for pull-ins
    std::optional<Annulus> annulus; ///< the shrunk annulus, annular pull-ins only
};

struct AssertionCounters {
    std::size_t step_monotonicity = 0;
    std::size_t combined_in_dilation = 0;
    std::size_t local_rho_monotone = 0;
};

struct ClassicalisationReport {
    std::vector<RewriteStep> steps;
    double delta1_before = 0.0;
    double delta1_after = 0.0;
    double delta2_before = 0.0;
    double delta2_after = 0.0;
    std::optional<double> annular_delta_before;
    std::optional<double> annular_delta_after;
    /// (input index, output index) for inner disks carried over verbatim.
    /// In controlled mode this covers every disk whose closed disk misses
    /// V(C); restricting to those gives the preservation bijection.
    std::vector<std::pair<std::size_t, std::size_t>> preserved_map;
    AssertionCounters assertions_checked;
    std::size_t initial_significant = 0;
};

/// Witnesses of non-classicality: index pairs whose closed disks meet, and
/// indices whose closed disk is not strictly inside the open outer disk.
struct ErrorSet {
    std::vector<std::pair<std::size_t, std::size_t>> pair_violations;
    std::vector<std::size_t> boundary_violations;

    bool empty() const { return pair_violations.empty() && boundary_violations.empty(); }
};

ErrorSet error_set(const Cheese& c);

/// True iff every violation region (intersection lens or boundary escape)
/// is contained in f. Unions count as containing when a single component
/// does, with a 512-point boundary-sampling fallback.
bool error_set_contained(const Cheese& c, const Region& f);

struct RewriteOptions {
    /// Default picks the pair violation with the largest combined radius,
    /// then boundary violations by radius. Randomized order exists to test
    /// that the guarantees do not depend on the schedule.
    bool randomized = false;
    std::uint64_t seed = 0;
};

/// Greedy rewriting to a classical cheese: intersecting closed inner disks
/// are merged (smallest enclosing disk), and disks escaping the open outer
/// disk consume a pull-in of the outer disk. Requires a non-annular cheese
/// with delta1 > 0. The output is classical, delta1 never decreases, and
/// X_out is contained in X_in; at most one step per significant disk.
std::pair<Cheese, ClassicalisationReport> classicalise(const Cheese& c,
                                                       const RewriteOptions& opts = {});

/// As classicalise, but only disks inside V(C) may change and the outer disk
/// is never touched. Requires, per controlling pair: local rho over U less
/// than M (one pair) or M/2 (several), U inside the open outer disk, the
/// dilations pairwise disjoint, and every violation region inside F(C).
/// Every combined disk is checked to stay inside the dilation it was
/// anchored to; a failure aborts with assertion_error.
std::pair<Cheese, ClassicalisationReport> controlled_classicalise(
    const Cheese& c, const ControllingCollection& cc, const RewriteOptions& opts = {});

/// Annular analogue: requires a hole and annular delta > 0. Combines
/// intersecting inner disks; disks meeting the closure of the annulus
/// complement shrink the annulus instead of the outer disk. The annular
/// discrepancy never decreases and the final outer/hole radii stay within
/// 2*annular_rho of the originals.
std::pair<Cheese, ClassicalisationReport> annular_classicalise(
    const Cheese& c, const RewriteOptions& opts = {});

/// Redundancy pass for annular cheeses: drops disks that miss the annulus
/// or are contained in other inner disks, and sorts by non-increasing
/// radius. X and the annulus itself are unchanged.
Cheese annular_remove_redundancy(const Cheese& c);

std::pair<Cheese, std::vector<std::size_t>> annular_remove_redundancy_traced(const Cheese& c);

} // namespace swisscheese
