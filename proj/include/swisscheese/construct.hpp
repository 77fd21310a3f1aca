#pragma once

#include <cstdint>

#include "swisscheese/classicalise.hpp"

namespace swisscheese {

/// Random test cheese on the unit disk: n disks with centres inside the
/// outer disk and radii rescaled so that delta1 > 0 by construction.
/// overlap_bias in [0,1] pushes centres toward existing disks to provoke
/// violations. Deterministic per seed.
Cheese random_cheese(std::uint64_t seed, std::size_t n_disks, double overlap_bias);

/// Classical annular cheese with exactly the given outer/hole radii and
/// radius sum strictly below budget: equal-radius disks spaced evenly on
/// the mid-circle, rotated by a seed-dependent phase. Throws when the
/// packing cannot keep the closed disks disjoint.
Cheese synthetic_annular(Point center, double r0, double r1, double budget,
                         std::size_t n_disks, std::uint64_t seed);

struct OFarrellParams {
    double epsilon = 0.015625; // must lie in (0, 2^-5)
    int levels = 4;            // truncation depth, >= 1
    int disks_per_level = 6;   // >= 1
    std::uint64_t seed = 0;
};

/// The dyadic layout: per-level annular cheeses merged over the unit disk,
/// the controlling pairs (K_m, M_m), the E_m bands and the gamma sequence.
struct OFarrellLayout {
    Cheese merged;
    ControllingCollection controlling;
    std::vector<Annulus> e_bands;
    std::vector<double> gamma;
    std::vector<Cheese> level_cheeses;
};

/// Level radii are exact dyadics: level 1 deletes from the annulus between
/// 1/2 and 1; level m >= 2 between 2^-m and (33/32)*2^(1-m). The omitted
/// levels enter as tail_budget. Asserts 0 in X and rho < epsilon.
OFarrellLayout ofarrell_layout(const OFarrellParams& p);

struct HallstromReport {
    std::vector<double> band_local_rho;   // rho over E_m of the output, m = 1..levels
    double weighted_partial_sum = 0.0;    // sum of m^m * rho_{E_m}
    double tail_bound = 0.0;              // epsilon * 2^-levels, the omitted levels
    double total = 0.0;
    double epsilon = 0.0;
    bool within_epsilon = false;
};

struct OFarrellResult {
    Cheese classical;
    ClassicalisationReport report;
    HallstromReport hallstrom;
    OFarrellLayout layout;
};

/// Full pipeline: layout, controlled classicalisation against the (K_m, M_m)
/// collection, then the weighted band sum with its analytic tail. Throws
/// assertion_error if the sum exceeds epsilon.
OFarrellResult ofarrell_classicalise(const OFarrellParams& p);

} // namespace swisscheese
