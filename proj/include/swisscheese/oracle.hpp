#pragma once

#include <cstdint>
#include <optional>

#include "swisscheese/cheese.hpp"

namespace swisscheese {

/// Counter-based pseudo-random sampler: the value at index i is a pure
/// function of (seed, i), so streams can be partitioned across workers and
/// are reproducible bit-for-bit on any platform. The mixer is splitmix64.
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : seed_(seed) {}

    /// 64 mixed bits for counter value i.
    std::uint64_t bits(std::uint64_t i) const;

    /// Uniform double in [0, 1) for counter value i.
    double uniform01(std::uint64_t i) const;

    double uniform(std::uint64_t i, double lo, double hi) const {
        return lo + uniform01(i) * (hi - lo);
    }

private:
    std::uint64_t seed_;
};

/// Sequential convenience wrapper over SampleStream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : stream_(seed) {}

    double uniform01() { return stream_.uniform01(counter_++); }
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }
    std::uint64_t bits() { return stream_.bits(counter_++); }

    /// Uniform point in the closed disk, by rejection from its bounding box.
    Point in_disk(const Disk& d);

private:
    SampleStream stream_;
    std::uint64_t counter_ = 0;
};

struct Box {
    Point min;
    Point max;
};

struct SampleConfig {
    std::size_t n_points = 10000;
    std::uint64_t seed = 0;
    /// When absent, a bounding box is derived from the cheese(s) involved.
    std::optional<Box> bounding_box;
};

struct AreaEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_points = 0;
    /// False when tail_budget > 0; the estimate then only bounds the true
    /// area from above.
    bool exact = true;
};

/// Monte-Carlo area of X by rejection sampling over the outer disk's
/// bounding box (or cfg.bounding_box when given). std_error follows the
/// binomial formula scaled by the box area.
AreaEstimate mc_area(const Cheese& c, const SampleConfig& cfg);

struct ContainmentResult {
    bool ok = true;
    std::optional<Point> witness;
};

/// Sampled check that X_sub is contained in X_sup; a failure comes with a
/// witness point in X_sub but not X_sup. Only a probabilistic guarantee.
ContainmentResult containment_check(const Cheese& sub, const Cheese& sup,
                                    const SampleConfig& cfg);

/// Sampled check that X_a and X_b agree outside the region v.
ContainmentResult equality_outside_region(const Cheese& a, const Cheese& b,
                                          const Region& v, const SampleConfig& cfg);

/// Brute-force counterpart of combine_disks: 1-D ternary search over centres
/// on the segment between the input centres, accurate to about 1e-10.
Disk brute_min_enclosing(const Disk& d1, const Disk& d2);

/// Brute-force counterpart of pull_in_disk: search along the line through
/// the two centres, away from the obstacle.
Disk brute_max_avoiding(const Disk& outer, const Disk& obstacle);

/// Paranoia variant of brute_min_enclosing that searches a 2-D grid (64x64,
/// then refined) instead of trusting the segment restriction.
Disk brute_min_enclosing_grid(const Disk& d1, const Disk& d2);

} // namespace swisscheese
