#include "swisscheese/construct.hpp"

#include <cmath>
#include <string>

#include "swisscheese/oracle.hpp"

namespace swisscheese {

Cheese random_cheese(std::uint64_t seed, std::size_t n_disks, double overlap_bias) {
    Rng rng(seed);
    Cheese c{Disk{{0.0, 0.0}, 1.0}, std::nullopt, {}, 0.0};
    if (n_disks == 0) return c;

    const double margin = rng.uniform(0.05, 0.5);
    std::vector<double> raw(n_disks);
    double raw_sum = 0.0;
    for (double& r : raw) {
        r = rng.uniform(0.1, 1.0);
        raw_sum += r;
    }
    const double scale = (1.0 - margin) / raw_sum;

    for (std::size_t i = 0; i < n_disks; ++i) {
        Point center;
        if (i > 0 && rng.uniform01() < overlap_bias) {
            // Aim near an existing disk so the closed disks collide.
            const Disk& target = c.inner[rng.bits() % c.inner.size()];
            const double ang = rng.uniform(0.0, 2.0 * M_PI);
            const double off = rng.uniform01() * (target.radius + raw[i] * scale);
            center = {target.center.x + off * std::cos(ang),
                      target.center.y + off * std::sin(ang)};
            if (norm(center) > 1.0) center = rng.in_disk(c.outer);
        } else {
            center = rng.in_disk(c.outer);
        }
        c.inner.push_back(Disk{center, raw[i] * scale});
    }
    return c;
}

Cheese synthetic_annular(Point center, double r0, double r1, double budget,
                         std::size_t n_disks, std::uint64_t seed) {
    if (!(r0 > r1 && r1 > 0.0))
        throw std::invalid_argument("synthetic_annular: requires r0 > r1 > 0");
    if (!(budget > 0.0 && budget < (r0 - r1) / 2.0))
        throw std::invalid_argument("synthetic_annular: budget must lie in (0, (r0-r1)/2)");
    if (n_disks < 1)
        throw std::invalid_argument("synthetic_annular: need at least one disk");

    const double radius = 0.875 * budget / static_cast<double>(n_disks);
    const double mid = (r0 + r1) / 2.0;
    if (n_disks > 1) {
        const double gap = 2.0 * mid * std::sin(M_PI / static_cast<double>(n_disks));
        if (!(gap > 2.0 * radius))
            throw std::invalid_argument(
                "synthetic_annular: infeasible packing, " + std::to_string(n_disks) +
                " disks of radius " + std::to_string(radius) +
                " do not fit on the mid-circle");
    }

    Rng rng(seed);
    const double phase = rng.uniform(0.0, 2.0 * M_PI / static_cast<double>(n_disks));
    Cheese c{Disk{center, r0}, Disk{center, r1}, {}, 0.0};
    for (std::size_t k = 0; k < n_disks; ++k) {
        const double ang = phase + 2.0 * M_PI * static_cast<double>(k) /
                                       static_cast<double>(n_disks);
        c.inner.push_back(Disk{{center.x + mid * std::cos(ang),
                                center.y + mid * std::sin(ang)},
                               radius});
    }
    if (!is_classical(c))
        throw assertion_error("synthetic_annular: generated cheese is not classical");
    return c;
}

namespace {

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + (salt + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double gamma_of(double epsilon, int m) {
    return epsilon / std::pow(2.0 * m, static_cast<double>(m));
}

// Per-level radius-sum bound gamma_m * 2^-(m+2); for m = 1 this is the
// gamma_1 / 8 bound of the base level.
double level_budget(double epsilon, int m) {
    return std::ldexp(gamma_of(epsilon, m), -(m + 2));
}

void level_radii(int m, double& r0, double& r1) {
    if (m == 1) {
        r0 = 1.0;
        r1 = 0.5;
    } else {
        r0 = std::ldexp(33.0 / 32.0, 1 - m);
        r1 = std::ldexp(1.0, -m);
    }
}

} // namespace

OFarrellLayout ofarrell_layout(const OFarrellParams& p) {
    if (!(p.epsilon > 0.0 && p.epsilon < 0.03125))
        throw precondition_error("epsilon_range",
                                 "ofarrell_layout: epsilon must lie in (0, 2^-5)");
    if (p.levels < 1)
        throw precondition_error("levels_range", "ofarrell_layout: levels must be >= 1");
    if (p.disks_per_level < 1)
        throw precondition_error("disks_per_level_range",
                                 "ofarrell_layout: disks_per_level must be >= 1");

    OFarrellLayout layout;
    layout.merged = Cheese{Disk{{0.0, 0.0}, 1.0}, std::nullopt, {}, 0.0};

    for (int m = 1; m <= p.levels; ++m) {
        double r0, r1;
        level_radii(m, r0, r1);
        const Cheese level = synthetic_annular({0.0, 0.0}, r0, r1, level_budget(p.epsilon, m),
                                               static_cast<std::size_t>(p.disks_per_level),
                                               child_seed(p.seed, static_cast<std::uint64_t>(m)));
        for (const Disk& d : level.inner) layout.merged.inner.push_back(d);
        layout.level_cheeses.push_back(level);

        const double gm = gamma_of(p.epsilon, m);
        layout.gamma.push_back(gm);
        layout.controlling.pairs.push_back(ControllingPair{
            region_annulus(Annulus{{0.0, 0.0}, std::ldexp(15.0 / 16.0, -m),
                                   std::ldexp(17.0 / 16.0, -m)}),
            3.0 * gm / std::ldexp(1.0, m + 2)});
        layout.e_bands.push_back(
            Annulus{{0.0, 0.0}, std::ldexp(1.5, -m - 1), std::ldexp(1.5, -m)});
    }

    // Omitted levels enter as an analytic tail bound on their radius sum.
    double tail = 0.0;
    for (int m = p.levels + 1; m <= p.levels + 1100; ++m) {
        const double term = level_budget(p.epsilon, m);
        if (term == 0.0) break;
        tail += term;
    }
    layout.merged.tail_budget = tail;

    if (!membership(layout.merged, {0.0, 0.0}))
        throw assertion_error("ofarrell_layout: origin fell outside the merged cheese");
    if (!(rho(layout.merged) < p.epsilon))
        throw assertion_error("ofarrell_layout: merged radius sum reached epsilon");
    return layout;
}

OFarrellResult ofarrell_classicalise(const OFarrellParams& p) {
    OFarrellLayout layout = ofarrell_layout(p);
    auto [classical, report] = controlled_classicalise(layout.merged, layout.controlling);

    HallstromReport h;
    h.epsilon = p.epsilon;
    for (int m = 1; m <= p.levels; ++m) {
        const double band_rho =
            local_rho(classical, region_annulus(layout.e_bands[static_cast<std::size_t>(m - 1)]));
        h.band_local_rho.push_back(band_rho);
        h.weighted_partial_sum += std::pow(static_cast<double>(m), m) * band_rho;
    }
    h.tail_bound = p.epsilon * std::ldexp(1.0, -p.levels);
    h.total = h.weighted_partial_sum + h.tail_bound;
    h.within_epsilon = h.total <= p.epsilon;
    if (!h.within_epsilon)
        throw assertion_error("ofarrell_classicalise: weighted band sum exceeded epsilon");

    if (!membership(classical, {0.0, 0.0}))
        throw assertion_error("ofarrell_classicalise: origin fell out of the classical cheese");
    if (!(rho(classical) < p.epsilon))
        throw assertion_error("ofarrell_classicalise: output radius sum reached epsilon");

    return OFarrellResult{std::move(classical), std::move(report), std::move(h),
                          std::move(layout)};
}

} // namespace swisscheese
