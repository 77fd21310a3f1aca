#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "swisscheese/classicalise.hpp"
#include "swisscheese/construct.hpp"
#include "swisscheese/oracle.hpp"
#include "test_support.hpp"

using namespace swisscheese;
using testsupport::collection_v_region;
using testsupport::dilation_region;
using testsupport::random_annular;

namespace {

Cheese unit_cheese(std::vector<Disk> inner) {
    return Cheese{Disk{{0, 0}, 1}, std::nullopt, std::move(inner), 0.0};
}

// Sampling oracle for violation-region containment: walk both circles of a
// lens (or the escape pieces) and keep the points in the region, then test
// each against f. Independent of the arc analysis in the implementation.
// Boundary sampling misses one situation: the lens interior covering an
// annulus hole whose centre lies inside the lens; test that directly.
bool lens_in_region_sampled(const Disk& a, const Disk& b, const Region& f, int n = 4096) {
    if (const Annulus* fa = std::get_if<Annulus>(&f.shape)) {
        const bool center_in_lens = distance(fa->center, a.center) <= a.radius &&
                                    distance(fa->center, b.center) <= b.radius;
        if (center_in_lens && fa->inner_radius > 1e-7) return false;
    }
    bool any = false;
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * M_PI * i / n;
        const Point pa{a.center.x + a.radius * std::cos(th),
                       a.center.y + a.radius * std::sin(th)};
        if (distance(pa, b.center) <= b.radius) {
            any = true;
            if (!region_contains_point(f, pa) && region_distance(f, pa) > 1e-7) return false;
        }
        const Point pb{b.center.x + b.radius * std::cos(th),
                       b.center.y + b.radius * std::sin(th)};
        if (distance(pb, a.center) <= a.radius) {
            any = true;
            if (!region_contains_point(f, pb) && region_distance(f, pb) > 1e-7) return false;
        }
    }
    return any; // a lens from a closed-disk intersection is never empty
}

} // namespace

TEST_CASE("error_set") {
    CHECK(error_set(unit_cheese({{{0.2, 0}, 0.2}, {{-0.5, 0}, 0.2}})).empty());

    const ErrorSet tangent = error_set(unit_cheese({{{-0.5, 0}, 0.5}, {{0.5, 0}, 0.5}}));
    CHECK(tangent.pair_violations ==
          std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});

    const ErrorSet escape = error_set(unit_cheese({{{0.8, 0}, 0.3}}));
    CHECK(escape.boundary_violations == std::vector<std::size_t>{0});

    // Zero-radius disks never participate.
    const ErrorSet degen = error_set(unit_cheese({{{0.8, 0}, 0.3}, {{0.8, 0}, 0.0}}));
    CHECK(degen.pair_violations.empty());
}

TEST_CASE("error_set_contained: stated examples") {
    CHECK(error_set_contained(unit_cheese({}), region_disk({{9, 9}, 0.001})));

    // Tangent pair well inside the outer disk: the only violation is the
    // lens, which is the single tangency point.
    const Cheese tangent{Disk{{0, 0}, 3}, std::nullopt,
                         {{{-0.5, 0}, 0.5}, {{0.5, 0}, 0.5}}, 0.0};
    CHECK(error_set(tangent).boundary_violations.empty());
    CHECK(error_set_contained(tangent, region_disk({{0, 0}, 0.1})));
    CHECK_FALSE(error_set_contained(tangent, region_disk({{0.5, 0}, 0.1})));

    // Lens spanning radii [0.9, 1.1] from the origin does not fit in the
    // annulus [0.95, 1.05].
    const Disk d1{{0.4, 0}, 0.7};
    const Disk d2{{1.6, 0}, 0.7};
    Cheese lens{Disk{{0, 0}, 5}, std::nullopt, {d1, d2}, 0.0};
    const Region narrow = region_annulus({{0, 0}, 0.95, 1.05});
    CHECK_FALSE(error_set_contained(lens, narrow));
    CHECK_FALSE(lens_in_region_sampled(d1, d2, narrow));
    const Region wide = region_annulus({{0, 0}, 0.85, 1.15});
    CHECK(error_set_contained(lens, wide));
    CHECK(lens_in_region_sampled(d1, d2, wide));
}

TEST_CASE("error_set_contained agrees with boundary sampling on random lenses") {
    Rng rng(101);
    int tested = 0;
    while (tested < 300) {
        const Disk a{{rng.uniform(-1, 1), rng.uniform(-1, 1)}, rng.uniform(0.1, 0.8)};
        const Disk b{{a.center.x + rng.uniform(-1, 1), a.center.y + rng.uniform(-1, 1)},
                     rng.uniform(0.1, 0.8)};
        if (!closed_disks_intersect(a, b)) continue;
        ++tested;
        Cheese c{Disk{{0, 0}, 50}, std::nullopt, {a, b}, 0.0};

        Region f = (tested % 2 == 0)
                       ? region_disk({{rng.uniform(-1, 1), rng.uniform(-1, 1)},
                                      rng.uniform(0.2, 1.5)})
                       : region_annulus({{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)},
                                         rng.uniform(0.0, 0.4), rng.uniform(0.5, 2.2)});

        const bool analytic = error_set_contained(c, f);
        const bool sampled = lens_in_region_sampled(a, b, f);
        // The analytic test may only disagree within the sampling resolution;
        // re-check disagreements with a buffered region.
        if (analytic != sampled) {
            double grow = analytic ? 1e-6 : -1e-6;
            Region buffered = f;
            if (Disk* fd = std::get_if<Disk>(&buffered.shape)) fd->radius += grow;
            if (Annulus* fa = std::get_if<Annulus>(&buffered.shape)) {
                fa->outer_radius += grow;
                fa->inner_radius = std::max(0.0, fa->inner_radius - grow);
            }
            CHECK(lens_in_region_sampled(a, b, buffered) == analytic);
        } else {
            CHECK(analytic == sampled);
        }
    }
}

TEST_CASE("classicalise: overlapping pair combines once") {
    const Cheese c{Disk{{0, 0}, 4}, std::nullopt, {{{-0.5, 0}, 1}, {{0.5, 0}, 1}}, 0.0};
    const auto [out, rep] = classicalise(c);
    CHECK(rep.steps.size() == 1);
    CHECK(rep.steps[0].kind == StepKind::Combine);
    REQUIRE(out.inner.size() == 1);
    CHECK(out.inner[0] == Disk{{0, 0}, 1.5});
    CHECK(is_classical(out));
    CHECK(rep.delta1_after > rep.delta1_before);  // strict: open disks met
    CHECK(rep.delta1_after == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("classicalise: already classical input is untouched") {
    const Cheese c = unit_cheese({{{0.4, 0}, 0.2}, {{-0.4, 0}, 0.2}});
    const auto [out, rep] = classicalise(c);
    CHECK(rep.steps.empty());
    CHECK(out == c);
    CHECK(rep.preserved_map.size() == 2);
}

TEST_CASE("classicalise: escaping disk pulls the outer disk in") {
    // Strict-inequality branch: the open disk leaves the open outer disk.
    const Cheese c{Disk{{0, 0}, 2}, std::nullopt, {{{1.7, 0}, 0.4}}, 0.0};
    const auto [out, rep] = classicalise(c);
    REQUIRE(rep.steps.size() == 1);
    CHECK(rep.steps[0].kind == StepKind::PullIn);
    CHECK(out.inner.empty());
    CHECK(out.outer.radius == doctest::Approx(1.65).epsilon(1e-15));
    CHECK(out.outer.center.x == doctest::Approx(-0.35).epsilon(1e-13));
    CHECK(rep.delta1_after == doctest::Approx(1.65).epsilon(1e-15));
    CHECK(rep.delta1_before == doctest::Approx(1.6).epsilon(1e-15));
    CHECK(rep.delta1_after > rep.delta1_before);

    // Equality branch: internal tangency preserves delta1, shrinks delta2.
    const Cheese eq{Disk{{0, 0}, 2}, std::nullopt, {{{1.6, 0}, 0.4}}, 0.0};
    const auto [out2, rep2] = classicalise(eq);
    CHECK(out2.outer.radius == doctest::Approx(1.6).epsilon(1e-15));
    CHECK(rep2.delta1_after == doctest::Approx(rep2.delta1_before).epsilon(1e-13));
    CHECK(rep2.delta2_after < rep2.delta2_before);
}

TEST_CASE("classicalise: preconditions") {
    CHECK_THROWS_AS(classicalise(unit_cheese({{{0, 0}, 0.6}, {{0.1, 0}, 0.6}})),
                    precondition_error);
    const Cheese annular{Disk{{0, 0}, 2}, Disk{{0, 0}, 1}, {}, 0.0};
    CHECK_THROWS_AS(classicalise(annular), precondition_error);
    try {
        classicalise(annular);
    } catch (const precondition_error& e) {
        CHECK(e.name() == "not_annular");
    }
}

TEST_CASE("classicalise: postconditions on random cheeses") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Cheese c = random_cheese(seed, 5 + seed % 36, 0.2 + 0.6 * ((seed % 7) / 7.0));
        const auto [out, rep] = classicalise(c);

        CHECK(is_classical(out));
        CHECK(rep.delta1_after >= rep.delta1_before - 1e-9);
        CHECK(rep.steps.size() <= rep.initial_significant);

        const auto contained =
            containment_check(out, c, SampleConfig{1000, seed * 31 + 7, std::nullopt});
        CHECK(contained.ok);
    }
}

TEST_CASE("classicalise: guarantees hold under randomized rewrite order") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Cheese c = random_cheese(seed + 5000, 20, 0.7);
        RewriteOptions opts;
        opts.randomized = true;
        opts.seed = seed;
        const auto [out, rep] = classicalise(c, opts);
        CHECK(is_classical(out));
        CHECK(rep.delta1_after >= rep.delta1_before - 1e-9);
        CHECK(rep.steps.size() <= rep.initial_significant);
        CHECK(containment_check(out, c, SampleConfig{1000, seed, std::nullopt}).ok);
    }
}

TEST_CASE("controlled: classical input is the identity") {
    const Cheese c = unit_cheese({{{0.4, 0}, 0.1}, {{-0.4, 0}, 0.1}});
    ControllingCollection cc;
    cc.pairs.push_back({region_disk({{0, 0.5}, 0.05}), 0.3});
    const auto [out, rep] = controlled_classicalise(c, cc);
    CHECK(out == c);
    CHECK(rep.steps.empty());
    CHECK(rep.preserved_map.size() == 2);
    for (const auto& [in, outp] : rep.preserved_map) CHECK(in == outp);

    // Also when a disk sits inside V: nothing was rewritten, so the map is
    // still the identity on all significant indices.
    const Cheese c2 = unit_cheese({{{0.4, 0}, 0.1}, {{-0.4, 0}, 0.1}, {{0, 0.5}, 0.02}});
    const auto [out2, rep2] = controlled_classicalise(c2, cc);
    CHECK(out2 == c2);
    CHECK(rep2.preserved_map.size() == 3);
    for (const auto& [in, outp] : rep2.preserved_map) CHECK(in == outp);
}

TEST_CASE("controlled: tangent pair combines inside U, the rest is preserved") {
    // Two tangent disks meeting at (0.4, 0); a third far disk must survive
    // byte-identically.
    const Disk far{{-0.6, 0}, 0.05};
    const Cheese c = unit_cheese({{{0.3, 0}, 0.1}, {{0.5, 0}, 0.1}, far});
    ControllingCollection cc;
    cc.pairs.push_back({region_disk({{0.4, 0}, 0.05}), 0.5});

    const auto [out, rep] = controlled_classicalise(c, cc);
    CHECK(is_classical(out));
    CHECK(out.outer == c.outer);
    REQUIRE(rep.steps.size() == 1);
    CHECK(rep.steps[0].kind == StepKind::Combine);
    CHECK(rep.assertions_checked.combined_in_dilation == 1);

    // The combined disk is the tangency-equality case.
    CHECK(rep.steps[0].result == Disk{{0.4, 0}, 0.2});
    CHECK(std::count(out.inner.begin(), out.inner.end(), far) == 1);

    // preserved_map points at the untouched far disk.
    REQUIRE(rep.preserved_map.size() == 1);
    const auto [in_idx, out_idx] = rep.preserved_map[0];
    CHECK(c.inner[in_idx] == far);
    CHECK(out.inner[out_idx] == far);

    // Membership agrees off V.
    const Region v = collection_v_region(cc);
    CHECK(equality_outside_region(c, out, v, SampleConfig{20000, 5, std::nullopt}).ok);
    // Local radius sum over U did not grow.
    CHECK(local_rho_dilation(out, cc.pairs[0]) <=
          local_rho_dilation(remove_redundancy(c), cc.pairs[0]) + 1e-12);
}

TEST_CASE("controlled: named precondition failures") {
    const Cheese c = unit_cheese({{{0.3, 0}, 0.1}, {{0.5, 0}, 0.1}});

    const auto name_of = [&](const ControllingCollection& cc) -> std::string {
        try {
            controlled_classicalise(c, cc);
        } catch (const precondition_error& e) {
            return e.name();
        }
        return "";
    };

    // Margin so small the local radius sum cannot fit under it.
    ControllingCollection tight;
    tight.pairs.push_back({region_disk({{0.4, 0}, 0.05}), 0.1});
    CHECK(name_of(tight) == "rho_U_bound");

    // Dilation escaping the outer disk.
    ControllingCollection escaping;
    escaping.pairs.push_back({region_disk({{0.4, 0}, 0.05}), 0.9});
    CHECK(name_of(escaping) == "dilation_inside_outer");

    // Two overlapping dilations.
    ControllingCollection overlapping;
    overlapping.pairs.push_back({region_disk({{0.4, 0}, 0.02}), 0.44});
    overlapping.pairs.push_back({region_disk({{-0.4, 0}, 0.02}), 0.44});
    CHECK(name_of(overlapping) == "dilations_disjoint");

    // Controlling region that misses the tangency point.
    ControllingCollection elsewhere;
    elsewhere.pairs.push_back({region_disk({{0, 0.6}, 0.02}), 0.3});
    CHECK(name_of(elsewhere) == "error_set_in_F");

    ControllingCollection empty;
    CHECK(name_of(empty) == "collection_nonempty");

    ControllingCollection bad_margin;
    bad_margin.pairs.push_back({region_disk({{0.4, 0}, 0.05}), 0.0});
    CHECK(name_of(bad_margin) == "margin_positive");
}

TEST_CASE("controlled: single pairs get the weaker rho bound") {
    // rho over U sits between M/2 and M: a lone pair accepts it, adding a
    // second (far, idle) pair tightens every bound to M/2 and rejects.
    const Cheese c = unit_cheese({{{0.38, 0}, 0.1}, {{0.42, 0}, 0.1}});
    ControllingPair main{region_disk({{0.4, 0}, 0.12}), 0.25};
    REQUIRE(local_rho_dilation(remove_redundancy(c), main) == 0.2);

    ControllingCollection single{{main}};
    CHECK(is_classical(controlled_classicalise(c, single).first));

    ControllingCollection pair_of_two{{main, {region_disk({{-0.6, 0}, 0.01}), 0.25}}};
    try {
        controlled_classicalise(c, pair_of_two);
        CHECK(false);
    } catch (const precondition_error& e) {
        CHECK(e.name() == "rho_U_bound");
    }
}

TEST_CASE("controlled: preserved radius sums match over sampled regions") {
    // A cluster needing one combine inside K, plus scattered safe disks.
    Cheese c = unit_cheese({{{0.35, 0}, 0.06},
                            {{0.45, 0}, 0.06},
                            {{-0.5, 0.3}, 0.04},
                            {{-0.3, -0.45}, 0.05},
                            {{0.1, 0.55}, 0.03}});
    ControllingCollection cc;
    cc.pairs.push_back({region_disk({{0.4, 0}, 0.06}), 0.4});
    const Cheese reduced = remove_redundancy(c);
    const auto [out, rep] = controlled_classicalise(c, cc);

    CHECK(is_classical(out));
    const Region v = collection_v_region(cc);

    Rng rng(404);
    for (int i = 0; i < 50; ++i) {
        const Region e = region_disk(
            {{rng.uniform(-1, 1), rng.uniform(-1, 1)}, rng.uniform(0.05, 0.8)});
        // Sum of radii over preserved disks meeting E, input vs output sides.
        double sum_in = 0.0, sum_out = 0.0;
        for (const auto& [in_idx, out_idx] : rep.preserved_map) {
            if (region_meets_closed_disk(e, reduced.inner[in_idx]))
                sum_in += reduced.inner[in_idx].radius;
            if (region_meets_closed_disk(e, out.inner[out_idx]))
                sum_out += out.inner[out_idx].radius;
        }
        CHECK(sum_in == sum_out); // bijection maps disks to identical disks
    }
    CHECK(equality_outside_region(c, out, v, SampleConfig{20000, 17, std::nullopt}).ok);
}

TEST_CASE("controlled: multi-pair collection rewrites each cluster in place") {
    // Two separated clusters, each with an overlapping pair, each under its
    // own controlling pair; plus one far disk that must be preserved.
    Cheese c = unit_cheese({{{0.45, 0}, 0.05},
                            {{0.52, 0}, 0.05},
                            {{-0.45, 0}, 0.05},
                            {{-0.52, 0}, 0.05},
                            {{0, -0.55}, 0.04}});
    ControllingCollection cc;
    cc.pairs.push_back({region_disk({{0.485, 0}, 0.06}), 0.3});
    cc.pairs.push_back({region_disk({{-0.485, 0}, 0.06}), 0.3});

    const auto [out, rep] = controlled_classicalise(c, cc);
    CHECK(is_classical(out));
    CHECK(rep.steps.size() == 2);
    CHECK(rep.assertions_checked.combined_in_dilation == 2);
    CHECK(out.outer == c.outer);

    const Disk far{{0, -0.55}, 0.04};
    CHECK(std::count(out.inner.begin(), out.inner.end(), far) == 1);
    CHECK(equality_outside_region(c, out, collection_v_region(cc),
                                  SampleConfig{20000, 23, std::nullopt})
              .ok);
}

TEST_CASE("controlled: annulus-shaped K with a chained combine cluster") {
    // Eight mutually overlapping disks strung along an arc of the circle
    // |z| = 0.5, inside an annular controlling region. Rewriting chains
    // several combines; every intermediate disk must stay in the dilation.
    Cheese c{Disk{{0, 0}, 2}, std::nullopt, {}, 0.0};
    for (int k = 0; k < 8; ++k) {
        const double ang = 0.02 * k;
        c.inner.push_back({{0.5 * std::cos(ang), 0.5 * std::sin(ang)}, 0.01});
    }
    const Disk far{{-1.2, 0}, 0.1};
    c.inner.push_back(far);

    ControllingCollection cc;
    cc.pairs.push_back({region_annulus({{0, 0}, 0.48, 0.52}), 0.4});

    const auto [out, rep] = controlled_classicalise(c, cc);
    CHECK(is_classical(out));
    CHECK(out.outer == c.outer);
    CHECK(rep.steps.size() == 7);
    CHECK(rep.assertions_checked.combined_in_dilation == 7);
    CHECK(std::count(out.inner.begin(), out.inner.end(), far) == 1);
    CHECK(equality_outside_region(c, out, collection_v_region(cc),
                                  SampleConfig{20000, 7, std::nullopt})
              .ok);
    CHECK(local_rho_dilation(out, cc.pairs[0]) <=
          local_rho_dilation(remove_redundancy(c), cc.pairs[0]) + 1e-12);
}

TEST_CASE("annular_remove_redundancy") {
    // Disk inside the hole is dropped.
    Cheese a{Disk{{0, 0}, 4}, Disk{{0, 0}, 1}, {{{0, 0}, 0.5}}, 0.0};
    CHECK(annular_remove_redundancy(a).inner.empty());

    // Nested inner disks: the contained one goes.
    Cheese b{Disk{{0, 0}, 4}, Disk{{0, 0}, 1}, {{{2.5, 0}, 0.5}, {{2.5, 0}, 0.2}}, 0.0};
    CHECK(annular_remove_redundancy(b).inner == std::vector<Disk>{{{2.5, 0}, 0.5}});

    // Disjoint valid disks are only reordered (sorted by radius).
    Cheese c{Disk{{0, 0}, 4}, Disk{{0, 0}, 1},
             {{{2, 0}, 0.2}, {{-2, 0}, 0.5}, {{0, 2.5}, 0.3}}, 0.0};
    CHECK(annular_remove_redundancy(c).inner ==
          std::vector<Disk>{{{-2, 0}, 0.5}, {{0, 2.5}, 0.3}, {{2, 0}, 0.2}});

    // X and the annulus are unchanged.
    Rng rng(11);
    const Cheese r = random_annular(77, 25);
    const Cheese rr = annular_remove_redundancy(r);
    CHECK(rr.outer == r.outer);
    CHECK(rr.hole == r.hole);
    for (int i = 0; i < 5000; ++i) {
        const Point p{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        CHECK(membership(r, p) == membership(rr, p));
    }
    CHECK(annular_rho(rr) <= annular_rho(r) + 1e-12);
}

TEST_CASE("annular_classicalise: stated examples") {
    // Disk touching the hole closure: one pull-in grows the hole.
    const Cheese c{Disk{{0, 0}, 4}, Disk{{0, 0}, 1}, {{{1.2, 0}, 0.3}}, 0.0};
    CHECK(annular_delta(c) == doctest::Approx(2.4).epsilon(1e-15));
    const auto [out, rep] = annular_classicalise(c);
    REQUIRE(rep.steps.size() == 1);
    CHECK(rep.steps[0].kind == StepKind::AnnularPullIn);
    CHECK(out.inner.empty());
    CHECK(out.hole->radius == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(out.outer.radius == 4.0);
    CHECK(*rep.annular_delta_after == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(*rep.annular_delta_after >= *rep.annular_delta_before);

    // Already annular-classical: unchanged.
    const Cheese ok{Disk{{0, 0}, 4}, Disk{{0, 0}, 1}, {{{2.5, 0}, 0.4}}, 0.0};
    const auto [out2, rep2] = annular_classicalise(ok);
    CHECK(out2 == ok);
    CHECK(rep2.steps.empty());

    // Two overlapping disks inside the annulus: one combine, strict gain.
    const Cheese two{Disk{{0, 0}, 4}, Disk{{0, 0}, 1},
                     {{{2.5, 0}, 0.3}, {{2.8, 0}, 0.3}}, 0.0};
    const auto [out3, rep3] = annular_classicalise(two);
    REQUIRE(rep3.steps.size() == 1);
    CHECK(rep3.steps[0].kind == StepKind::Combine);
    CHECK(*rep3.annular_delta_after > *rep3.annular_delta_before);
    CHECK(is_classical(out3));
}

TEST_CASE("annular_classicalise: preconditions") {
    CHECK_THROWS_AS(annular_classicalise(unit_cheese({})), precondition_error);
    const Cheese thin{Disk{{0, 0}, 2}, Disk{{0, 0}, 1},
                      {{{1.5, 0}, 0.3}, {{-1.5, 0}, 0.3}}, 0.0};
    CHECK(annular_delta(thin) <= 0);
    CHECK_THROWS_AS(annular_classicalise(thin), precondition_error);
}

TEST_CASE("annular_classicalise: disk exactly touching the outer circle") {
    // Dyadic data: 3.5 + 0.5 == 4 exactly, the closure-meeting edge case.
    const Cheese c{Disk{{0, 0}, 4}, Disk{{0, 0}, 1}, {{{3.5, 0}, 0.5}}, 0.0};
    const auto [out, rep] = annular_classicalise(c);
    CHECK(is_classical(out));
    CHECK(out.outer.radius == 3.0);
    CHECK(out.inner.empty());
    CHECK(*rep.annular_delta_after >= *rep.annular_delta_before);
}

TEST_CASE("annular_classicalise: radius bounds on random annular cheeses") {
    int done = 0;
    for (std::uint64_t seed = 0; done < 60; ++seed) {
        const Cheese c = random_annular(seed, 4 + seed % 25);
        if (!(annular_delta(c) > 0)) continue;
        ++done;
        const double budget = 2 * annular_rho(c);
        const auto [out, rep] = annular_classicalise(c);

        CHECK(is_classical(out));
        CHECK(out.annular());
        CHECK(*rep.annular_delta_after >= *rep.annular_delta_before - 1e-9);
        CHECK(out.outer.radius <= c.outer.radius + 1e-9);
        CHECK(out.outer.radius >= c.outer.radius - budget - 1e-9);
        CHECK(out.hole->radius >= c.hole->radius - 1e-9);
        CHECK(out.hole->radius <= c.hole->radius + budget + 1e-9);
        CHECK(out.outer.center == c.outer.center);
        CHECK(rep.steps.size() <= rep.initial_significant);
        CHECK(containment_check(out, c, SampleConfig{2000, seed, std::nullopt}).ok);
    }
}

TEST_CASE("step invariants are checked and counted") {
    const Cheese c = random_cheese(12345, 40, 0.8);
    const auto [out, rep] = classicalise(c);
    CHECK(rep.assertions_checked.step_monotonicity == rep.steps.size());
    CHECK(is_classical(out));
}

TEST_CASE("rewriters are deterministic") {
    const Cheese c = random_cheese(777, 60, 0.75);
    const auto [o1, r1] = classicalise(c);
    const auto [o2, r2] = classicalise(c);
    CHECK(o1 == o2);
    CHECK(r1.steps.size() == r2.steps.size());
    for (std::size_t i = 0; i < r1.steps.size(); ++i) {
        CHECK(r1.steps[i].kind == r2.steps[i].kind);
        CHECK(r1.steps[i].result == r2.steps[i].result);
    }

    const Cheese a = random_annular(991, 30);
    REQUIRE(annular_delta(a) > 0);
    CHECK(annular_classicalise(a).first == annular_classicalise(a).first);
}

TEST_CASE("tail budget is carried through and counted in the gate") {
    Cheese c = random_cheese(31, 20, 0.6);
    c.tail_budget = 0.02;
    const auto [out, rep] = classicalise(c);
    CHECK(out.tail_budget == 0.02);
    CHECK(is_classical(out));
    CHECK(rep.delta1_after >= rep.delta1_before - 1e-9);

    // A tail large enough to spend the whole budget blocks the gate.
    Cheese blocked = unit_cheese({{{0.2, 0}, 0.5}, {{-0.2, 0}, 0.45}});
    blocked.tail_budget = 0.06;
    CHECK(delta(blocked, 1.0) <= 0);
    CHECK_THROWS_AS(classicalise(blocked), precondition_error);
}

TEST_CASE("ring of escaping disks: chained pull-ins terminate and nest") {
    // Twelve disks straddling the outer circle force repeated pull-ins,
    // each shrinking the outer disk further.
    Cheese c{Disk{{0, 0}, 2}, std::nullopt, {}, 0.0};
    for (int k = 0; k < 12; ++k) {
        const double ang = 2 * M_PI * k / 12.0;
        c.inner.push_back({{1.95 * std::cos(ang), 1.95 * std::sin(ang)}, 0.05});
    }
    REQUIRE(delta(c, 1.0) > 0);
    const auto [out, rep] = classicalise(c);
    CHECK(is_classical(out));
    CHECK(rep.steps.size() <= 12);
    CHECK(out.outer.radius < c.outer.radius);
    CHECK(containment_check(out, c, SampleConfig{20000, 3, std::nullopt}).ok);
}

TEST_CASE("annular: overlapping cluster combining across the hole") {
    // Disks hugging the hole overlap each other; their combination swallows
    // part of the hole neighbourhood and must be absorbed by hole growth.
    Cheese c{Disk{{0, 0}, 6}, Disk{{0, 0}, 1}, {}, 0.0};
    for (int k = 0; k < 6; ++k) {
        const double ang = 2 * M_PI * k / 6.0;
        c.inner.push_back({{1.3 * std::cos(ang), 1.3 * std::sin(ang)}, 0.28});
    }
    REQUIRE(annular_delta(c) > 0);
    const auto [out, rep] = annular_classicalise(c);
    CHECK(is_classical(out));
    CHECK(out.hole->radius >= c.hole->radius);
    CHECK(*rep.annular_delta_after >= *rep.annular_delta_before - 1e-9);
    CHECK(containment_check(out, c, SampleConfig{20000, 9, std::nullopt}).ok);
}
