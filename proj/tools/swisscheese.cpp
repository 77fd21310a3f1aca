#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "swisscheese/oracle.hpp"
#include "swisscheese/serialize.hpp"

using namespace swisscheese;

namespace {

// Exit-code contract: 0 success (check: classical), 1 check failed /
// self-test mismatch, 2 parse or I/O error, 3 rewriter precondition failure.
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kParseError = 2;
constexpr int kPrecondition = 3;

int run_check(const std::string& in_path, bool as_json, bool exit_on_nonclassical) {
    const Cheese c = load_cheese(in_path);
    const CheeseStats s = stats(c);
    const ErrorSet es = error_set(c);

    if (as_json) {
        std::cout << serialize_stats(s);
    } else {
        std::printf("delta1        = %.17g\n", s.delta1);
        std::printf("delta2        = %.17g\n", s.delta2);
        std::printf("rho           = %.17g\n", s.rho);
        std::printf("mu            = %.17g\n", s.mu);
        if (s.annular_rho) std::printf("annular rho   = %.17g\n", *s.annular_rho);
        if (s.annular_delta) std::printf("annular delta = %.17g\n", *s.annular_delta);
        std::printf("significant   = %zu\n", s.significant_count);
        std::printf("classical     = %s\n", s.classical ? "yes" : "no");
        std::printf("semiclassical = %s\n", s.semiclassical ? "yes" : "no");
        std::printf("error set: %zu intersecting pairs, %zu boundary escapes\n",
                    es.pair_violations.size(), es.boundary_violations.size());
    }
    if (exit_on_nonclassical && !s.classical) return kCheckFailed;
    return kOk;
}

int run_classicalise(const std::string& in_path, const std::string& out_path,
                     const std::string& mode, const std::string& regions_path) {
    const Cheese c = load_cheese(in_path);
    std::pair<Cheese, ClassicalisationReport> result = [&] {
        if (mode == "plain") return classicalise(c);
        if (mode == "annular") return annular_classicalise(c);
        if (mode == "controlled") {
            if (regions_path.empty())
                throw precondition_error("regions_required",
                                         "controlled mode needs --regions");
            return controlled_classicalise(c, load_regions(regions_path));
        }
        throw precondition_error("mode", "unknown mode '" + mode + "'");
    }();

    write_file(out_path, serialize_cheese(result.first));
    write_file(out_path + ".report.json", serialize_report(result.second));
    std::printf("%s: %zu steps, delta1 %.17g -> %.17g\n", mode.c_str(),
                result.second.steps.size(), result.second.delta1_before,
                result.second.delta1_after);
    return kOk;
}

int run_area(const std::string& in_path, std::size_t points, std::uint64_t seed) {
    const Cheese c = load_cheese(in_path);
    const CheeseStats s = stats(c);
    const AreaEstimate est = mc_area(c, SampleConfig{points, seed, std::nullopt});
    const double analytic = analytic_area(c);
    const double gap = std::abs(analytic - est.value);
    const double sigmas = est.std_error > 0.0 ? gap / est.std_error : 0.0;

    std::printf("{\n  \"delta2_area\": %.17g,\n  \"mc_area\": %.17g,\n"
                "  \"std_error\": %.17g,\n  \"sigmas\": %.17g,\n"
                "  \"semiclassical\": %s\n}\n",
                analytic, est.value, est.std_error, sigmas,
                s.semiclassical ? "true" : "false");

    // Self-test: the identity only holds for (semi)classical cheeses.
    if (s.semiclassical && sigmas > 4.0) return kCheckFailed;
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swiss cheese toolkit: functionals, classicalisation, generators"};
    app.require_subcommand(1);

    std::string in_path, out_path, regions_path, mode = "plain", kind;
    bool as_json = false, overlay = false;
    std::uint64_t seed = 0;
    std::size_t n_disks = 20, mc_points = 1000000;
    double overlap_bias = 0.3, r0 = 1.0, r1 = 0.5, budget = 0.05, epsilon = 0.015625;
    int levels = 4, disks_per_level = 6;

    CLI::App* check = app.add_subcommand("check", "stats, predicates and the error set");
    check->add_option("input", in_path)->required();
    check->add_flag("--json", as_json);

    CLI::App* cls = app.add_subcommand("classicalise", "rewrite to a classical cheese");
    cls->add_option("input", in_path)->required();
    cls->add_option("--out", out_path)->required();
    cls->add_option("--mode", mode)->check(CLI::IsMember({"plain", "annular", "controlled"}));
    cls->add_option("--regions", regions_path);

    CLI::App* gen = app.add_subcommand("generate", "emit test cheeses");
    gen->add_option("kind", kind)->required()
        ->check(CLI::IsMember({"random", "annular", "ofarrell"}));
    gen->add_option("--out", out_path)->required();
    gen->add_option("--seed", seed);
    gen->add_option("--disks", n_disks);
    gen->add_option("--overlap-bias", overlap_bias);
    gen->add_option("--r0", r0);
    gen->add_option("--r1", r1);
    gen->add_option("--budget", budget);
    gen->add_option("--epsilon", epsilon);
    gen->add_option("--levels", levels);
    gen->add_option("--disks-per-level", disks_per_level);

    CLI::App* render = app.add_subcommand("render", "draw a cheese as SVG");
    render->add_option("input", in_path)->required();
    render->add_option("--out", out_path)->required();
    render->add_option("--regions", regions_path);
    render->add_flag("--overlay-regions", overlay);

    CLI::App* st = app.add_subcommand("stats", "print the functionals");
    st->add_option("input", in_path)->required();
    st->add_flag("--json", as_json);

    CLI::App* area = app.add_subcommand("area", "Monte-Carlo area vs pi*delta2");
    area->add_option("input", in_path)->required();
    area->add_option("--mc-points", mc_points);
    area->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(in_path, as_json, true);

        if (cls->parsed()) return run_classicalise(in_path, out_path, mode, regions_path);

        if (gen->parsed()) {
            if (kind == "random") {
                const Cheese c = random_cheese(seed, n_disks, overlap_bias);
                write_file(out_path, serialize_cheese(c, {{"kind", "random"},
                                                          {"seed", std::to_string(seed)}}));
            } else if (kind == "annular") {
                const Cheese c = synthetic_annular({0.0, 0.0}, r0, r1, budget, n_disks, seed);
                write_file(out_path, serialize_cheese(c, {{"kind", "annular"},
                                                          {"seed", std::to_string(seed)}}));
            } else {
                const OFarrellLayout layout = ofarrell_layout(
                    OFarrellParams{epsilon, levels, disks_per_level, seed});
                write_file(out_path, serialize_cheese(layout.merged,
                                                      {{"kind", "ofarrell"},
                                                       {"seed", std::to_string(seed)}}));
                write_file(out_path + ".regions.json", serialize_regions(layout.controlling));
                write_file(out_path + ".layout.json", serialize_layout(layout, epsilon));
            }
            return kOk;
        }

        if (render->parsed()) {
            const Cheese c = load_cheese(in_path);
            RenderOptions opts;
            ControllingCollection cc;
            if (overlay) {
                if (regions_path.empty())
                    throw parse_error("--overlay-regions needs --regions <file>");
                cc = load_regions(regions_path);
                opts.overlay_regions = &cc;
            }
            write_file(out_path, render_svg(c, opts));
            return kOk;
        }

        if (st->parsed()) return run_check(in_path, as_json, false);

        if (area->parsed()) return run_area(in_path, mc_points, seed);
    } catch (const parse_error& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kParseError;
    } catch (const precondition_error& e) {
        std::fprintf(stderr, "precondition failed [%s]: %s\n", e.name().c_str(), e.what());
        return kPrecondition;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kParseError;
    }
    return kOk;
}
