#include "prem/errors.hpp"
#include "prem/io.hpp"
#include "prem/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

int default_jobs()
{
    if (const char* env = std::getenv("PREM_JOBS")) {
        try {
            int j = std::stoi(env);
            if (j >= 1) return j;
        } catch (const std::exception&) {
        }
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"prem: double-point obstructions and lifts of PL maps"};
    app.require_subcommand(1);
    bool json = false;
    int jobs = default_jobs();
    app.add_flag("--json", json, "Emit a JSON report");
    app.add_option("--jobs", jobs, "Worker thread cap (default PREM_JOBS or 1)")->check(CLI::PositiveNumber);

    std::string map_file, lift_file, out_file, alpha_file, star_file, complex_file, values_file, tgt_file, tgt_coords;
    std::string gen_name, gen_dir = ".";
    std::vector<int> gen_params;
    int k = 1;
    int n = -1;
    bool trace = false;
    std::function<prem::Report()> action;

    auto* delta = app.add_subcommand("delta", "Double-point complex with its involution");
    delta->add_option("map", map_file)->required();
    delta->callback([&] { action = [&] { return prem::run_delta(prem::load_map(map_file)); }; });

    auto* yang = app.add_subcommand("yang", "Yang index of the double-point locus");
    yang->add_option("map", map_file)->required();
    yang->callback([&] { action = [&] { return prem::run_yang(prem::load_map(map_file)); }; });

    auto* obstruct = app.add_subcommand("obstruct", "Decide the equivariant map to the (k-1)-sphere");
    obstruct->add_option("-k", k)->required()->check(CLI::PositiveNumber);
    obstruct->add_option("map", map_file)->required();
    obstruct->callback([&] { action = [&] { return prem::run_obstruct(prem::load_map(map_file), k); }; });

    auto* lift = app.add_subcommand("lift", "Construct a lift g with f x g an embedding");
    lift->add_option("-k", k)->required()->check(CLI::PositiveNumber);
    lift->add_option("map", map_file)->required();
    lift->add_option("--alpha", alpha_file, "Witness file");
    lift->add_option("--star", star_file, "Boundary values on the star");
    lift->add_option("-o,--output", out_file, "Write the lift file here");
    lift->callback([&] {
        action = [&] {
            prem::LiftOptions opt;
            opt.k = k;
            opt.jobs = jobs;
            if (!alpha_file.empty()) opt.alpha = alpha_file;
            if (!star_file.empty()) opt.star = star_file;
            return prem::run_lift(prem::load_map(map_file), opt);
        };
    });

    auto* verify = app.add_subcommand("verify", "Certify that f x g is an embedding");
    verify->add_option("map", map_file)->required();
    verify->add_option("lift", lift_file)->required();
    verify->callback([&] {
        action = [&] {
            auto b = prem::load_map(map_file);
            return prem::run_verify(b, prem::load_lift(lift_file, b.map->source_ptr()), jobs);
        };
    });

    auto* plify = app.add_subcommand("plify", "Replace a lift by one linear on a subdivision");
    plify->add_option("map", map_file)->required();
    plify->add_option("lift", lift_file)->required();
    plify->add_flag("--trace", trace, "Per-stage d_i, r_i and cell counts");
    plify->add_option("-o,--output", out_file, "Write the linearized lift file here");
    plify->callback([&] {
        action = [&] {
            auto b = prem::load_map(map_file);
            return prem::run_plify(b, prem::load_lift(lift_file, b.map->source_ptr()), trace, jobs);
        };
    });

    auto* stability = app.add_subcommand("stability", "General position and stability of a linear map");
    stability->add_option("complex", complex_file)->required();
    stability->add_option("values", values_file)->required();
    auto* tc = stability->add_option("--target", tgt_file, "Target triangulation");
    stability->add_option("--target-coords", tgt_coords, "Target vertex coordinates")->needs(tc);
    tc->needs(stability->get_option("--target-coords"));
    stability->callback([&] {
        action = [&] {
            auto kc = prem::load_complex(complex_file);
            std::istringstream vin(prem::read_file(values_file));
            auto values = prem::parse_realization(vin, kc, values_file);
            std::optional<prem::GeometricComplex> target;
            if (!tgt_file.empty()) {
                auto l = std::make_shared<const prem::SimplicialComplex>(prem::load_complex(tgt_file));
                std::istringstream tin(prem::read_file(tgt_coords));
                target.emplace(l, prem::parse_realization(tin, *l, tgt_coords));
            }
            return prem::run_stability(kc, values, target);
        };
    });

    auto* report = app.add_subcommand("report-thm3", "Full obstruction report for a branched covering");
    report->add_option("map", map_file)->required();
    report->add_option("-n", n, "Source dimension (default: meta n)");
    report->callback([&] {
        action = [&] {
            return prem::run_report_thm3(prem::load_map(map_file), n >= 0 ? std::optional<int>(n) : std::nullopt);
        };
    });

    auto* gen = app.add_subcommand("gen", "Write an example (cycle-cover, cross-polytope, join-lens, figure-eight, fold-path)");
    gen->add_option("name", gen_name)->required();
    gen->add_option("params", gen_params);
    gen->add_option("-d,--dir", gen_dir, "Output directory");
    gen->callback([&] { action = [&] { return prem::run_gen(gen_name, gen_params, gen_dir); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    prem::Report r;
    try {
        r = action();
        if (!out_file.empty() && r.json.contains("lift")) prem::write_file(out_file, r.json["lift"].get<std::string>());
    } catch (const std::exception& e) {
        r = prem::error_report(e);
        if (!json) {
            std::cerr << r.text;
            return r.exit_code;
        }
    }
    if (json) std::cout << r.json.dump(2) << "\n";
    else std::cout << r.text;
    return r.exit_code;
}
