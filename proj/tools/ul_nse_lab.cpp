#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

#include "ulnse/harness/config.hpp"
#include "ulnse/harness/experiments.hpp"
#include "ulnse/harness/report.hpp"
#include "ulnse/parallel.hpp"

namespace h = ulnse::harness;

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments for the damped 2D Navier-Stokes equations in uniformly local spaces"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
    run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    auto* out_opt = run->add_option("--out", out_dir, "Output directory (overrides the config)");
    auto* seed_opt = run->add_option("--seed", seed, "Run a single seed");

    std::string manifest;
    auto* report = app.add_subcommand("report", "Summarize a finished run");
    report->add_option("manifest", manifest, "manifest.json of the run")->required();

    std::string a;
    std::string b;
    auto* compare = app.add_subcommand("compare", "Relative differences between two runs at matched times");
    compare->add_option("manifest_a", a)->required();
    compare->add_option("manifest_b", b)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        ulnse::configure_threads();
        if (*run) {
            const h::ExperimentConfig cfg = h::parse_config(config_path);
            h::RunOptions opts;
            if (*out_opt) opts.out = out_dir;
            if (*seed_opt) opts.seed = seed;
            const h::RunManifest m = h::run_experiment(cfg, opts);
            const auto path = h::output_dir(cfg, opts) / "manifest.json";
            if (m.status != "ok") {
                std::cerr << "run failed: " << m.error << "\nmanifest: " << path.string() << "\n";
                return 1;
            }
            const auto rows = h::summarize(path);
            std::cout << h::format_summary(m.experiment, rows) << "manifest: " << path.string() << "\n";
            for (const auto& r : rows) {
                if (!r.pass()) return 2;
            }
        } else if (*report) {
            const auto rows = h::summarize(manifest);
            std::cout << h::format_summary(h::read_manifest(manifest).experiment, rows);
            for (const auto& r : rows) {
                if (!r.pass()) return 2;
            }
        } else {
            std::cout << h::format_diff(h::compare_runs(a, b));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
