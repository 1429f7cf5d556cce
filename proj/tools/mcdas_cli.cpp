// Command-line front end: scenario runs, Monte Carlo batches, parking paths
// and one-shot mode queries. Exit codes: 0 success, 1 validation error,
// 2 runtime divergence.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mcdas/mcdas.hpp"

namespace {

mcdas::sim::ExportFormat pick_format(const std::string& explicit_format,
                                     const std::string& out_path) {
    if (!explicit_format.empty()) return mcdas::sim::parse_format(explicit_format);
    if (out_path.size() >= 5 && out_path.compare(out_path.size() - 5, 5, ".json") == 0) {
        return mcdas::sim::ExportFormat::Json;
    }
    return mcdas::sim::ExportFormat::Csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MCDAS: midvehicle collision detection and avoidance simulator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run one scenario and export the tick records");
    std::string run_scenario_path, run_out, run_format;
    run->add_option("--scenario", run_scenario_path, "Scenario file (key-value or JSON)")
        ->required();
    run->add_option("--out", run_out, "Output file")->required();
    run->add_option("--format", run_format, "csv or json (default from --out extension)");
    run->callback([&] {
        const auto cfg = mcdas::sim::load_scenario(run_scenario_path);
        const auto records = mcdas::sim::run_scenario(cfg);
        mcdas::sim::export_records(records, run_out, pick_format(run_format, run_out));
        std::cout << "wrote " << records.size() << " tick records to " << run_out << "\n";
    });

    // park
    auto* park = app.add_subcommand("park", "Generate a reverse parking path");
    double gap_x = 0.0, gap_y = 0.0;
    double park_a = 0.4, park_b = 50.0, park_ymax = 3.7, park_k = 2.0, park_dt = 0.5;
    std::string park_out, park_format;
    park->add_option("--gap-x", gap_x, "Usable longitudinal gap x_m [m]")->required();
    park->add_option("--gap-y", gap_y, "Usable lateral gap y_m [m]")->required();
    park->add_option("--a", park_a, "Sigmoid rate (> 0 for parking)");
    park->add_option("--b", park_b, "Sigmoid shift coefficient");
    park->add_option("--ymax", park_ymax, "Lane-center separation [m]");
    park->add_option("--k", park_k, "x-advance rate [m/s]");
    park->add_option("--dt", park_dt, "Sample interval [s]");
    park->add_option("--out", park_out, "Output file")->required();
    park->add_option("--format", park_format, "csv or json (default from --out extension)");
    park->callback([&] {
        const auto clearances = mcdas::trajectory::ParkingClearances::from_limits(gap_x, gap_y);
        const mcdas::trajectory::SigmoidParams params{park_a, park_b, park_ymax, park_k};
        const auto result = mcdas::sim::run_parking(clearances, params, park_dt);
        mcdas::sim::export_records(result.records, park_out,
                                   pick_format(park_format, park_out));
        std::cout << "wrote " << result.records.size() << " samples to " << park_out
                  << "\nsettling target " << result.settling_target << " m, settling error "
                  << result.settling_error << " m\n";
    });

    // montecarlo
    auto* mc = app.add_subcommand("montecarlo", "Run a seeded batch and export the report");
    std::string mc_scenario_path, mc_out, mc_format;
    std::size_t mc_runs = 0;
    std::uint64_t mc_seed = 0;
    bool mc_seed_given = false;
    mc->add_option("--scenario", mc_scenario_path, "Scenario file")->required();
    mc->add_option("--runs", mc_runs, "Number of runs")->required();
    mc->add_option("--seed", mc_seed, "Master seed (overrides the scenario's sim.seed)")
        ->each([&](const std::string&) { mc_seed_given = true; });
    mc->add_option("--out", mc_out, "Output file")->required();
    mc->add_option("--format", mc_format, "csv or json (default from --out extension)");
    mc->callback([&] {
        auto cfg = mcdas::sim::load_scenario(mc_scenario_path);
        if (mc_seed_given) cfg.seed = mc_seed;
        const auto report = mcdas::sim::monte_carlo(cfg, mc_runs);
        mcdas::sim::export_report(report, mc_out, pick_format(mc_format, mc_out));
        std::cout << "wrote report for " << report.runs << " runs to " << mc_out << "\n";
        if (report.failed_runs) {
            std::cout << report.failed_runs << " runs failed; see the report\n";
        }
    });

    // modes
    auto* modes = app.add_subcommand("modes", "Print the selected mode for a snapshot file");
    std::string snapshot_path;
    modes->add_option("--snapshot", snapshot_path, "Snapshot file")->required();
    modes->callback([&] {
        const auto loaded = mcdas::sim::load_snapshot(snapshot_path);
        const auto mode = mcdas::decision::select_mode(loaded.snapshot, loaded.thresholds);
        std::cout << mcdas::decision::to_string(mode) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mcdas::tracking::FilterDivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
