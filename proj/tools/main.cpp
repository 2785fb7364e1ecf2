#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "flatband/cli.hpp"

namespace {

/// Attach the worker-count option with its environment default.
void add_workers(CLI::App* cmd, int& target) {
    cmd->add_option("--workers", target,
                    "worker threads for grid scans (env FLATBAND_WORKERS)")
        ->envname("FLATBAND_WORKERS")
        ->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Mean-field phase diagram of two flat electronic bands coupled to a "
        "multimode bosonic field"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "read options from a key=value file (flags win)");

    flatband::RunConfig cfg;
    cfg.workers = flatband::default_workers_from_env();

    CLI::App* solve = app.add_subcommand(
        "solve", "minimize the mean-field energy at one parameter point");
    solve->add_option("--omega", cfg.omega_coupling,
                      "coupling Omega / omega12")
        ->check(CLI::NonNegativeNumber);
    solve->add_option("--delta", cfg.delta, "dispersion width / omega12")
        ->check(CLI::NonNegativeNumber);
    solve->add_option("--omega-m", cfg.omega_m,
                      "minimum mode frequency / omega12")
        ->check(CLI::PositiveNumber);
    solve->add_option("--nmax", cfg.n_max, "initial Fock cutoff")
        ->check(CLI::NonNegativeNumber);
    solve->add_option("--output", cfg.output_path, "write the result here");

    CLI::App* boundary = app.add_subcommand(
        "boundary", "critical coupling over a range of dispersion widths");
    boundary->add_option("--delta-min", cfg.delta_axis.min,
                         "smallest width / omega12")
        ->check(CLI::PositiveNumber);
    boundary->add_option("--delta-max", cfg.delta_axis.max,
                         "largest width / omega12")
        ->check(CLI::PositiveNumber);
    boundary->add_option("--delta-count", cfg.delta_axis.count, "grid points")
        ->check(CLI::Range(2, 100000));
    boundary
        ->add_option("--delta-spacing",
                     [&cfg](const std::vector<std::string>& v) {
                         if (v[0] == "log") cfg.delta_axis.log_spaced = true;
                         else if (v[0] == "linear")
                             cfg.delta_axis.log_spaced = false;
                         else
                             return false;
                         return true;
                     },
                     "log (default) or linear")
        ->type_name("TEXT");
    boundary->add_option("--tol", cfg.tol, "bisection tolerance on omega_c")
        ->check(CLI::PositiveNumber);
    boundary->add_option("--ceiling", cfg.search_ceiling,
                         "largest coupling probed / omega12")
        ->check(CLI::PositiveNumber);
    boundary->add_option("--omega-m", cfg.omega_m,
                         "minimum mode frequency / omega12")
        ->check(CLI::PositiveNumber);
    boundary->add_option("--output", cfg.output_path, "write CSV here");
    add_workers(boundary, cfg.workers);

    CLI::App* popmap = app.add_subcommand(
        "popmap", "excited-band population over a coupling/width grid");
    popmap->add_option("--omega-min", cfg.omega_axis.min, "smallest coupling")
        ->check(CLI::NonNegativeNumber);
    popmap->add_option("--omega-max", cfg.omega_axis.max, "largest coupling")
        ->check(CLI::NonNegativeNumber);
    popmap->add_option("--omega-count", cfg.omega_axis.count, "grid points")
        ->check(CLI::Range(2, 100000));
    popmap->add_option("--delta-min", cfg.map_delta_axis.min, "smallest width")
        ->check(CLI::NonNegativeNumber);
    popmap->add_option("--delta-max", cfg.map_delta_axis.max, "largest width")
        ->check(CLI::NonNegativeNumber);
    popmap
        ->add_option("--delta-count", cfg.map_delta_axis.count, "grid points")
        ->check(CLI::Range(2, 100000));
    popmap->add_option("--omega-m", cfg.omega_m,
                       "minimum mode frequency / omega12")
        ->check(CLI::PositiveNumber);
    popmap->add_option("--output", cfg.output_path, "write CSV here");
    popmap->add_option("--pgm", cfg.pgm_path, "write a P5 grayscale map here");
    add_workers(popmap, cfg.workers);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "compare exact lattice diagonalization with the mean field");
    oracle->add_option("--sites", cfg.n_sites, "lattice sites (1 to 3)")
        ->check(CLI::Range(1, 3));
    oracle->add_option("--omega", cfg.omega_coupling,
                       "coupling Omega / omega12")
        ->check(CLI::NonNegativeNumber);
    oracle->add_option("--delta", cfg.delta, "dispersion width / omega12")
        ->check(CLI::NonNegativeNumber);
    oracle->add_option("--omega-m", cfg.omega_m,
                       "minimum mode frequency / omega12")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--nmax-site", cfg.n_max_site, "per-site Fock cutoff")
        ->check(CLI::NonNegativeNumber);
    oracle->add_option("--fixture", cfg.output_path,
                       "store the report as a fixture file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (solve->parsed())
        return flatband::run_solve(cfg, std::cout, std::cerr);
    if (boundary->parsed())
        return flatband::run_boundary(cfg, std::cout, std::cerr);
    if (popmap->parsed())
        return flatband::run_popmap(cfg, std::cout, std::cerr);
    if (oracle->parsed())
        return flatband::run_oracle(cfg, std::cout, std::cerr);
    return 2;
}
