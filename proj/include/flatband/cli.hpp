#pragma once

#include <iosfwd>
#include <string>

#include "flatband/phase.hpp"

namespace flatband {

/// Everything the command-line front end can ask for. Frequencies are in
/// units of omega12. Which fields matter depends on the runner invoked.
struct RunConfig {
    double omega_m = 1.0;
    int workers = 1;
    std::string output_path; ///< empty: write to the stream argument
    std::string pgm_path;    ///< popmap only; empty: no image

    // solve
    double omega_coupling = 0.0;
    double delta = 0.0;
    int n_max = 20;

    // boundary
    AxisSpec delta_axis{0.1, 100.0, 20, true};
    double tol = 1e-3;
    double search_ceiling = 10.0;

    // popmap
    AxisSpec omega_axis{0.0, 1.5, 40, false};
    AxisSpec map_delta_axis{0.0, 20.0, 40, false};

    // oracle
    int n_sites = 2;
    int n_max_site = 16;
};

/// The runners return process exit codes: 0 success, 1 runtime failure,
/// 2 configuration error. Tabular results go to `out` (or output_path when
/// set); diagnostics go to `err`.

/// Single mean-field solution as key=value lines.
int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Phase boundary as CSV: delta_over_omega12,omega_c_over_omega12,status.
/// Rows are sorted by delta; a row whose search exhausted the coupling
/// ceiling carries status no-transition-in-range and an empty omega_c slot
/// (nan). Exit 0 as long as one row produced a determination.
int run_boundary(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Population map as CSV in delta-major order:
/// omega_over_omega12,delta_over_omega12,population,psi_star. Optionally a
/// binary P5 PGM (pgm_path) with populations 0..0.5 mapped to 0..255 and
/// delta increasing downward.
int run_popmap(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Brute-force lattice comparison report; output_path stores it verbatim
/// as a regression fixture.
int run_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Worker-count default: FLATBAND_WORKERS when set to a positive integer,
/// otherwise 1.
int default_workers_from_env();

/// %.16e rendering used for all CSV numbers (17 significant digits).
std::string format_scientific(double v);

} // namespace flatband
