#include "flatband/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "flatband/errors.hpp"
#include "flatband/meanfield.hpp"
#include "flatband/oracle.hpp"

namespace flatband {

namespace {

/// Write `text` to cfg.output_path when set, else to `fallback`.
bool deliver(const std::string& text, const std::string& path,
             std::ostream& fallback, std::ostream& err) {
    if (path.empty()) {
        fallback << text;
        return true;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot open output path " << path << "\n";
        return false;
    }
    file << text;
    if (!file.flush()) {
        err << "error: failed writing " << path << "\n";
        return false;
    }
    return true;
}

int usage_error(std::ostream& err, const std::string& what) {
    err << "usage error: " << what << "\n";
    return 2;
}

} // namespace

std::string format_scientific(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

int default_workers_from_env() {
    const char* raw = std::getenv("FLATBAND_WORKERS");
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    const long parsed = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || parsed < 1 || parsed > 1024) return 1;
    return static_cast<int>(parsed);
}

int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ModelParams p;
    p.omega_m = cfg.omega_m;
    p.delta = cfg.delta;
    p.omega_coupling = cfg.omega_coupling;
    p.n_max = cfg.n_max;
    try {
        p.validate();
    } catch (const InvalidParameterError& e) {
        return usage_error(err, e.what());
    }

    MeanFieldSolution sol;
    try {
        sol = minimize_over_psi(p);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    std::string text;
    text += "psi_star=" + format_scientific(sol.psi_star) + "\n";
    text += "ground_energy=" + format_scientific(sol.ground_energy) + "\n";
    text += "sigma_z=" + format_scientific(sol.sigma_z) + "\n";
    text += "population=" + format_scientific(sol.population) + "\n";
    text += "photon_number=" + format_scientific(sol.photon_number) + "\n";
    text += "n_max_used=" + std::to_string(sol.n_max_used) + "\n";
    text += std::string("converged=") + (sol.converged ? "true" : "false") +
            "\n";
    return deliver(text, cfg.output_path, out, err) ? 0 : 1;
}

int run_boundary(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<double> deltas;
    try {
        if (cfg.workers < 1)
            throw InvalidParameterError("workers must be at least 1");
        if (!(cfg.tol > 0.0))
            throw InvalidParameterError("tol must be positive");
        deltas = cfg.delta_axis.values();
        for (double d : deltas)
            if (d <= 0.0)
                throw InvalidParameterError(
                    "boundary scan needs strictly positive delta values");
    } catch (const InvalidParameterError& e) {
        return usage_error(err, e.what());
    }

    CriticalCouplingOptions opts;
    opts.omega_m = cfg.omega_m;
    opts.search_ceiling = cfg.search_ceiling;
    PhaseBoundary boundary;
    try {
        boundary = phase_boundary_scan(deltas, cfg.tol, opts, cfg.workers);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    std::string csv = "delta_over_omega12,omega_c_over_omega12,status\n";
    int determined = 0;
    for (const BoundaryEntry& entry : boundary.entries) {
        csv += format_scientific(entry.delta) + ",";
        csv += format_scientific(entry.status == TransitionStatus::ok
                                     ? entry.omega_c
                                     : std::nan("")) +
               ",";
        csv += to_string(entry.status);
        csv += "\n";
        if (entry.status != TransitionStatus::error) ++determined;
        if (entry.status == TransitionStatus::error)
            err << "warning: delta = " << entry.delta << ": " << entry.message
                << "\n";
    }

    if (!deliver(csv, cfg.output_path, out, err)) return 1;
    return determined > 0 ? 0 : 1;
}

int run_popmap(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<double> omegas, deltas;
    try {
        if (cfg.workers < 1)
            throw InvalidParameterError("workers must be at least 1");
        omegas = cfg.omega_axis.values();
        deltas = cfg.map_delta_axis.values();
        if (omegas.front() < 0.0 || deltas.front() < 0.0)
            throw InvalidParameterError("axes must be nonnegative");
    } catch (const InvalidParameterError& e) {
        return usage_error(err, e.what());
    }

    SweepGrid grid;
    try {
        grid = population_map(cfg.omega_axis, cfg.map_delta_axis, cfg.omega_m,
                              1.0, cfg.workers);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    const int oc = cfg.omega_axis.count;
    std::string csv =
        "omega_over_omega12,delta_over_omega12,population,psi_star\n";
    int ok_cells = 0;
    for (int di = 0; di < cfg.map_delta_axis.count; ++di) {
        for (int oi = 0; oi < oc; ++oi) {
            const SweepCell& cell =
                grid.cells[static_cast<std::size_t>(di * oc + oi)];
            csv += format_scientific(omegas[static_cast<std::size_t>(oi)]) + ",";
            csv += format_scientific(deltas[static_cast<std::size_t>(di)]) + ",";
            csv += format_scientific(cell.population) + ",";
            csv += format_scientific(cell.psi_star) + "\n";
            if (cell.ok)
                ++ok_cells;
            else
                err << "warning: omega = " << omegas[static_cast<std::size_t>(oi)]
                    << ", delta = " << deltas[static_cast<std::size_t>(di)]
                    << ": " << cell.message << "\n";
        }
    }
    if (!deliver(csv, cfg.output_path, out, err)) return 1;

    if (!cfg.pgm_path.empty()) {
        // Populations 0..1/2 map to 0..255; rows top to bottom follow the
        // delta axis, so width increases rightward and delta downward.
        std::string pgm = "P5\n" + std::to_string(oc) + " " +
                          std::to_string(cfg.map_delta_axis.count) + "\n255\n";
        for (int di = 0; di < cfg.map_delta_axis.count; ++di) {
            for (int oi = 0; oi < oc; ++oi) {
                const SweepCell& cell =
                    grid.cells[static_cast<std::size_t>(di * oc + oi)];
                double v = cell.ok ? cell.population : 0.0;
                if (!std::isfinite(v)) v = 0.0;
                long byte = std::lround(v * 510.0);
                byte = std::max(0L, std::min(255L, byte));
                pgm.push_back(static_cast<char>(static_cast<unsigned char>(byte)));
            }
        }
        std::ofstream file(cfg.pgm_path, std::ios::binary);
        if (!file || !(file << pgm).flush()) {
            err << "error: failed writing " << cfg.pgm_path << "\n";
            return 1;
        }
    }
    return ok_cells > 0 ? 0 : 1;
}

int run_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    FullModelSpec spec;
    try {
        if (cfg.n_sites < 1 || cfg.n_sites > 3)
            throw InvalidParameterError("n_sites must be between 1 and 3");
        spec.n_sites = cfg.n_sites;
        spec.dispersion =
            cfg.delta == 0.0
                ? make_flat_dispersion(cfg.omega_m, cfg.n_sites)
                : make_cosine_dispersion(cfg.omega_m, cfg.delta, cfg.n_sites);
        spec.n_max_site = cfg.n_max_site;
        spec.omega_coupling = cfg.omega_coupling;
        spec.validate();
    } catch (const InvalidParameterError& e) {
        return usage_error(err, e.what());
    } catch (const SizeError& e) {
        return usage_error(err, e.what());
    }

    ComparisonReport report;
    try {
        report = compare_full_vs_meanfield(spec);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    out << format_report(report);
    if (!cfg.output_path.empty()) {
        try {
            write_fixture(report, cfg.output_path);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return report.flat_checked && !report.flat_pass ? 1 : 0;
}

} // namespace flatband
