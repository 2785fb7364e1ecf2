#include "flatband/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "flatband/errors.hpp"

namespace flatband {

namespace {

void require_valid(const ModelParams& p, double psi) {
    p.validate();
    if (!std::isfinite(psi))
        throw InvalidParameterError("psi must be finite");
}

void check_truncation(const TruncationControl& ctrl) {
    if (ctrl.step < 1)
        throw InvalidParameterError("truncation step must be at least 1");
    if (ctrl.ceiling < ctrl.step)
        throw InvalidParameterError("truncation ceiling below step");
    if (!(ctrl.eps_trunc > 0.0))
        throw InvalidParameterError("eps_trunc must be positive");
}

double energy_at_cutoff(const ModelParams& p, double psi, double mode_freq,
                        int n_max) {
    ModelParams q = p;
    q.n_max = n_max;
    return full_spectrum(build_mean_field_hamiltonian_at_mode(q, psi,
                                                              mode_freq))
        .front();
}

/// Adaptive convergence loop shared by the public entry points.
GroundEnergy converge(const ModelParams& p, double psi, double mode_freq,
                      const TruncationControl& ctrl, int hint) {
    int n_lo = std::max({p.n_max, hint, 0});
    n_lo = std::min(n_lo, ctrl.ceiling - ctrl.step);
    n_lo = std::max(n_lo, 0);
    for (;;) {
        const int n_hi = n_lo + ctrl.step;
        const double e_lo = energy_at_cutoff(p, psi, mode_freq, n_lo);
        const double e_hi = energy_at_cutoff(p, psi, mode_freq, n_hi);
        const double diff = std::abs(e_hi - e_lo);
        if (diff <= ctrl.eps_trunc) return {e_hi, n_hi};
        if (n_hi >= ctrl.ceiling)
            throw ConvergenceError(
                "Fock cutoff " + std::to_string(n_hi) +
                    " hit the ceiling with energy still moving by " +
                    std::to_string(diff),
                diff);
        n_lo = std::min(n_lo + std::max(ctrl.step, n_lo / 2),
                        ctrl.ceiling - ctrl.step);
    }
}

struct VectorObservables {
    double sigma_z;
    double photons;
};

VectorObservables observables_from_vector(const std::vector<double>& v) {
    double sz = 0.0, ph = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double w = v[i] * v[i];
        const int n = static_cast<int>(i / 2);
        sz += (i % 2 == 1) ? w : -w;
        ph += n * w;
    }
    return {std::clamp(sz, -1.0, 1.0), std::max(ph, 0.0)};
}

} // namespace

SymmetricMatrix build_mean_field_hamiltonian_at_mode(const ModelParams& p,
                                                     double psi,
                                                     double mode_freq) {
    require_valid(p, psi);
    if (!std::isfinite(mode_freq) || mode_freq <= 0.0)
        throw InvalidParameterError("mode frequency must be positive");

    const int levels = p.n_max + 1;
    const double wbar = p.omega_bar();
    const double wc = p.omega_coupling;
    SymmetricMatrix h(2 * levels);

    for (int n = 0; n < levels; ++n) {
        const double base = mode_freq * psi * psi + wbar * n;
        h.set(2 * n, 2 * n, base - 0.5 * p.omega12);
        h.set(2 * n + 1, 2 * n + 1, base + 0.5 * p.omega12);
        h.set(2 * n + 1, 2 * n, 2.0 * wc * psi);
        if (n + 1 < levels) {
            const double root = std::sqrt(static_cast<double>(n + 1));
            for (int s = 0; s < 2; ++s) {
                h.set(2 * (n + 1) + s, 2 * n + s, psi * mode_freq * root);
                h.set(2 * (n + 1) + (1 - s), 2 * n + s, wc * root);
            }
        }
    }
    return h;
}

SymmetricMatrix build_mean_field_hamiltonian(const ModelParams& p, double psi) {
    return build_mean_field_hamiltonian_at_mode(p, psi, p.omega_m);
}

double ground_energy_at(const ModelParams& p, double psi, int n_max) {
    require_valid(p, psi);
    if (n_max < 0)
        throw InvalidParameterError("n_max must be nonnegative");
    return energy_at_cutoff(p, psi, p.omega_m, n_max);
}

GroundEnergy ground_energy_info(const ModelParams& p, double psi,
                                const TruncationControl& ctrl,
                                int n_start_hint) {
    require_valid(p, psi);
    check_truncation(ctrl);
    return converge(p, psi, p.omega_m, ctrl, n_start_hint);
}

double ground_energy(const ModelParams& p, double psi) {
    return ground_energy_info(p, psi).energy;
}

Observables observables_at(const ModelParams& p, double psi) {
    const GroundEnergy ge = ground_energy_info(p, psi);
    ModelParams q = p;
    q.n_max = ge.n_max_used;
    const EigenPair pair =
        ground_eigenpair(build_mean_field_hamiltonian(q, psi));
    const VectorObservables obs = observables_from_vector(pair.vector);
    return {obs.sigma_z, std::clamp(0.5 * (obs.sigma_z + 1.0), 0.0, 1.0),
            obs.photons};
}

MeanFieldSolution minimize_over_psi(const ModelParams& p,
                                    const MinimizeOptions& opts) {
    require_valid(p, 0.0);
    check_truncation(opts.trunc);
    if (opts.coarse_points < 3)
        throw InvalidParameterError("coarse grid needs at least 3 points");
    if (!(opts.psi_tol > 0.0))
        throw InvalidParameterError("psi_tol must be positive");

    const TruncationControl& ctrl = opts.trunc;
    const GroundEnergy at_zero = converge(p, 0.0, p.omega_m, ctrl, -1);
    const double tie_margin =
        10.0 * ctrl.eps_trunc * std::max(1.0, std::abs(at_zero.energy));

    double psi_max = opts.psi_max > 0.0
                         ? opts.psi_max
                         : 4.0 * p.omega_coupling / p.omega_m + 1.0;

    // Warm-started evaluation: reuse the converged cutoff of the previous
    // point as the starting guess for the next. Convergence certifies the
    // energy already agreed one step below n_max_used, so hinting that level
    // keeps the cutoff steady instead of ratcheting up by one step per call.
    int hint = -1;
    auto eval = [&](double psi) {
        const GroundEnergy ge = converge(p, psi, p.omega_m, ctrl, hint);
        hint = ge.n_max_used - ctrl.step;
        return ge;
    };

    double best_psi = 0.0;
    double best_energy = at_zero.energy;
    int best_index = 0;
    std::vector<double> grid;

    for (int doublings = 0;; ++doublings) {
        const int m = opts.coarse_points;
        grid.assign(static_cast<std::size_t>(m), 0.0);
        for (int i = 0; i < m; ++i)
            grid[static_cast<std::size_t>(i)] = psi_max * i / (m - 1);

        hint = at_zero.n_max_used;
        best_psi = 0.0;
        best_energy = at_zero.energy;
        best_index = 0;
        for (int i = 1; i < m; ++i) {
            const double e = eval(grid[static_cast<std::size_t>(i)]).energy;
            if (e < best_energy) {
                best_energy = e;
                best_psi = grid[static_cast<std::size_t>(i)];
                best_index = i;
            }
        }

        const bool at_edge = best_index == opts.coarse_points - 1;
        const bool genuine = best_energy < at_zero.energy - tie_margin;
        if (!(at_edge && genuine)) break;
        if (doublings >= opts.max_doublings)
            throw RunawayError(
                "order parameter keeps escaping through psi_max = " +
                std::to_string(psi_max));
        psi_max *= 2.0;
    }

    // Golden-section refinement of the bracketing interval.
    const double inv_gold = 0.6180339887498948482;
    double a = grid[static_cast<std::size_t>(std::max(best_index - 1, 0))];
    double b = grid[static_cast<std::size_t>(
        std::min(best_index + 1, opts.coarse_points - 1))];
    if (b > a + opts.psi_tol) {
        double x1 = b - inv_gold * (b - a);
        double x2 = a + inv_gold * (b - a);
        double f1 = eval(x1).energy;
        double f2 = eval(x2).energy;
        auto note = [&](double psi, double e) {
            if (e < best_energy) {
                best_energy = e;
                best_psi = psi;
            }
        };
        note(x1, f1);
        note(x2, f2);
        while (b - a > opts.psi_tol) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_gold * (b - a);
                f1 = eval(x1).energy;
                note(x1, f1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_gold * (b - a);
                f2 = eval(x2).energy;
                note(x2, f2);
            }
        }
    }

    MeanFieldSolution sol;
    if (best_energy >= at_zero.energy - tie_margin) {
        sol.psi_star = 0.0;
        sol.ground_energy = at_zero.energy;
        sol.n_max_used = at_zero.n_max_used;
    } else {
        const GroundEnergy fin = converge(p, best_psi, p.omega_m, ctrl, hint);
        sol.psi_star = best_psi;
        sol.ground_energy = fin.energy;
        sol.n_max_used = fin.n_max_used;
    }

    ModelParams q = p;
    q.n_max = sol.n_max_used;
    const EigenPair pair =
        ground_eigenpair(build_mean_field_hamiltonian(q, sol.psi_star));
    const VectorObservables obs = observables_from_vector(pair.vector);
    sol.sigma_z = obs.sigma_z;
    sol.population = std::clamp(0.5 * (obs.sigma_z + 1.0), 0.0, 1.0);
    sol.photon_number = obs.photons;
    sol.converged = true;
    return sol;
}

} // namespace flatband
