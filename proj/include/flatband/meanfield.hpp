#pragma once

#include "flatband/model.hpp"
#include "flatband/spectra.hpp"

namespace flatband {

/// Controls for the adaptive Fock-space truncation. Convergence means two
/// cutoffs `step` apart give ground energies within eps_trunc; otherwise the
/// cutoff grows geometrically until ceiling, where ConvergenceError is
/// thrown with the last energy difference as residual.
struct TruncationControl {
    int step = 5;
    int ceiling = 400;
    double eps_trunc = 1e-9;
};

/// Single-site mean-field Hamiltonian at condensate amplitude psi in the
/// basis |n, s> with index i = 2 n + s, s = 0 the lower band. Dimension is
/// 2 (n_max + 1) and the matrix is banded with half-bandwidth 3:
///   diagonal        mode_freq psi^2 + (2s - 1) omega12 / 2 + omega_bar n
///   spin flip       2 Omega psi
///   boson raise     psi mode_freq sqrt(n+1)        (same band)
///   raise + flip    Omega sqrt(n+1)
/// The standard builder condenses the lowest mode, mode_freq = omega_m.
SymmetricMatrix build_mean_field_hamiltonian(const ModelParams& p, double psi);

/// Same matrix with the condensing mode at an arbitrary frequency; used to
/// check that condensing any mode above the minimum costs energy.
SymmetricMatrix build_mean_field_hamiltonian_at_mode(const ModelParams& p,
                                                     double psi,
                                                     double mode_freq);

struct GroundEnergy {
    double energy = 0.0;
    int n_max_used = 0;
};

/// Ground energy at fixed cutoff, no convergence control.
double ground_energy_at(const ModelParams& p, double psi, int n_max);

/// Adaptive ground energy. The cutoff starts at max(p.n_max, n_start_hint)
/// and grows per TruncationControl. The hint lets scans warm-start from a
/// neighboring point without changing the converged value.
GroundEnergy ground_energy_info(const ModelParams& p, double psi,
                                const TruncationControl& ctrl = {},
                                int n_start_hint = -1);

/// Convenience wrapper returning just the adaptive energy.
double ground_energy(const ModelParams& p, double psi);

struct Observables {
    double sigma_z = -1.0;
    double population = 0.0;
    double photon_number = 0.0;
};

/// Ground-state observables at fixed psi, evaluated at the adaptively
/// converged cutoff. population is clamped to [0, 1].
Observables observables_at(const ModelParams& p, double psi);

/// Controls for the minimization over the condensate amplitude.
struct MinimizeOptions {
    int coarse_points = 64;     ///< grid size of the bracketing scan
    double psi_tol = 1e-6;      ///< golden-section interval tolerance
    double psi_max = -1.0;      ///< search bound; < 0 means 4 Omega / omega_m + 1
    int max_doublings = 6;      ///< psi_max growth budget before RunawayError
    TruncationControl trunc{};
};

/// Minimize E0(psi) over psi >= 0: coarse grid, golden-section refinement,
/// then a tie-break that returns psi = 0 unless the candidate undercuts
/// E0(0) by more than 10 eps_trunc * max(1, |E0(0)|). The tie-break keeps
/// the exactly flat landscape of the dispersionless limit from turning
/// truncation noise into a spurious condensate.
MeanFieldSolution minimize_over_psi(const ModelParams& p,
                                    const MinimizeOptions& opts = {});

} // namespace flatband
