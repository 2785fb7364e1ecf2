#pragma once

#include <string>

#include "flatband/model.hpp"
#include "flatband/spectra.hpp"

namespace flatband {

/// Small lattice for the brute-force check of the mean-field reduction:
/// n_sites two-band sites, one bosonic mode per site after the transform
/// to real space. The Hilbert space is (2 (n_max_site + 1))^n_sites and is
/// capped at 10^4 states.
struct FullModelSpec {
    int n_sites = 2;
    Dispersion dispersion = make_flat_dispersion(1.0, 2); ///< n_modes == n_sites
    int n_max_site = 10;     ///< per-site Fock cutoff
    double omega12 = 1.0;
    double omega_coupling = 0.0;

    long long hilbert_dimension() const noexcept;
    void validate() const; ///< InvalidParameterError / SizeError
};

/// Exact lattice Hamiltonian in real space: on-site bosons at omega_bar,
/// inter-site hopping from the transformed dispersion, and the local
/// two-band coupling Omega sigma^x (a + a^dag) on every site. The global
/// basis index is positional over local indices l_r = 2 n_r + s_r, with
/// site 0 the least significant digit.
SymmetricMatrix build_full_hamiltonian(const FullModelSpec& spec);

struct RabiGround {
    double energy = 0.0;
    double sigma_z = -1.0;
    double photon_number = 0.0;
    int n_max_used = 0;
};

/// Single-site two-band model with one boson mode (the dispersionless
/// limit of the lattice). Fixed cutoff, no convergence control; used for
/// matched-truncation identities.
RabiGround rabi_ground_at(double omega_boson, double omega12,
                          double omega_coupling, int n_max);

/// Same model with a convergence check: the energy at n_max must agree
/// with the energy at n_max - 5 to eps_trunc, else ConvergenceError.
RabiGround rabi_ground(double omega_boson, double omega12,
                       double omega_coupling, int n_max,
                       double eps_trunc = 1e-9);

/// Side-by-side observables of the exact lattice ground state, the
/// single-site model at omega_bar, and the mean-field solution at the same
/// parameters. For a flat dispersion the lattice factorizes, so all three
/// energies per site must agree to 1e-8; the report records that check.
struct ComparisonReport {
    int n_sites = 0;
    double omega_m = 0.0;
    double delta = 0.0;
    double omega_coupling = 0.0;
    int n_max_site = 0;

    double full_energy_per_site = 0.0;
    double full_sigma_z = 0.0;
    double full_photons_per_site = 0.0;

    double rabi_energy = 0.0;
    double rabi_sigma_z = 0.0;
    double rabi_photons = 0.0;

    MeanFieldSolution mean_field;

    bool flat_checked = false; ///< true when delta == 0
    bool flat_pass = false;
    std::string details;
};

ComparisonReport compare_full_vs_meanfield(const FullModelSpec& spec);

/// Fixed-width text table of a report; also the fixture format.
std::string format_report(const ComparisonReport& report);

void write_fixture(const ComparisonReport& report, const std::string& path);

} // namespace flatband
