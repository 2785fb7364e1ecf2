#pragma once

#include <complex>
#include <vector>

namespace flatband {

/// Parameters of the two-band model after the mean-field reduction.
/// All frequencies are positive and expressed in absolute units; tests and
/// the command line work in units of omega12 by setting omega12 = 1.
struct ModelParams {
    double omega12 = 1.0;        ///< electronic transition frequency
    double omega_m = 1.0;        ///< minimum of the bosonic dispersion
    double delta = 0.0;          ///< dispersion width, omega_bar - omega_m
    double omega_coupling = 0.0; ///< vacuum Rabi coupling
    int n_max = 20;              ///< initial Fock-space cutoff

    double omega_bar() const noexcept { return omega_m + delta; }

    /// Throws InvalidParameterError if any field is out of range.
    void validate() const;
};

/// Bosonic mode frequencies sampled on a uniform Brillouin-zone grid.
/// Construction validates positivity; min, mean and width are cached.
class Dispersion {
public:
    static Dispersion from_samples(std::vector<double> samples);

    const std::vector<double>& samples() const noexcept { return samples_; }
    int n_modes() const noexcept { return static_cast<int>(samples_.size()); }

    double omega_min() const noexcept { return omega_min_; }
    double omega_bar() const noexcept { return omega_min_ + delta_; }

    /// Width of the dispersion, mean minus minimum. Exactly zero for flat
    /// samples (computed from deviations, so no rounding residue).
    double delta() const noexcept { return delta_; }

private:
    explicit Dispersion(std::vector<double> samples);

    std::vector<double> samples_;
    double omega_min_ = 0.0;
    double delta_ = 0.0;
};

/// All modes at frequency omega_m; the dispersionless limit.
Dispersion make_flat_dispersion(double omega_m, int n_modes);

/// omega_j = omega_m + delta * (1 - cos(2 pi j / n_modes)). The sampled mean
/// equals omega_m + delta for n_modes >= 2; a single mode cannot carry a
/// nonzero width, so delta > 0 with n_modes == 1 is rejected.
Dispersion make_cosine_dispersion(double omega_m, double delta, int n_modes);

/// Inverse transform of the mode frequencies,
///   w~_r = N^{-1/2} sum_j omega_j exp(-i theta_j r),  theta_j = 2 pi j / N.
/// w~_0 / sqrt(N) is the mean frequency; the r != 0 components are the
/// inter-site hopping amplitudes up to the same 1/sqrt(N) normalization.
std::vector<std::complex<double>> real_space_couplings(const Dispersion& d);

/// Forward companion of real_space_couplings,
///   h_q = N^{-1/2} sum_r h~_r exp(+i theta_q r).
/// Applying it to real_space_couplings(d) reproduces d.samples().
std::vector<std::complex<double>> fourier_modes(
    const std::vector<std::complex<double>>& real_space);

/// Mean-field solution at fixed parameters: condensate amplitude, energy
/// and single-site observables of the electronic subsystem.
struct MeanFieldSolution {
    double psi_star = 0.0;        ///< minimizing condensate amplitude, >= 0
    double ground_energy = 0.0;   ///< E0(psi_star)
    double sigma_z = -1.0;        ///< <sigma_z> in the ground state
    double population = 0.0;      ///< excited-band population, (<sigma_z>+1)/2
    double photon_number = 0.0;   ///< fluctuation photons <f^dag f>
    bool converged = false;
    int n_max_used = 0;           ///< Fock cutoff of the final evaluation
};

/// ModelParams for the mean-field problem a dispersion induces: the
/// condensing mode sits at omega_min, fluctuations at omega_bar.
ModelParams params_from_dispersion(const Dispersion& d, double omega_coupling,
                                   int n_max = 20);

} // namespace flatband
