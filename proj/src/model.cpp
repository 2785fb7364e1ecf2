#include "flatband/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "flatband/errors.hpp"

namespace flatband {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw InvalidParameterError(std::string(name) + " must be finite");
}

} // namespace

void ModelParams::validate() const {
    require_finite(omega12, "omega12");
    require_finite(omega_m, "omega_m");
    require_finite(delta, "delta");
    require_finite(omega_coupling, "omega_coupling");
    if (omega12 <= 0.0)
        throw InvalidParameterError("omega12 must be positive");
    if (omega_m <= 0.0)
        throw InvalidParameterError("omega_m must be positive");
    if (delta < 0.0)
        throw InvalidParameterError("delta must be nonnegative");
    if (omega_coupling < 0.0)
        throw InvalidParameterError("omega_coupling must be nonnegative");
    if (n_max < 0)
        throw InvalidParameterError("n_max must be nonnegative");
}

Dispersion::Dispersion(std::vector<double> samples)
    : samples_(std::move(samples)) {
    omega_min_ = *std::min_element(samples_.begin(), samples_.end());
    // Mean minus min via nonnegative deviations: exact zero for flat samples.
    double acc = 0.0;
    for (double w : samples_) acc += w - omega_min_;
    delta_ = acc / static_cast<double>(samples_.size());
}

Dispersion Dispersion::from_samples(std::vector<double> samples) {
    if (samples.empty())
        throw InvalidParameterError("dispersion needs at least one mode");
    for (double w : samples) {
        if (!std::isfinite(w) || w <= 0.0)
            throw InvalidParameterError(
                "dispersion samples must be finite and positive");
    }
    return Dispersion(std::move(samples));
}

Dispersion make_flat_dispersion(double omega_m, int n_modes) {
    if (!std::isfinite(omega_m) || omega_m <= 0.0)
        throw InvalidParameterError("omega_m must be positive");
    if (n_modes < 1)
        throw InvalidParameterError("n_modes must be at least 1");
    return Dispersion::from_samples(
        std::vector<double>(static_cast<std::size_t>(n_modes), omega_m));
}

Dispersion make_cosine_dispersion(double omega_m, double delta, int n_modes) {
    if (!std::isfinite(omega_m) || omega_m <= 0.0)
        throw InvalidParameterError("omega_m must be positive");
    if (!std::isfinite(delta) || delta < 0.0)
        throw InvalidParameterError("delta must be nonnegative");
    if (n_modes < 1)
        throw InvalidParameterError("n_modes must be at least 1");
    if (n_modes == 1 && delta > 0.0)
        throw InvalidParameterError(
            "a single mode cannot carry a nonzero dispersion width");

    std::vector<double> s(static_cast<std::size_t>(n_modes));
    // Fill the lower half and mirror so omega_{N-j} == omega_j holds exactly.
    for (int j = 0; j <= n_modes / 2; ++j)
        s[static_cast<std::size_t>(j)] =
            omega_m + delta * (1.0 - std::cos(kTwoPi * j / n_modes));
    for (int j = n_modes / 2 + 1; j < n_modes; ++j)
        s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(n_modes - j)];
    return Dispersion::from_samples(std::move(s));
}

std::vector<std::complex<double>> real_space_couplings(const Dispersion& d) {
    const int n = d.n_modes();
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            // Reduce j*r mod N before forming the angle to keep phases exact.
            const long long k = (static_cast<long long>(j) * r) % n;
            const double theta = kTwoPi * static_cast<double>(k) / n;
            acc += d.samples()[static_cast<std::size_t>(j)] *
                   std::polar(1.0, -theta);
        }
        out[static_cast<std::size_t>(r)] = acc * norm;
    }
    return out;
}

std::vector<std::complex<double>> fourier_modes(
    const std::vector<std::complex<double>>& real_space) {
    if (real_space.empty())
        throw InvalidParameterError("fourier_modes needs at least one entry");
    const int n = static_cast<int>(real_space.size());
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        std::complex<double> acc(0.0, 0.0);
        for (int r = 0; r < n; ++r) {
            const long long k = (static_cast<long long>(q) * r) % n;
            const double theta = kTwoPi * static_cast<double>(k) / n;
            acc += real_space[static_cast<std::size_t>(r)] *
                   std::polar(1.0, theta);
        }
        out[static_cast<std::size_t>(q)] = acc * norm;
    }
    return out;
}

ModelParams params_from_dispersion(const Dispersion& d, double omega_coupling,
                                   int n_max) {
    ModelParams p;
    p.omega12 = 1.0;
    p.omega_m = d.omega_min();
    p.delta = d.delta();
    p.omega_coupling = omega_coupling;
    p.n_max = n_max;
    p.validate();
    return p;
}

} // namespace flatband
