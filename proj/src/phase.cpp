#include "flatband/phase.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "flatband/errors.hpp"

namespace flatband {

namespace {

/// Run fn(0..n-1) over a static index partition across `workers` threads.
/// Each index writes only its own slot and fn must not throw, so the
/// outcome is independent of the worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    workers = std::clamp(workers, 1, n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const int lo = static_cast<int>(static_cast<long long>(n) * w / workers);
        const int hi =
            static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

ModelParams params_at(const CriticalCouplingOptions& opts, double delta,
                      double omega) {
    ModelParams p;
    p.omega12 = opts.omega12;
    p.omega_m = opts.omega_m;
    p.delta = delta;
    p.omega_coupling = omega;
    p.validate();
    return p;
}

} // namespace

const char* to_string(TransitionStatus s) noexcept {
    switch (s) {
        case TransitionStatus::ok: return "ok";
        case TransitionStatus::no_transition_in_range:
            return "no-transition-in-range";
        case TransitionStatus::error: return "error";
    }
    return "error";
}

double curvature_at_zero(const ModelParams& p, const CurvatureOptions& opts) {
    p.validate();
    if (!(opts.step > 0.0) || !std::isfinite(opts.step))
        throw InvalidParameterError("finite-difference step must be positive");

    std::string mismatch;
    double h = opts.step;
    for (int attempt = 0; attempt < 3; ++attempt, h *= 0.25) {
        // Resolve the cutoff at the displaced point, then freeze it: the
        // three energies share one truncation error, which drops out of
        // the differences.
        const GroundEnergy probe = ground_energy_info(p, h, opts.trunc);
        const int n = probe.n_max_used;
        const double e0 = ground_energy_at(p, 0.0, n);
        const double eh = probe.energy;
        const double eh2 = ground_energy_at(p, 0.5 * h, n);

        const double c_h = 2.0 * (eh - e0) / (h * h);
        const double c_h2 = 2.0 * (eh2 - e0) / (0.25 * h * h);
        const double scale =
            std::max({std::abs(c_h), std::abs(c_h2), 2.0 * p.omega_m});
        if (std::abs(c_h - c_h2) <= opts.richardson_tol * scale) return c_h;
        mismatch = "curvature estimates at h and h/2 disagree: " +
                   std::to_string(c_h) + " vs " + std::to_string(c_h2) +
                   " at h = " + std::to_string(h);
    }
    throw StepSizeError(mismatch);
}

CriticalCoupling critical_coupling(double delta, double tol,
                                   const CriticalCouplingOptions& opts) {
    if (!std::isfinite(delta) || delta <= 0.0)
        throw InvalidParameterError(
            "critical_coupling needs delta > 0; the dispersionless limit has "
            "no transition");
    if (!(tol > 0.0))
        throw InvalidParameterError("tol must be positive");
    if (!(opts.search_ceiling > 0.0))
        throw InvalidParameterError("search ceiling must be positive");

    const auto curvature = [&](double omega) {
        return curvature_at_zero(params_at(opts, delta, omega), opts.curvature);
    };

    // Expand from the Dicke seed until the curvature turns negative.
    double lo = 0.0;
    double hi = std::min(dicke_limit_critical(opts.omega_m, opts.omega12),
                         opts.search_ceiling);
    double c_hi = curvature(hi);
    while (c_hi > 0.0) {
        if (hi >= opts.search_ceiling)
            return {TransitionStatus::no_transition_in_range,
                    std::numeric_limits<double>::quiet_NaN(), tol};
        lo = hi;
        hi = std::min(2.0 * hi, opts.search_ceiling);
        c_hi = curvature(hi);
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (curvature(mid) > 0.0 ? lo : hi) = mid;
    }
    const double omega_c = 0.5 * (lo + hi);

    // Cross-check against the order parameter on both sides.
    MinimizeOptions mopts = opts.minimize;
    mopts.trunc = opts.curvature.trunc;
    const double above = omega_c + 5.0 * tol;
    const double below = std::max(omega_c - 5.0 * tol, 0.0);
    const double psi_above =
        minimize_over_psi(params_at(opts, delta, above), mopts).psi_star;
    const double psi_below =
        minimize_over_psi(params_at(opts, delta, below), mopts).psi_star;
    if (psi_above <= 1e-3 || psi_below >= 1e-6)
        throw MethodInconsistencyError(
            "curvature boundary at " + std::to_string(omega_c) +
            " disagrees with order parameter: psi(+5 tol) = " +
            std::to_string(psi_above) + ", psi(-5 tol) = " +
            std::to_string(psi_below));

    return {TransitionStatus::ok, omega_c, tol};
}

PhaseBoundary phase_boundary_scan(std::vector<double> deltas, double tol,
                                  const CriticalCouplingOptions& opts,
                                  int workers) {
    if (deltas.empty())
        throw InvalidParameterError("boundary scan needs at least one delta");
    if (workers < 1)
        throw InvalidParameterError("workers must be at least 1");
    std::sort(deltas.begin(), deltas.end());

    PhaseBoundary boundary;
    boundary.entries.resize(deltas.size());
    parallel_for(static_cast<int>(deltas.size()), workers, [&](int i) {
        BoundaryEntry& entry = boundary.entries[static_cast<std::size_t>(i)];
        entry.delta = deltas[static_cast<std::size_t>(i)];
        entry.tolerance = tol;
        try {
            const CriticalCoupling cc = critical_coupling(entry.delta, tol, opts);
            entry.status = cc.status;
            entry.omega_c = cc.omega_c;
        } catch (const std::exception& e) {
            entry.status = TransitionStatus::error;
            entry.omega_c = std::numeric_limits<double>::quiet_NaN();
            entry.message = e.what();
        }
    });
    return boundary;
}

std::vector<double> AxisSpec::values() const {
    if (count < 2)
        throw InvalidParameterError("axis needs at least 2 points");
    if (!std::isfinite(min) || !std::isfinite(max) || min > max)
        throw InvalidParameterError("axis range is invalid");
    if (log_spaced && min <= 0.0)
        throw InvalidParameterError("log axis needs positive endpoints");

    std::vector<double> v(static_cast<std::size_t>(count));
    if (log_spaced) {
        const double lmin = std::log(min), lmax = std::log(max);
        for (int i = 0; i < count; ++i)
            v[static_cast<std::size_t>(i)] =
                std::exp(lmin + (lmax - lmin) * i / (count - 1));
        v.front() = min;
        v.back() = max;
    } else {
        for (int i = 0; i < count; ++i)
            v[static_cast<std::size_t>(i)] = min + (max - min) * i / (count - 1);
    }
    return v;
}

SweepGrid population_map(const AxisSpec& omega_axis, const AxisSpec& delta_axis,
                         double omega_m, double omega12, int workers) {
    const std::vector<double> omegas = omega_axis.values();
    const std::vector<double> deltas = delta_axis.values();
    for (double w : omegas)
        if (w < 0.0)
            throw InvalidParameterError("coupling axis must be nonnegative");
    for (double d : deltas)
        if (d < 0.0)
            throw InvalidParameterError("delta axis must be nonnegative");
    if (workers < 1)
        throw InvalidParameterError("workers must be at least 1");

    SweepGrid grid;
    grid.omega_axis = omega_axis;
    grid.delta_axis = delta_axis;
    grid.cells.resize(omegas.size() * deltas.size());

    const int total = static_cast<int>(grid.cells.size());
    parallel_for(total, workers, [&](int idx) {
        const int oi = idx % static_cast<int>(omegas.size());
        const int di = idx / static_cast<int>(omegas.size());
        SweepCell& cell = grid.cells[static_cast<std::size_t>(idx)];
        try {
            ModelParams p;
            p.omega12 = omega12;
            p.omega_m = omega_m;
            p.delta = deltas[static_cast<std::size_t>(di)];
            p.omega_coupling = omegas[static_cast<std::size_t>(oi)];
            p.validate();
            const MeanFieldSolution sol = minimize_over_psi(p);
            cell.ok = true;
            cell.population = sol.population;
            cell.psi_star = sol.psi_star;
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.population = std::numeric_limits<double>::quiet_NaN();
            cell.psi_star = std::numeric_limits<double>::quiet_NaN();
            cell.message = e.what();
        }
    });
    return grid;
}

double dicke_limit_critical(double omega_m, double omega12) {
    if (!std::isfinite(omega_m) || omega_m <= 0.0)
        throw InvalidParameterError("omega_m must be positive");
    if (!std::isfinite(omega12) || omega12 <= 0.0)
        throw InvalidParameterError("omega12 must be positive");
    return 0.5 * std::sqrt(omega_m * omega12);
}

} // namespace flatband
