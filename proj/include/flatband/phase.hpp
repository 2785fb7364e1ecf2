#pragma once

#include <string>
#include <vector>

#include "flatband/meanfield.hpp"
#include "flatband/model.hpp"

namespace flatband {

/// Controls for the curvature estimate at psi = 0.
struct CurvatureOptions {
    double step = 1e-3;           ///< finite-difference step h
    double richardson_tol = 1e-4; ///< allowed relative spread between h and h/2
    TruncationControl trunc{};
};

/// d^2 E0 / d psi^2 at psi = 0 through the symmetric finite difference
/// 2 (E0(h) - E0(0)) / h^2. The cutoff is resolved adaptively once at psi = h
/// and then shared by all three evaluations, so truncation noise cancels in
/// the differences. A half-step estimate must agree to richardson_tol
/// relative to max(|c|, 2 omega_m); the 2 omega_m floor keeps the check
/// meaningful where the curvature itself crosses zero. When the two
/// estimates disagree (the landscape is no longer quadratic on the h scale,
/// which happens deep in the condensed phase of nearly flat bands) the probe
/// retries at h/4 and h/16 before giving up with StepSizeError.
double curvature_at_zero(const ModelParams& p, const CurvatureOptions& opts = {});

enum class TransitionStatus {
    ok,
    no_transition_in_range,
    error,
};

const char* to_string(TransitionStatus s) noexcept;

struct CriticalCoupling {
    TransitionStatus status = TransitionStatus::error;
    double omega_c = 0.0; ///< meaningful only when status == ok
    double tolerance = 0.0;
};

struct CriticalCouplingOptions {
    double omega12 = 1.0;
    double omega_m = 1.0;
    double search_ceiling = 10.0; ///< highest coupling probed, units of omega12
    CurvatureOptions curvature{};
    MinimizeOptions minimize{};
};

/// Locate the coupling where the curvature at psi = 0 changes sign, by an
/// expanding bracket seeded at the Dicke value followed by bisection down
/// to tol. The result is cross-validated against the order parameter:
/// psi_star just above the boundary must exceed 1e-3 and just below must
/// stay under 1e-6, else MethodInconsistencyError. If the curvature never
/// turns negative below search_ceiling the status is no_transition_in_range.
CriticalCoupling critical_coupling(double delta, double tol,
                                   const CriticalCouplingOptions& opts = {});

struct BoundaryEntry {
    double delta = 0.0;
    TransitionStatus status = TransitionStatus::error;
    double omega_c = 0.0;
    double tolerance = 0.0;
    std::string message; ///< diagnostic for error entries
};

struct PhaseBoundary {
    std::vector<BoundaryEntry> entries; ///< sorted by delta, ascending
};

/// critical_coupling over a list of widths. Entries are sorted by delta
/// before evaluation; failures are captured per entry and never abort the
/// scan. Work is split across `workers` threads into static, pre-indexed
/// slots, so the result is identical for any worker count.
PhaseBoundary phase_boundary_scan(std::vector<double> deltas, double tol,
                                  const CriticalCouplingOptions& opts = {},
                                  int workers = 1);

/// Uniform or logarithmic axis of grid values.
struct AxisSpec {
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    bool log_spaced = false;

    std::vector<double> values() const; ///< validates and materializes
};

struct SweepCell {
    bool ok = false;
    double population = 0.0;
    double psi_star = 0.0;
    std::string message;
};

/// Excited-band population over a coupling/width grid. Cells are stored
/// delta-major: cell(di, oi) = cells[di * omega_axis.count + oi].
struct SweepGrid {
    AxisSpec omega_axis;
    AxisSpec delta_axis;
    std::vector<SweepCell> cells;
};

SweepGrid population_map(const AxisSpec& omega_axis, const AxisSpec& delta_axis,
                         double omega_m = 1.0, double omega12 = 1.0,
                         int workers = 1);

/// Closed-form critical coupling of the single-mode normal limit,
/// sqrt(omega_m omega12) / 2.
double dicke_limit_critical(double omega_m, double omega12);

} // namespace flatband
