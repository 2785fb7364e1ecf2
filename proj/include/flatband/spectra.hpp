#pragma once

#include <cstddef>
#include <vector>

namespace flatband {

/// Dense real symmetric matrix, lower triangle stored row-major packed.
/// Indices are unchecked in release builds; the builders in this library
/// only ever touch valid slots.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(int dimension);

    int dimension() const noexcept { return dim_; }

    double operator()(int i, int j) const noexcept { return lower_[pack(i, j)]; }
    void set(int i, int j, double v) noexcept { lower_[pack(i, j)] = v; }
    void add(int i, int j, double v) noexcept { lower_[pack(i, j)] += v; }

    double trace() const noexcept;
    double max_abs() const noexcept;

    /// Packed lower triangle, length d(d+1)/2.
    const std::vector<double>& packed() const noexcept { return lower_; }

private:
    std::size_t pack(int i, int j) const noexcept {
        if (i < j) { const int t = i; i = j; j = t; }
        return static_cast<std::size_t>(i) * (i + 1) / 2 +
               static_cast<std::size_t>(j);
    }

    int dim_;
    std::vector<double> lower_;
};

/// Eigenvalue with its unit-norm eigenvector. The sign is fixed so the
/// first component exceeding 1e-12 * max|v_i| is positive, which makes
/// repeated solves bit-for-bit reproducible.
struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
};

/// Lowest eigenpair. Throws InvalidMatrixError on non-finite entries and
/// ConvergenceError (carrying the residual) if the backend fails or the
/// result violates ||H v - lambda v|| <= 1e-10 * max(1, |lambda|).
EigenPair ground_eigenpair(const SymmetricMatrix& h);

/// All eigenvalues in ascending order. Throws like ground_eigenpair; the
/// eigenvalue sum is checked against the trace to 1e-9 * d * max|H_ij|.
std::vector<double> full_spectrum(const SymmetricMatrix& h);

} // namespace flatband
