#include "flatband/spectra.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "flatband/errors.hpp"

namespace flatband {

namespace {

void check_finite(const SymmetricMatrix& h) {
    for (double v : h.packed()) {
        if (!std::isfinite(v))
            throw InvalidMatrixError("matrix contains non-finite entries");
    }
}

Eigen::MatrixXd to_dense(const SymmetricMatrix& h) {
    const int d = h.dimension();
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j)
            m(i, j) = m(j, i) = h(i, j);
    return m;
}

/// Make the first component larger than 1e-12 * max|v_i| positive.
void fix_sign(std::vector<double>& v) {
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    const double thresh = 1e-12 * vmax;
    for (double x : v) {
        if (std::abs(x) > thresh) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

} // namespace

SymmetricMatrix::SymmetricMatrix(int dimension) : dim_(dimension) {
    if (dimension < 1)
        throw InvalidParameterError("matrix dimension must be at least 1");
    lower_.assign(static_cast<std::size_t>(dimension) * (dimension + 1) / 2,
                  0.0);
}

double SymmetricMatrix::trace() const noexcept {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double SymmetricMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : lower_) m = std::max(m, std::abs(v));
    return m;
}

EigenPair ground_eigenpair(const SymmetricMatrix& h) {
    check_finite(h);
    const Eigen::MatrixXd dense = to_dense(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        dense, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eigensolver failed to converge", 0.0);

    EigenPair pair;
    pair.value = solver.eigenvalues()(0);
    Eigen::VectorXd v = solver.eigenvectors().col(0);
    v.normalize();

    const double residual = (dense * v - pair.value * v).norm();
    const double bound = 1e-10 * std::max(1.0, std::abs(pair.value));
    if (residual > bound)
        throw ConvergenceError("eigenpair residual " + std::to_string(residual) +
                                   " exceeds tolerance",
                               residual);

    pair.vector.assign(v.data(), v.data() + v.size());
    fix_sign(pair.vector);
    return pair;
}

std::vector<double> full_spectrum(const SymmetricMatrix& h) {
    check_finite(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        to_dense(h), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eigensolver failed to converge", 0.0);

    std::vector<double> values(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + h.dimension());

    double sum = 0.0;
    for (double v : values) sum += v;
    const double drift = std::abs(sum - h.trace());
    const double bound = 1e-9 * h.dimension() * std::max(1.0, h.max_abs());
    if (drift > bound)
        throw ConvergenceError("eigenvalue sum drifts from trace by " +
                                   std::to_string(drift),
                               drift);
    return values;
}

} // namespace flatband
