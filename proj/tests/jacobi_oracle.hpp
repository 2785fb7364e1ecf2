#pragma once

// Cyclic Jacobi eigensolver used as an independent cross-check of the
// production eigensolver backend. Textbook rotations, no shortcuts, no
// shared code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace jacobi_oracle {

using Mat = std::vector<std::vector<double>>;

inline double off_diagonal_norm(const Mat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (i != j) s += a[i][j] * a[i][j];
    return std::sqrt(s);
}

/// All eigenvalues of a symmetric matrix in ascending order.
inline std::vector<double> eigenvalues(Mat a) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-14 * scale * static_cast<double>(n))
            break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) <= 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a[i][i];
    std::sort(values.begin(), values.end());
    return values;
}

} // namespace jacobi_oracle
