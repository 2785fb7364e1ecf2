#pragma once

// Dense Kronecker-product construction of the model Hamiltonians, written
// from the operator definitions rather than index arithmetic. Slow and
// obvious on purpose: it exists to cross-check the production builders.

#include <cmath>
#include <cstddef>
#include <vector>

namespace tensor_oracle {

using Mat = std::vector<std::vector<double>>;

inline Mat zeros(std::size_t n) { return Mat(n, std::vector<double>(n, 0.0)); }

inline Mat identity(std::size_t n) {
    Mat m = zeros(n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat add(const Mat& a, const Mat& b) {
    Mat r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r[i][j] += b[i][j];
    return r;
}

inline Mat scale(double f, const Mat& a) {
    Mat r = a;
    for (auto& row : r)
        for (double& v : row) v *= f;
    return r;
}

/// kron(A, B): index i = iA * dim(B) + iB, so B acts on the fast index.
inline Mat kron(const Mat& a, const Mat& b) {
    const std::size_t na = a.size(), nb = b.size();
    Mat r = zeros(na * nb);
    for (std::size_t ia = 0; ia < na; ++ia)
        for (std::size_t ja = 0; ja < na; ++ja)
            for (std::size_t ib = 0; ib < nb; ++ib)
                for (std::size_t jb = 0; jb < nb; ++jb)
                    r[ia * nb + ib][ja * nb + jb] = a[ia][ja] * b[ib][jb];
    return r;
}

inline Mat pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline Mat pauli_z() { return {{-1.0, 0.0}, {0.0, 1.0}}; }

inline Mat boson_number(std::size_t levels) {
    Mat m = zeros(levels);
    for (std::size_t n = 0; n < levels; ++n) m[n][n] = static_cast<double>(n);
    return m;
}

/// a + a^dag on `levels` Fock states.
inline Mat boson_x(std::size_t levels) {
    Mat m = zeros(levels);
    for (std::size_t n = 0; n + 1 < levels; ++n) {
        const double r = std::sqrt(static_cast<double>(n + 1));
        m[n + 1][n] = r;
        m[n][n + 1] = r;
    }
    return m;
}

inline Mat boson_raise(std::size_t levels) {
    Mat m = zeros(levels);
    for (std::size_t n = 0; n + 1 < levels; ++n)
        m[n + 1][n] = std::sqrt(static_cast<double>(n + 1));
    return m;
}

inline Mat boson_lower(std::size_t levels) {
    Mat m = zeros(levels);
    for (std::size_t n = 0; n + 1 < levels; ++n)
        m[n][n + 1] = std::sqrt(static_cast<double>(n + 1));
    return m;
}

/// Single-site mean-field Hamiltonian from operators. The basis index is
/// 2 n + s, i.e. boson slow and band fast, matching kron(boson, spin).
inline Mat mean_field_hamiltonian(double omega12, double omega_m, double delta,
                                  double omega_coupling, double psi,
                                  std::size_t levels) {
    const double omega_bar = omega_m + delta;
    const Mat ib = identity(levels), is = identity(2);
    Mat h = scale(omega_m * psi * psi, kron(ib, is));
    h = add(h, scale(0.5 * omega12, kron(ib, pauli_z())));
    h = add(h, scale(2.0 * omega_coupling * psi, kron(ib, pauli_x())));
    h = add(h, scale(omega_bar, kron(boson_number(levels), is)));
    h = add(h, scale(omega_coupling, kron(boson_x(levels), pauli_x())));
    h = add(h, scale(psi * omega_m, kron(boson_x(levels), is)));
    return h;
}

/// Rabi plus a transverse field: omega_b f^dag f + omega12 sigma_z / 2
/// + Omega sigma_x (f + f^dag) + field sigma_x.
inline Mat rabi_with_field(double omega_b, double omega12,
                           double omega_coupling, double field,
                           std::size_t levels) {
    const Mat ib = identity(levels), is = identity(2);
    Mat h = scale(omega_b, kron(boson_number(levels), is));
    h = add(h, scale(0.5 * omega12, kron(ib, pauli_z())));
    h = add(h, scale(omega_coupling, kron(boson_x(levels), pauli_x())));
    h = add(h, scale(field, kron(ib, pauli_x())));
    return h;
}

/// Two-site lattice with hopping t between the site bosons. Site 0 is the
/// fast index, each site being boson (slow) x band (fast).
inline Mat two_site_lattice(double omega12, double omega_bar, double hopping,
                            double omega_coupling, std::size_t levels) {
    const std::size_t local = 2 * levels;
    const Mat il = identity(local), is = identity(2);
    const Mat h_loc = add(
        add(scale(omega_bar, kron(boson_number(levels), is)),
            scale(0.5 * omega12, kron(identity(levels), pauli_z()))),
        scale(omega_coupling, kron(boson_x(levels), pauli_x())));

    Mat h = add(kron(h_loc, il), kron(il, h_loc));
    const Mat raise = kron(boson_raise(levels), is);
    const Mat lower = kron(boson_lower(levels), is);
    h = add(h, scale(hopping, add(kron(raise, lower), kron(lower, raise))));
    return h;
}

} // namespace tensor_oracle
