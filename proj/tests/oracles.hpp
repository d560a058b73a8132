#pragma once

// Independent brute-force references used only by tests. These deliberately
// avoid the recurrences and eigensolver paths of the library under test.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "su2lat/common.hpp"

namespace su2lat::testing {

/// Coefficients of the Legendre polynomial P_ell via the three-term
/// recurrence on raw polynomial coefficients (fine for small ell).
inline std::vector<double> legendre_coeffs(int ell) {
    std::vector<double> pm1{1.0}; // P_0
    if (ell == 0)
        return pm1;
    std::vector<double> p{0.0, 1.0}; // P_1
    for (int n = 1; n < ell; ++n) {
        std::vector<double> next(n + 2, 0.0);
        for (size_t k = 0; k < p.size(); ++k)
            next[k + 1] += (2.0 * n + 1.0) * p[k] / (n + 1.0);
        for (size_t k = 0; k < pm1.size(); ++k)
            next[k] -= double(n) * pm1[k] / (n + 1.0);
        pm1 = std::move(p);
        p = std::move(next);
    }
    return p;
}

/// Rodrigues-formula associated Legendre with Condon-Shortley phase and the
/// spherical-harmonic normalization sqrt((2l+1)/(4pi) (l-m)!/(l+m)!), for
/// m >= 0. The m-th derivative is taken on explicit polynomial coefficients.
inline double legendre_norm_bruteforce(int ell, int m, double x) {
    std::vector<double> c = legendre_coeffs(ell);
    for (int d = 0; d < m; ++d) {
        std::vector<double> dc(c.size() > 1 ? c.size() - 1 : 1, 0.0);
        for (size_t k = 1; k < c.size(); ++k)
            dc[k - 1] = double(k) * c[k];
        c = std::move(dc);
    }
    double poly = 0.0;
    for (size_t k = c.size(); k-- > 0;)
        poly = poly * x + c[k];
    double plm = std::pow(1.0 - x * x, 0.5 * m) * poly;
    if (m & 1)
        plm = -plm;
    double ratio = 1.0; // (l-m)!/(l+m)!
    for (int k = ell - m + 1; k <= ell + m; ++k)
        ratio /= double(k);
    return std::sqrt((2.0 * ell + 1.0) / (4.0 * kPi) * ratio) * plm;
}

inline cplx ylm_bruteforce(int ell, int m, double theta, double phi) {
    if (m >= 0)
        return legendre_norm_bruteforce(ell, m, std::cos(theta)) * std::exp(cplx(0.0, m * phi));
    // Y(l,-|m|) = (-1)^|m| conj(Y(l,|m|))
    cplx pos = ylm_bruteforce(ell, -m, theta, phi);
    cplx val = std::conj(pos);
    return ((-m) & 1) ? -val : val;
}

/// Dense matrix exponential by scaling and squaring with a plain Taylor
/// series; independent of any eigendecomposition.
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd &a) {
    const int scale = 12;
    Eigen::MatrixXcd s = a / std::pow(2.0, scale);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = term * s / double(k);
        sum += term;
    }
    for (int k = 0; k < scale; ++k)
        sum = sum * sum;
    return sum;
}

} // namespace su2lat::testing
