#pragma once

#include <Eigen/Dense>
#include <array>
#include <random>

#include "su2lat/common.hpp"

namespace su2lat {

/// A rotation group element in z-y-z Euler angles (active convention).
///
/// The global sign convention used everywhere in this project: a rotation by
/// alpha about z acts on the compact register as amps[m] <- exp(-i m alpha) *
/// amps[m], and on functions as (U(R) f)(r) = f(R^-1 r).
struct RotationSpec {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    static RotationSpec identity() { return {}; }
    static RotationSpec euler(double alpha, double beta, double gamma);
    /// Axis-angle form; axis must be normalized to 1 within 1e-12.
    static RotationSpec axis_angle(const std::array<double, 3> &axis, double angle);
    static RotationSpec from_matrix(const Eigen::Matrix3d &r);

    /// Active 3x3 matrix Rz(alpha) * Ry(beta) * Rz(gamma).
    Eigen::Matrix3d matrix() const;
};

/// Exact (2l+1)-dimensional representation matrix of a rotation; the
/// verification oracle every approximate stage is compared against.
/// Stored with doubled ell so half-integer spins fit in the same type.
/// Row/column index i corresponds to m = (2i - two_ell)/2, ascending in m.
struct WignerMatrix {
    int two_ell = 0;
    Eigen::MatrixXcd entries;

    int dim() const { return two_ell + 1; }
};

/// Length-(2l+1) complex amplitude vector over m = -l..+l (index i <-> m = i - l).
struct CompactState {
    int ell = 0;
    Eigen::VectorXcd amps;

    /// Checks unit norm within 1e-12 and dimension 2l+1.
    static CompactState from_amps(int ell, Eigen::VectorXcd amps);
    static CompactState basis(int ell, int m);
    /// Random unit vector (complex Gaussian entries, normalized).
    static CompactState random(int ell, std::mt19937_64 &rng);

    cplx amp(int m) const { return amps(m + ell); }
};

/// Normalized associated Legendre function: the polar factor of Y_lm, so that
/// ylm(l,m,theta,phi) = assoc_legendre_norm(l,m,cos theta) * exp(i m phi) is
/// normalized over the sphere. Condon-Shortley phase included. Negative m is
/// handled through P(l,-m) = (-1)^m P(l,m). Stable to l = 64 (normalized
/// upward recurrence, no raw factorials).
double assoc_legendre_norm(int ell, int m, double x);

/// Spherical harmonic Y_lm(theta, phi).
cplx ylm(int ell, int m, double theta, double phi);

/// D(alpha,beta,gamma) = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz),
/// built from ladder-operator matrix elements and exponentiated by
/// eigendecomposition. two_ell is the doubled angular momentum (so 2j).
WignerMatrix wigner_oracle_2j(int two_ell, const RotationSpec &rot);

/// Integer-ell convenience wrapper around wigner_oracle_2j.
WignerMatrix wigner_oracle(int ell, const RotationSpec &rot);

/// Applies the exact oracle matrix to a compact state.
CompactState exact_rotate(const CompactState &state, const RotationSpec &rot);

/// The 2x2 SU(2) element of a rotation in the qubit basis (|0> = m=+1/2,
/// |1> = m=-1/2), consistent with the oracle's conventions.
Eigen::Matrix2cd su2_element(const RotationSpec &rot);

/// Haar-distributed random rotation (alpha, gamma uniform, cos(beta) uniform).
RotationSpec random_rotation(std::mt19937_64 &rng);

} // namespace su2lat
