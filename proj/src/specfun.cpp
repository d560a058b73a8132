#include "su2lat/specfun.hpp"

#include <cmath>

namespace su2lat {

RotationSpec RotationSpec::euler(double alpha, double beta, double gamma) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
        throw ValidationError("RotationSpec: Euler angles must be finite");
    return {alpha, beta, gamma};
}

RotationSpec RotationSpec::axis_angle(const std::array<double, 3> &axis, double angle) {
    if (!std::isfinite(angle))
        throw ValidationError("RotationSpec: angle must be finite");
    double n2 = axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2];
    if (!std::isfinite(n2) || std::abs(std::sqrt(n2) - 1.0) > 1e-12)
        throw ValidationError("RotationSpec: axis must be a unit vector within 1e-12");
    Eigen::Vector3d u(axis[0], axis[1], axis[2]);
    u.normalize();
    Eigen::Matrix3d r = Eigen::AngleAxisd(angle, u).toRotationMatrix();
    return from_matrix(r);
}

Eigen::Matrix3d RotationSpec::matrix() const {
    Eigen::Matrix3d rz_a = Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    Eigen::Matrix3d ry_b = Eigen::AngleAxisd(beta, Eigen::Vector3d::UnitY()).toRotationMatrix();
    Eigen::Matrix3d rz_g = Eigen::AngleAxisd(gamma, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    return rz_a * ry_b * rz_g;
}

RotationSpec RotationSpec::from_matrix(const Eigen::Matrix3d &r) {
    // z-y-z extraction: R(2,2) = cos(beta); at gimbal lock we set gamma = 0.
    double cb = std::clamp(r(2, 2), -1.0, 1.0);
    double beta = std::acos(cb);
    double sb = std::sin(beta);
    double alpha, gamma;
    if (sb > 1e-12) {
        alpha = std::atan2(r(1, 2), r(0, 2));
        gamma = std::atan2(r(2, 1), -r(2, 0));
    } else if (cb > 0.0) { // beta ~ 0: R = Rz(alpha + gamma)
        alpha = std::atan2(r(1, 0), r(0, 0));
        gamma = 0.0;
    } else { // beta ~ pi: R = Rz(alpha) Ry(pi) Rz(gamma), fold into alpha
        alpha = std::atan2(-r(1, 0), -r(0, 0));
        gamma = 0.0;
    }
    return {alpha, beta, gamma};
}

CompactState CompactState::from_amps(int ell, Eigen::VectorXcd amps) {
    if (ell < 0)
        throw ValidationError("CompactState: ell must be nonnegative");
    if (amps.size() != 2 * ell + 1)
        throw ValidationError("CompactState: amplitude vector must have length 2*ell+1");
    if (std::abs(amps.norm() - 1.0) > 1e-12)
        throw ValidationError("CompactState: amplitudes must have unit norm within 1e-12");
    return {ell, std::move(amps)};
}

CompactState CompactState::basis(int ell, int m) {
    if (std::abs(m) > ell)
        throw ValidationError("CompactState::basis: |m| must not exceed ell");
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(2 * ell + 1);
    a(m + ell) = 1.0;
    return {ell, std::move(a)};
}

CompactState CompactState::random(int ell, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd a(2 * ell + 1);
    for (int i = 0; i < a.size(); ++i)
        a(i) = cplx(g(rng), g(rng));
    a /= a.norm();
    return {ell, std::move(a)};
}

double assoc_legendre_norm(int ell, int m, double x) {
    if (ell < 0 || std::abs(m) > ell)
        throw ValidationError("assoc_legendre_norm: need 0 <= |m| <= ell");
    if (!(std::abs(x) <= 1.0))
        throw ValidationError("assoc_legendre_norm: need |x| <= 1");

    const int am = std::abs(m);
    // Seed P(am, am): sqrt((2m+1)/(4 pi) * prod_i (1-x^2)(2i-1)/(2i)),
    // Condon-Shortley sign (-1)^m.
    double pmm = 1.0;
    if (am > 0) {
        double omx2 = (1.0 - x) * (1.0 + x);
        double fact = 1.0;
        for (int i = 1; i <= am; ++i) {
            pmm *= omx2 * fact / (fact + 1.0);
            fact += 2.0;
        }
    }
    pmm = std::sqrt((2.0 * am + 1.0) * pmm / (4.0 * kPi));
    if (am & 1)
        pmm = -pmm;

    double result;
    if (ell == am) {
        result = pmm;
    } else {
        double pmmp1 = x * std::sqrt(2.0 * am + 3.0) * pmm;
        if (ell == am + 1) {
            result = pmmp1;
        } else {
            double oldfact = std::sqrt(2.0 * am + 3.0);
            double pll = 0.0;
            for (int ll = am + 2; ll <= ell; ++ll) {
                double fact = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(am) * am));
                pll = (x * pmmp1 - pmm / oldfact) * fact;
                oldfact = fact;
                pmm = pmmp1;
                pmmp1 = pll;
            }
            result = pll;
        }
    }
    if (m < 0 && (am & 1))
        result = -result; // P(l,-m) = (-1)^m P(l,m) for the normalized form
    return result;
}

cplx ylm(int ell, int m, double theta, double phi) {
    double p = assoc_legendre_norm(ell, m, std::cos(theta));
    return p * std::exp(cplx(0.0, m * phi));
}

WignerMatrix wigner_oracle_2j(int two_ell, const RotationSpec &rot) {
    if (two_ell < 0 || two_ell > 128)
        throw ValidationError("wigner_oracle: need 0 <= 2*ell <= 128");
    const int dim = two_ell + 1;
    const double j = 0.5 * two_ell;

    Eigen::MatrixXcd d_beta;
    if (rot.beta == 0.0) {
        d_beta = Eigen::MatrixXcd::Identity(dim, dim);
    } else {
        // Jy from ladder elements <m+1|J+|m> = sqrt(j(j+1) - m(m+1)).
        Eigen::MatrixXcd jy = Eigen::MatrixXcd::Zero(dim, dim);
        for (int i = 0; i + 1 < dim; ++i) {
            double mval = i - j;
            double c = std::sqrt(j * (j + 1.0) - mval * (mval + 1.0));
            jy(i + 1, i) = cplx(0.0, -0.5) * c; // (J+ - J-)/(2i)
            jy(i, i + 1) = cplx(0.0, 0.5) * c;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jy);
        Eigen::VectorXcd phases(dim);
        for (int i = 0; i < dim; ++i)
            phases(i) = std::exp(cplx(0.0, -rot.beta * es.eigenvalues()(i)));
        d_beta = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    }

    Eigen::VectorXcd za(dim), zg(dim);
    for (int i = 0; i < dim; ++i) {
        double mval = i - j;
        za(i) = std::exp(cplx(0.0, -rot.alpha * mval));
        zg(i) = std::exp(cplx(0.0, -rot.gamma * mval));
    }
    WignerMatrix w;
    w.two_ell = two_ell;
    w.entries = za.asDiagonal() * d_beta * zg.asDiagonal();
    return w;
}

WignerMatrix wigner_oracle(int ell, const RotationSpec &rot) {
    if (ell < 0 || ell > 64)
        throw ValidationError("wigner_oracle: need 0 <= ell <= 64");
    return wigner_oracle_2j(2 * ell, rot);
}

CompactState exact_rotate(const CompactState &state, const RotationSpec &rot) {
    WignerMatrix d = wigner_oracle(state.ell, rot);
    CompactState out;
    out.ell = state.ell;
    out.amps = d.entries * state.amps;
    return out;
}

Eigen::Matrix2cd su2_element(const RotationSpec &rot) {
    WignerMatrix d = wigner_oracle_2j(1, rot);
    Eigen::Matrix2cd u;
    // Oracle rows are m = -1/2, +1/2; qubit basis has |0> = m = +1/2.
    u(0, 0) = d.entries(1, 1);
    u(0, 1) = d.entries(1, 0);
    u(1, 0) = d.entries(0, 1);
    u(1, 1) = d.entries(0, 0);
    return u;
}

RotationSpec random_rotation(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double alpha = 2.0 * kPi * u01(rng);
    double beta = std::acos(std::clamp(2.0 * u01(rng) - 1.0, -1.0, 1.0));
    double gamma = 2.0 * kPi * u01(rng);
    return {alpha, beta, gamma};
}

} // namespace su2lat
