#include "su2lat/phasest.hpp"

#include <cmath>

namespace su2lat {

namespace {

double reduce_angle(double phi) {
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi > kPi)
        phi -= 2.0 * kPi;
    if (phi <= -kPi)
        phi += 2.0 * kPi;
    return phi;
}

/// Applies U^j to state in place, where U is the z-rotation by 2pi/2^t and
/// branch j composes the per-bit rotations 2pi*2^k/2^t over the set bits of j
/// (ascending k for sign=+1; the exact inverse, descending k with negated
/// angles, for sign=-1).
void apply_branch_power(LatticeState &state, int j, int t, const ZRotator &rotator, int sign) {
    const double phi0 = 2.0 * kPi / double(1 << t);
    if (sign > 0) {
        for (int k = 0; k < t; ++k)
            if (j & (1 << k))
                rotator.rotate(state, phi0 * double(1 << k));
    } else {
        for (int k = t - 1; k >= 0; --k)
            if (j & (1 << k))
                rotator.rotate(state, -phi0 * double(1 << k));
    }
}

void validate_t(int ell, int t) {
    if (t < min_t_bits(ell))
        throw ValidationError("phase estimation: t = " + std::to_string(t) +
                              " ancilla bits cannot resolve m in [-" + std::to_string(ell) +
                              ", " + std::to_string(ell) + "]");
    if (t > 12)
        throw ValidationError("phase estimation: t > 12 not supported by the simulator");
}

} // namespace

void ExactZRotator::rotate(LatticeState &state, double phi) const {
    if (!(state.grid == iso_->grid))
        throw ValidationError("ExactZRotator: grid mismatch");
    const int ell = iso_->ell;
    Eigen::VectorXcd c(iso_->support.size());
    for (size_t i = 0; i < iso_->support.size(); ++i)
        c(i) = state.amps[iso_->support[i]];
    Eigen::VectorXcd coeff = iso_->cols.adjoint() * c;
    Eigen::VectorXcd rotated = coeff;
    for (int m = -ell; m <= ell; ++m)
        rotated(m + ell) *= std::exp(cplx(0.0, -m * phi));
    Eigen::VectorXcd delta = iso_->cols * (rotated - coeff);
    for (size_t i = 0; i < iso_->support.size(); ++i)
        state.amps[iso_->support[i]] += delta(i);
}

void ShearZRotator::rotate(LatticeState &state, double phi) const {
    double reduced = reduce_angle(phi);
    auto it = cache_.find(reduced);
    if (it == cache_.end())
        it = cache_.emplace(reduced, lattice_z_rotation(grid_, reduced)).first;
    state = apply_permutation(state, it->second);
}

LatticePermutation lattice_z_rotation(const Grid3 &grid, double phi) {
    return rotation_3d(grid, Axis::Z, reduce_angle(phi));
}

int min_t_bits(int ell) {
    int t = 1;
    while ((1 << t) < 2 * ell + 2)
        ++t;
    return t;
}

int decode_outcome(int k, int t) {
    int m = ((1 << t) - k) % (1 << t); // eigenphase of m sits at outcome -m mod 2^t
    if (m >= (1 << (t - 1)))
        m -= 1 << t;
    return m;
}

int outcome_of_m(int m, int t) {
    int size = 1 << t;
    return ((-m) % size + size) % size;
}

PhaseEstimate estimate_m(const LatticeState &state, int ell, int t, const ZRotator &rotator) {
    validate_t(ell, t);
    const int size = 1 << t;
    const long long nsites = state.grid.sites();

    // chi_k = 2^-t sum_j w^{-jk} U^j psi, accumulated while streaming over j.
    std::vector<std::vector<cplx>> chi(size, std::vector<cplx>(nsites, cplx(0, 0)));
    for (int j = 0; j < size; ++j) {
        LatticeState branch = state;
        apply_branch_power(branch, j, t, rotator, +1);
        for (int k = 0; k < size; ++k) {
            cplx w = std::exp(cplx(0.0, -2.0 * kPi * double(j) * double(k) / double(size))) /
                     double(size);
            for (long long i = 0; i < nsites; ++i)
                chi[k][i] += w * branch.amps[i];
        }
    }

    PhaseEstimate est;
    est.t = t;
    est.distribution.resize(size);
    int best = 0;
    for (int k = 0; k < size; ++k) {
        est.distribution[k] = norm_squared(chi[k]);
        if (est.distribution[k] > est.distribution[best])
            best = k;
    }
    est.decoded_m = decode_outcome(best, t);
    est.confidence = est.distribution[best];
    return est;
}

LatticeState qpe_projection(const LatticeState &state, int t, int k, const ZRotator &rotator) {
    const int size = 1 << t;
    const long long nsites = state.grid.sites();
    LatticeState chi = LatticeState::zero(state.grid);
    for (int j = 0; j < size; ++j) {
        LatticeState branch = state;
        apply_branch_power(branch, j, t, rotator, +1);
        cplx w =
            std::exp(cplx(0.0, -2.0 * kPi * double(j) * double(k) / double(size))) / double(size);
        for (long long i = 0; i < nsites; ++i)
            chi.amps[i] += w * branch.amps[i];
    }
    return chi;
}

UncomputeResult uncompute_m(const TaggedState &tagged, int t, const ZRotator &rotator) {
    validate_t(tagged.ell, t);
    const int ell = tagged.ell;
    const int size = 1 << t;
    const long long nsites = tagged.grid.sites();

    // After estimation, subtracting the decoded ancilla from the tag leaves
    // tag = 0 only on the single outcome that decodes to the block's own m;
    // inverting the estimation then returns the ancillas to |0>. Everything
    // else is leakage, so only the clean component has to be accumulated.
    LatticeState out = LatticeState::zero(tagged.grid);
    for (int m = -ell; m <= ell; ++m) {
        const auto &block = tagged.blocks[m + ell];
        bool empty = true;
        for (const cplx &a : block)
            if (a != cplx(0.0, 0.0)) {
                empty = false;
                break;
            }
        if (empty)
            continue;
        LatticeState psi{tagged.grid, block};
        const int km = outcome_of_m(m, t);
        LatticeState chi = qpe_projection(psi, t, km, rotator);
        for (int j = 0; j < size; ++j) {
            LatticeState branch = chi;
            apply_branch_power(branch, j, t, rotator, -1);
            cplx w = std::exp(cplx(0.0, 2.0 * kPi * double(j) * double(km) / double(size))) /
                     double(size);
            for (long long i = 0; i < nsites; ++i)
                out.amps[i] += w * branch.amps[i];
        }
    }

    double kept = norm_squared(out.amps);
    UncomputeResult res{std::move(out), std::max(0.0, 1.0 - kept)};
    if (res.leakage > 0.5)
        throw NumericalError("uncompute_m: leakage " + std::to_string(res.leakage) +
                             " exceeds 0.5; estimate unusable");
    double nrm = std::sqrt(kept);
    for (cplx &a : res.state.amps)
        a /= nrm;
    return res;
}

} // namespace su2lat
