#pragma once

#include <functional>

#include "su2lat/lattice.hpp"

namespace su2lat {

/// Target |f(x)|^2 distribution over 2^n points: non-negative, sums to 1.
struct TargetDensity {
    std::vector<double> p;
    int n_bits = 0;

    /// Validates: power-of-two length, non-negative entries, dyadic tree sum
    /// equal to 1 within 1e-12.
    static TargetDensity checked(std::vector<double> p);
    /// Normalizes arbitrary non-negative weights by their dyadic tree sum.
    static TargetDensity normalized(std::vector<double> weights);
};

/// Sum of the density over the dyadic interval [index*2^level, (index+1)*2^level).
/// Computed by pairwise tree reduction, so the refinement identity
/// sum(level,k) = sum(level-1,2k) + sum(level-1,2k+1) holds exactly.
double interval_sum(const TargetDensity &density, int level, long long index);

/// Per-qubit conditional rotation angles realizing the amplitude-encoding
/// cascade. angles[i] has 2^i entries, indexed by the value of the i higher
/// (more significant) bits; qubit 0 is the most significant.
struct PrepPlan {
    int n_qubits = 0;
    std::vector<std::vector<double>> angles; // all in [0, pi/2]
};

/// angle(qubit i, prefix) = arccos(sqrt(P(prefix,0) / P(prefix))); zero-mass
/// prefixes get angle 0.
PrepPlan build_prep_plan(const TargetDensity &density);

/// Simulates the cascade exactly on a 2^n state vector; output amplitudes
/// are non-negative reals with unit norm.
std::vector<double> apply_prep(const PrepPlan &plan);

/// amps[x] <- exp(i * phase_fn(x)) * amps[x].
void rephase(std::vector<cplx> &amps, const std::function<double(long long)> &phase_fn);

/// The conditional-rotation construction of a discretized Y_lm shell state:
/// (1) cascade over z from the marginal of the |P_lm(cos theta)|^2 site
/// distribution, (2) per-z-slice cascade over (x, y) ring sites, (3) rephase
/// by m*phi plus the sign of P_lm. Equals sample_ylm_state up to summation
/// order.
LatticeState prepare_ylm_lattice(int ell, int m, const Grid3 &grid, const ShellSpec &shell);

/// Joint state sum_m c_m |m> (x) |block_m>, stored as 2l+1 dense lattice blocks.
struct TaggedState {
    int ell = 0;
    Grid3 grid;
    std::vector<std::vector<cplx>> blocks; // (2l+1) x n^3

    double norm() const;
};

/// |m> -> |m, Y_lm>: every block is the prepared cascade output for its m.
TaggedState translate_with_tag(const CompactState &state, const Grid3 &grid,
                               const ShellSpec &shell);

/// Tagged state whose blocks are the exact orthonormalized lattice analogs
/// (isometry columns) instead of cascade outputs; exact eigenstates of the
/// oracle z-rotation, used to test estimation in isolation.
TaggedState tagged_from_isometry(const CompactState &state, const TranslateIsometry &iso);

} // namespace su2lat
