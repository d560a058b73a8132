#pragma once

#include <map>

#include "su2lat/shear.hpp"
#include "su2lat/stateprep.hpp"

namespace su2lat {

/// z-rotation engine driven by phase estimation. rotate(state, -phi) must be
/// the exact inverse of rotate(state, phi) for the dyadic angles 2pi*2^k/2^t
/// used by the estimator (both engines below satisfy this).
class ZRotator {
  public:
    virtual ~ZRotator() = default;
    virtual void rotate(LatticeState &state, double phi) const = 0;
};

/// Exact diagonal oracle: T diag(e^{-i m phi}) T^dag + (I - T T^dag).
/// Isometry columns are exact eigenstates.
class ExactZRotator : public ZRotator {
  public:
    explicit ExactZRotator(const TranslateIsometry &iso) : iso_(&iso) {}
    void rotate(LatticeState &state, double phi) const override;

  private:
    const TranslateIsometry *iso_;
};

/// Shear-permutation backend; caches one permutation per distinct angle.
class ShearZRotator : public ZRotator {
  public:
    explicit ShearZRotator(const Grid3 &grid) : grid_(grid) {}
    void rotate(LatticeState &state, double phi) const override;

  private:
    Grid3 grid_;
    mutable std::map<double, LatticePermutation> cache_;
};

/// Spatial z-rotation as a permutation: exact for multiples of pi/2,
/// shear-based otherwise. phi is reduced mod 2pi into (-pi, pi].
LatticePermutation lattice_z_rotation(const Grid3 &grid, double phi);

struct PhaseEstimate {
    int t = 0;
    std::vector<double> distribution; // over 2^t ancilla outcomes
    int decoded_m = 0;                // centered window: outcomes >= 2^(t-1) are negative
    double confidence = 0.0;          // probability of the decoded outcome
};

/// Minimal ancilla count for the m range of a given ell.
int min_t_bits(int ell);

/// Decodes ancilla outcome k to m in [-2^(t-1), 2^(t-1)).
int decode_outcome(int k, int t);

/// The ancilla outcome that decodes to m.
int outcome_of_m(int m, int t);

/// Textbook phase estimation on the full outcome distribution: t ancillas,
/// per-bit controlled rotations by 2pi*2^k/2^t (angle doubling, not repeated
/// application), inverse Fourier transform on the ancillas.
PhaseEstimate estimate_m(const LatticeState &state, int ell, int t, const ZRotator &rotator);

/// The (unnormalized) lattice component attached to ancilla outcome k after
/// the estimation unitary. Building block for coherent uncomputation.
LatticeState qpe_projection(const LatticeState &state, int t, int k, const ZRotator &rotator);

struct UncomputeResult {
    LatticeState state; // renormalized
    double leakage = 0; // probability mass outside tag = 0 (and clean ancillas)
};

/// Runs the estimation coherently on a tagged state, subtracts the estimate
/// from the m tag (mod 2^t), inverts the estimation unitary, and discards the
/// concentrated tag and ancilla registers. Throws NumericalError when leakage
/// exceeds 0.5.
UncomputeResult uncompute_m(const TaggedState &tagged, int t, const ZRotator &rotator);

} // namespace su2lat
