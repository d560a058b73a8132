#pragma once

#include <memory>
#include <optional>

#include "su2lat/phasest.hpp"

namespace su2lat {

enum class TranslateMode { Isometry, Circuit };
enum class RotationBackend { Shear, ExactOracle };

struct PipelineConfig {
    int ell = 2;
    int n = 64;
    double r0 = -1.0;   // < 0 means the default 0.35 * n
    double width = 3.0;
    TranslateMode mode = TranslateMode::Isometry;
    RotationBackend backend = RotationBackend::Shear;
    int t_bits = -1; // < 0 means the minimum for this ell

    Grid3 grid() const { return Grid3(n); }
    ShellSpec shell() const {
        return ShellSpec{r0 < 0.0 ? 0.35 * n : r0, width};
    }
    int t() const { return t_bits < 0 ? min_t_bits(ell) : t_bits; }
};

struct FidelityReport {
    double fidelity = 0.0; // |<psi_exact | psi_pipeline>|^2
    double leakage = 0.0;
    double gram_max_offdiag = 0.0;
    double residual = 0.0; // isometry-mode decode residual
    double norm_before_renorm = 1.0;
    double beta_through_lattice = 0.0;
};

/// Heavy reusable pieces of a pipeline: the translate isometry plus cached
/// rotation permutations, so repeated rotations (sweeps, kicked-top steps)
/// share one orthogonalization.
struct PipelineContext {
    PipelineConfig cfg;
    TranslateIsometry iso;
    double gram_max_offdiag = 0.0;
    std::map<double, LatticePermutation> y_perm_cache;
    std::vector<std::vector<cplx>> prep_blocks; // circuit mode, built lazily

    const LatticePermutation &y_rotation(double beta);
};

PipelineContext make_context(const PipelineConfig &cfg);

/// Exact diagonal z-rotation on the compact register: amps[m] *= e^{-im phi}.
CompactState rotate_z_compact(const CompactState &state, double phi);

/// |<a|b>|^2.
double fidelity(const CompactState &a, const CompactState &b);

/// Operator-order composition: the last list element acts first, so
/// D(compose({R1, R2})) = D(R1) * D(R2). Euler angles re-extracted from the
/// 3x3 product; gamma = 0 at gimbal lock.
RotationSpec compose_rotations(const std::vector<RotationSpec> &rots);

struct PipelineResult {
    CompactState state;
    FidelityReport report;
};

/// The three-step rotation: z-factors applied exactly on the compact
/// register, only Ry(beta) routed through the lattice (translate, shear-
/// rotate, translate back). The report compares against the exact oracle.
PipelineResult rotate_via_lattice(const CompactState &state, const RotationSpec &rot,
                                  PipelineContext &ctx);
PipelineResult rotate_via_lattice(const CompactState &state, const RotationSpec &rot,
                                  const PipelineConfig &cfg);

} // namespace su2lat
