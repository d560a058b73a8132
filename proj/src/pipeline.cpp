#include "su2lat/pipeline.hpp"

#include <cmath>

namespace su2lat {

const LatticePermutation &PipelineContext::y_rotation(double beta) {
    auto it = y_perm_cache.find(beta);
    if (it == y_perm_cache.end())
        it = y_perm_cache.emplace(beta, rotation_3d(Grid3(cfg.n), Axis::Y, beta)).first;
    return it->second;
}

PipelineContext make_context(const PipelineConfig &cfg) {
    PipelineContext ctx{cfg, translate_isometry(cfg.ell, cfg.grid(), cfg.shell())};
    ctx.gram_max_offdiag = max_offdiagonal(gram_matrix(cfg.ell, cfg.grid(), cfg.shell()));
    return ctx;
}

CompactState rotate_z_compact(const CompactState &state, double phi) {
    CompactState out = state;
    for (int m = -state.ell; m <= state.ell; ++m)
        out.amps(m + state.ell) *= std::exp(cplx(0.0, -m * phi));
    return out;
}

double fidelity(const CompactState &a, const CompactState &b) {
    if (a.ell != b.ell)
        throw ValidationError("fidelity: ell mismatch");
    return std::norm(a.amps.dot(b.amps));
}

RotationSpec compose_rotations(const std::vector<RotationSpec> &rots) {
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    for (const RotationSpec &rot : rots)
        r = r * rot.matrix();
    return RotationSpec::from_matrix(r);
}

namespace {

/// Ry(beta) on the lattice through the requested backend.
void rotate_lattice_y(LatticeState &psi, double beta, PipelineContext &ctx) {
    if (ctx.cfg.backend == RotationBackend::Shear) {
        psi = apply_permutation(psi, ctx.y_rotation(beta));
        return;
    }
    // Exact oracle: T D_y(beta) T^dag + (I - T T^dag).
    const TranslateIsometry &iso = ctx.iso;
    Eigen::VectorXcd gathered(iso.support.size());
    for (size_t i = 0; i < iso.support.size(); ++i)
        gathered(i) = psi.amps[iso.support[i]];
    Eigen::VectorXcd coeff = iso.cols.adjoint() * gathered;
    WignerMatrix d = wigner_oracle(iso.ell, RotationSpec::euler(0.0, beta, 0.0));
    Eigen::VectorXcd delta = iso.cols * (d.entries * coeff - coeff);
    for (size_t i = 0; i < iso.support.size(); ++i)
        psi.amps[iso.support[i]] += delta(i);
}

const std::vector<std::vector<cplx>> &prep_blocks(PipelineContext &ctx) {
    if (ctx.prep_blocks.empty()) {
        const int ell = ctx.cfg.ell;
        ctx.prep_blocks.resize(2 * ell + 1);
        for (int m = -ell; m <= ell; ++m)
            ctx.prep_blocks[m + ell] =
                prepare_ylm_lattice(ell, m, ctx.cfg.grid(), ctx.cfg.shell()).amps;
    }
    return ctx.prep_blocks;
}

std::unique_ptr<ZRotator> make_rotator(PipelineContext &ctx) {
    if (ctx.cfg.backend == RotationBackend::Shear)
        return std::make_unique<ShearZRotator>(Grid3(ctx.cfg.n));
    return std::make_unique<ExactZRotator>(ctx.iso);
}

} // namespace

PipelineResult rotate_via_lattice(const CompactState &state, const RotationSpec &rot,
                                  PipelineContext &ctx) {
    if (state.ell != ctx.cfg.ell)
        throw ValidationError("rotate_via_lattice: state ell does not match the pipeline config");
    const CompactState target = exact_rotate(state, rot);

    FidelityReport report;
    report.gram_max_offdiag = ctx.gram_max_offdiag;
    report.beta_through_lattice = rot.beta;

    CompactState out;
    if (std::abs(rot.beta) < 1e-14) {
        out = rotate_z_compact(state, rot.alpha + rot.gamma);
    } else {
        CompactState c1 = rotate_z_compact(state, rot.gamma);
        CompactState c2;
        if (ctx.cfg.mode == TranslateMode::Isometry) {
            LatticeState psi = encode(c1, ctx.iso);
            rotate_lattice_y(psi, rot.beta, ctx);
            DecodeResult dec = decode(psi, ctx.iso);
            c2 = dec.state;
            report.residual = dec.residual;
            report.norm_before_renorm = dec.norm_before_renorm;
            report.leakage = dec.residual * dec.residual;
        } else {
            const int t = ctx.cfg.t();
            auto rotator = make_rotator(ctx);
            TaggedState tagged = translate_with_tag(c1, ctx.cfg.grid(), ctx.cfg.shell());
            UncomputeResult unc = uncompute_m(tagged, t, *rotator);
            LatticeState psi = std::move(unc.state);
            rotate_lattice_y(psi, rot.beta, ctx);
            // Translate back = coherent estimation + un-preparation: the
            // compact amplitude for m is the overlap of the prepared block
            // with the estimation branch that decodes to m.
            const auto &blocks = prep_blocks(ctx);
            const int ell = ctx.cfg.ell;
            Eigen::VectorXcd amps(2 * ell + 1);
            for (int m = -ell; m <= ell; ++m) {
                LatticeState chi = qpe_projection(psi, t, outcome_of_m(m, t), *rotator);
                KahanSum re, im;
                for (long long i = 0; i < ctx.cfg.grid().sites(); ++i) {
                    cplx term = std::conj(blocks[m + ell][i]) * chi.amps[i];
                    re.add(term.real());
                    im.add(term.imag());
                }
                amps(m + ell) = cplx(re.value(), im.value());
            }
            double kept = amps.squaredNorm();
            double back_leak = std::max(0.0, 1.0 - kept);
            report.leakage = unc.leakage + back_leak;
            report.norm_before_renorm = std::sqrt(kept);
            if (!(kept > 1e-15))
                throw NumericalError("rotate_via_lattice: translate-back lost all amplitude");
            c2 = CompactState{ell, amps / std::sqrt(kept)};
        }
        out = rotate_z_compact(c2, rot.alpha);
    }

    report.fidelity = fidelity(target, out);
    return {std::move(out), report};
}

PipelineResult rotate_via_lattice(const CompactState &state, const RotationSpec &rot,
                                  const PipelineConfig &cfg) {
    PipelineContext ctx = make_context(cfg);
    return rotate_via_lattice(state, rot, ctx);
}

} // namespace su2lat
