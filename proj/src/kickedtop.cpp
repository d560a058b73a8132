#include "su2lat/kickedtop.hpp"

#include <cmath>

namespace su2lat {

void KickedTopParams::validate(bool lattice_backed) const {
    if (j < 0)
        throw ValidationError("kicked top: j must be nonnegative");
    if (steps < 0)
        throw ValidationError("kicked top: steps must be nonnegative");
    if (!std::isfinite(c) || !std::isfinite(p))
        throw ValidationError("kicked top: c and p must be finite");
    if (lattice_backed && j > 8)
        throw ValidationError("kicked top: lattice-backed runs require j <= 8");
}

CompactState kick_phase(const CompactState &state, double c) {
    CompactState out = state;
    for (int m = -state.ell; m <= state.ell; ++m)
        out.amps(m + state.ell) *= std::exp(cplx(0.0, c * double(m) * double(m)));
    return out;
}

double jz_expectation(const CompactState &state) {
    KahanSum acc;
    for (int m = -state.ell; m <= state.ell; ++m)
        acc.add(m * std::norm(state.amp(m)));
    return state.ell > 0 ? acc.value() / double(state.ell) : 0.0;
}

CompactState kicked_top_step(const CompactState &state, const KickedTopParams &params,
                             TopBackend backend, PipelineContext *ctx, double *leakage_out) {
    params.validate(backend == TopBackend::Lattice);
    if (leakage_out)
        *leakage_out = 0.0;
    const RotationSpec ry = RotationSpec::euler(0.0, params.p, 0.0);

    auto rotate = [&](const CompactState &s) {
        if (backend == TopBackend::Exact)
            return exact_rotate(s, ry);
        if (!ctx)
            throw ValidationError("kicked_top_step: lattice backend needs a pipeline context");
        PipelineResult res = rotate_via_lattice(s, ry, *ctx);
        if (leakage_out)
            *leakage_out = res.report.leakage;
        return res.state;
    };

    if (params.kick_first)
        return rotate(kick_phase(state, params.effective_c()));
    return kick_phase(rotate(state), params.effective_c());
}

std::vector<TopStepRecord> kicked_top_run(const CompactState &initial,
                                          const KickedTopParams &params, TopBackend backend_a,
                                          TopBackend backend_b, const PipelineConfig *cfg) {
    bool lattice = backend_a == TopBackend::Lattice || backend_b == TopBackend::Lattice;
    params.validate(lattice);
    if (initial.ell != params.j)
        throw ValidationError("kicked_top_run: initial state ell must equal j");

    std::optional<PipelineContext> ctx;
    if (lattice) {
        if (!cfg)
            throw ValidationError("kicked_top_run: lattice backend needs a pipeline config");
        PipelineConfig c = *cfg;
        c.ell = params.j;
        ctx.emplace(make_context(c));
    }

    std::vector<TopStepRecord> series;
    CompactState a = initial, b = initial;
    series.push_back({0, fidelity(a, b), jz_expectation(a), jz_expectation(b), 0.0});
    for (int step = 1; step <= params.steps; ++step) {
        double leak_a = 0.0, leak_b = 0.0;
        a = kicked_top_step(a, params, backend_a, ctx ? &*ctx : nullptr, &leak_a);
        b = kicked_top_step(b, params, backend_b, ctx ? &*ctx : nullptr, &leak_b);
        series.push_back(
            {step, fidelity(a, b), jz_expectation(a), jz_expectation(b), leak_a + leak_b});
    }
    return series;
}

} // namespace su2lat
