#pragma once

#include "su2lat/pipeline.hpp"

namespace su2lat {

/// One Floquet period: Ry(p) followed by the diagonal kick e^{i c m^2}.
struct KickedTopParams {
    int j = 4;          // spin size (integer ell)
    double c = 3.0;     // kick strength, radians per m^2
    double p = kPi / 2; // y-rotation angle
    int steps = 5;
    bool kick_first = false; // apply the kick before the rotation instead
    bool scaled_kick = false; // use c/(2j) (textbook scaling) instead of raw c

    double effective_c() const { return scaled_kick ? c / (2.0 * j) : c; }
    void validate(bool lattice_backed) const;
};

/// |m> -> e^{i c m^2} |m>; exact diagonal rephasing.
CompactState kick_phase(const CompactState &state, double c);

enum class TopBackend { Exact, Lattice };

/// One kicked-top step through the chosen backend. For the lattice backend a
/// context must be supplied (so sweeps reuse one translate isometry);
/// leakage_out, when non-null, receives the pipeline leakage.
CompactState kicked_top_step(const CompactState &state, const KickedTopParams &params,
                             TopBackend backend, PipelineContext *ctx,
                             double *leakage_out = nullptr);

struct TopStepRecord {
    int step = 0;
    double fidelity = 1.0; // |<a|b>|^2 between the two backends
    double jz_a = 0.0;     // <J_z>/j along backend a
    double jz_b = 0.0;
    double leakage = 0.0;  // lattice-backend leakage this step (0 for exact)
};

/// Runs two backends in lockstep from the same initial state, recording the
/// cross-backend fidelity and normalized <J_z> after every step. Record 0 is
/// the initial state.
std::vector<TopStepRecord> kicked_top_run(const CompactState &initial,
                                          const KickedTopParams &params, TopBackend backend_a,
                                          TopBackend backend_b, const PipelineConfig *cfg);

/// <J_z>/j of a compact state.
double jz_expectation(const CompactState &state);

} // namespace su2lat
