#include "su2lat/stateprep.hpp"

#include <cmath>

namespace su2lat {

namespace {

/// Pairwise sum of p[first .. first + 2^level). The association is the dyadic
/// tree itself, which makes refinement identities exact in floating point.
double tree_sum(const std::vector<double> &p, int level, long long first) {
    if (level == 0)
        return p[first];
    long long half = 1LL << (level - 1);
    return tree_sum(p, level - 1, first) + tree_sum(p, level - 1, first + half);
}

double tree_total(const std::vector<double> &p) {
    return tree_sum(p, log2_exact((long long)p.size()), 0);
}

} // namespace

TargetDensity TargetDensity::checked(std::vector<double> p) {
    if (p.empty() || !is_power_of_two((long long)p.size()))
        throw ValidationError("TargetDensity: length must be a power of two");
    for (double v : p)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ValidationError("TargetDensity: entries must be finite and non-negative");
    TargetDensity d;
    d.p = std::move(p);
    d.n_bits = log2_exact((long long)d.p.size());
    if (std::abs(tree_total(d.p) - 1.0) > 1e-12)
        throw ValidationError("TargetDensity: entries must sum to 1 within 1e-12");
    return d;
}

TargetDensity TargetDensity::normalized(std::vector<double> weights) {
    if (weights.empty() || !is_power_of_two((long long)weights.size()))
        throw ValidationError("TargetDensity: length must be a power of two");
    double total = tree_total(weights);
    if (!(total > 0.0))
        throw ValidationError("TargetDensity: total weight must be positive");
    for (double &v : weights) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ValidationError("TargetDensity: entries must be finite and non-negative");
        v /= total;
    }
    TargetDensity d;
    d.n_bits = log2_exact((long long)weights.size());
    d.p = std::move(weights);
    return d;
}

double interval_sum(const TargetDensity &density, int level, long long index) {
    if (level < 0 || level > density.n_bits)
        throw ValidationError("interval_sum: level out of range");
    if (index < 0 || index >= (1LL << (density.n_bits - level)))
        throw ValidationError("interval_sum: index out of range");
    return tree_sum(density.p, level, index << level);
}

PrepPlan build_prep_plan(const TargetDensity &density) {
    const int n = density.n_bits;
    PrepPlan plan;
    plan.n_qubits = n;
    plan.angles.resize(n);
    for (int qubit = 0; qubit < n; ++qubit) {
        // Prefix = value of the `qubit` higher bits; its interval has width
        // 2^(n-qubit), split evenly by the next bit.
        const int level = n - qubit;
        plan.angles[qubit].resize(size_t(1) << qubit);
        for (long long prefix = 0; prefix < (1LL << qubit); ++prefix) {
            double whole = interval_sum(density, level, prefix);
            double left = interval_sum(density, level - 1, 2 * prefix);
            double angle = 0.0;
            if (whole > 0.0)
                angle = std::acos(std::sqrt(std::clamp(left / whole, 0.0, 1.0)));
            plan.angles[qubit][prefix] = angle;
        }
    }
    return plan;
}

std::vector<double> apply_prep(const PrepPlan &plan) {
    std::vector<double> amps{1.0};
    for (int qubit = 0; qubit < plan.n_qubits; ++qubit) {
        std::vector<double> next(amps.size() * 2);
        for (size_t prefix = 0; prefix < amps.size(); ++prefix) {
            double angle = plan.angles[qubit][prefix];
            next[2 * prefix] = amps[prefix] * std::cos(angle);
            next[2 * prefix + 1] = amps[prefix] * std::sin(angle);
        }
        amps = std::move(next);
    }
    return amps;
}

void rephase(std::vector<cplx> &amps, const std::function<double(long long)> &phase_fn) {
    for (size_t i = 0; i < amps.size(); ++i) {
        if (amps[i] != cplx(0.0, 0.0))
            amps[i] *= std::exp(cplx(0.0, phase_fn((long long)i)));
    }
}

LatticeState prepare_ylm_lattice(int ell, int m, const Grid3 &grid, const ShellSpec &shell) {
    if (std::abs(m) > ell)
        throw ValidationError("prepare_ylm_lattice: |m| must not exceed ell");
    auto sites = shell_sites(grid, shell);
    if (sites.empty())
        throw ValidationError("prepare_ylm_lattice: shell contains no sites");
    if (sites.size() < size_t(20) * (2 * ell + 1))
        throw ValidationError("prepare_ylm_lattice: resolution check failed");

    const int n = grid.n;
    const int c = grid.center();

    // Site weights |P_lm(cos theta)|^2, stored per z-slice in (x, y) layout.
    std::vector<std::vector<double>> slice_w(n, std::vector<double>((size_t)n * n, 0.0));
    for (long long idx : sites) {
        auto [x, y, z] = grid.coords(idx);
        double px = x - c, py = y - c, pz = z - c;
        double r = std::sqrt(px * px + py * py + pz * pz);
        double plm = assoc_legendre_norm(ell, m, std::clamp(pz / r, -1.0, 1.0));
        slice_w[z][(size_t)x * n + y] = plm * plm;
    }

    // Stage 1: cascade over the z register from the marginal distribution.
    std::vector<double> z_marginal(n, 0.0);
    for (int z = 0; z < n; ++z)
        z_marginal[z] = tree_total(slice_w[z]);
    TargetDensity z_density = TargetDensity::normalized(z_marginal);
    std::vector<double> sqrt_pz = apply_prep(build_prep_plan(z_density));

    // Stage 2: per-z-slice cascade over the (x, y) ring distribution.
    LatticeState out = LatticeState::zero(grid);
    for (int z = 0; z < n; ++z) {
        if (!(z_marginal[z] > 0.0))
            continue;
        TargetDensity cond = TargetDensity::normalized(slice_w[z]);
        std::vector<double> sq = apply_prep(build_prep_plan(cond));
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                double a = sq[(size_t)x * n + y];
                if (a != 0.0)
                    out.amps[grid.flat(x, y, z)] = sqrt_pz[z] * a;
            }
    }

    // Stage 3: rephase by m*phi, absorbing the sign of P_lm where negative.
    for (long long idx : sites) {
        if (out.amps[idx] == cplx(0.0, 0.0))
            continue;
        auto [x, y, z] = grid.coords(idx);
        double px = x - c, py = y - c, pz = z - c;
        double r = std::sqrt(px * px + py * py + pz * pz);
        double phase = m * std::atan2(py, px);
        if (assoc_legendre_norm(ell, m, std::clamp(pz / r, -1.0, 1.0)) < 0.0)
            phase += kPi;
        out.amps[idx] *= std::exp(cplx(0.0, phase));
    }

    double nrm = std::sqrt(norm_squared(out.amps));
    if (!(nrm > 0.0))
        throw NumericalError("prepare_ylm_lattice: prepared state has zero norm");
    for (cplx &a : out.amps)
        a /= nrm;
    return out;
}

double TaggedState::norm() const {
    KahanSum acc;
    for (const auto &block : blocks)
        for (const cplx &a : block)
            acc.add(std::norm(a));
    return std::sqrt(acc.value());
}

TaggedState translate_with_tag(const CompactState &state, const Grid3 &grid,
                               const ShellSpec &shell) {
    TaggedState tagged{state.ell, grid, {}};
    tagged.blocks.resize(2 * state.ell + 1);
    for (int m = -state.ell; m <= state.ell; ++m) {
        cplx cm = state.amp(m);
        if (cm == cplx(0.0, 0.0)) {
            tagged.blocks[m + state.ell].assign(grid.sites(), cplx(0.0, 0.0));
            continue;
        }
        LatticeState block = prepare_ylm_lattice(state.ell, m, grid, shell);
        for (cplx &a : block.amps)
            a *= cm;
        tagged.blocks[m + state.ell] = std::move(block.amps);
    }
    return tagged;
}

TaggedState tagged_from_isometry(const CompactState &state, const TranslateIsometry &iso) {
    if (state.ell != iso.ell)
        throw ValidationError("tagged_from_isometry: ell mismatch");
    TaggedState tagged{state.ell, iso.grid, {}};
    tagged.blocks.resize(2 * state.ell + 1);
    for (int m = -state.ell; m <= state.ell; ++m) {
        std::vector<cplx> block(iso.grid.sites(), cplx(0.0, 0.0));
        cplx cm = state.amp(m);
        for (size_t i = 0; i < iso.support.size(); ++i)
            block[iso.support[i]] = cm * iso.cols(i, m + state.ell);
        tagged.blocks[m + state.ell] = std::move(block);
    }
    return tagged;
}

} // namespace su2lat
