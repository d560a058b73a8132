#include "su2lat/shear.hpp"

#include <cmath>

namespace su2lat {

namespace {

int wrap(long long v, int n) {
    long long r = v % n;
    return int(r < 0 ? r + n : r);
}

/// The ordered plane (u, v) in which a +theta rotation about `axis` is a
/// standard 2D rotation: x -> (y,z), y -> (z,x), z -> (x,y).
std::pair<int, int> plane_of(Axis axis) {
    switch (axis) {
    case Axis::X: return {1, 2};
    case Axis::Y: return {2, 0};
    default: return {0, 1};
    }
}

void check_bijection(const LatticePermutation &perm) {
    std::vector<bool> seen(perm.map.size(), false);
    for (std::uint32_t v : perm.map) {
        if (v >= perm.map.size() || seen[v])
            throw NumericalError("LatticePermutation: map is not a bijection");
        seen[v] = true;
    }
}

/// round-half-away-from-zero, fixed for determinism.
long long round_away(double x) { return std::llround(x); }

} // namespace

LatticePermutation LatticePermutation::identity(const Grid3 &grid) {
    LatticePermutation p{grid, std::vector<std::uint32_t>(grid.sites())};
    for (size_t i = 0; i < p.map.size(); ++i)
        p.map[i] = std::uint32_t(i);
    return p;
}

LatticePermutation LatticePermutation::then(const LatticePermutation &next) const {
    if (!(grid == next.grid))
        throw ValidationError("LatticePermutation::then: grid mismatch");
    LatticePermutation out{grid, std::vector<std::uint32_t>(map.size())};
    for (size_t i = 0; i < map.size(); ++i)
        out.map[i] = next.map[map[i]];
    check_bijection(out);
    return out;
}

LatticePermutation LatticePermutation::inverse() const {
    LatticePermutation out{grid, std::vector<std::uint32_t>(map.size())};
    for (size_t i = 0; i < map.size(); ++i)
        out.map[map[i]] = std::uint32_t(i);
    check_bijection(out);
    return out;
}

bool LatticePermutation::is_identity() const {
    for (size_t i = 0; i < map.size(); ++i)
        if (map[i] != i)
            return false;
    return true;
}

LatticePermutation shear_2d(const Grid3 &grid, Axis sheared, Axis driving, double a) {
    if (sheared == driving)
        throw ValidationError("shear_2d: sheared and driving axes must differ");
    if (!std::isfinite(a))
        throw ValidationError("shear_2d: shear slope must be finite");
    const int n = grid.n;
    const int c = grid.center();
    const int su = int(sheared), sv = int(driving);

    LatticePermutation p{grid, std::vector<std::uint32_t>(grid.sites())};
    int xyz[3];
    for (xyz[0] = 0; xyz[0] < n; ++xyz[0])
        for (xyz[1] = 0; xyz[1] < n; ++xyz[1])
            for (xyz[2] = 0; xyz[2] < n; ++xyz[2]) {
                long long shift = round_away(a * (xyz[sv] - c));
                int img[3] = {xyz[0], xyz[1], xyz[2]};
                img[su] = wrap(xyz[su] + shift, n);
                p.map[grid.flat(xyz[0], xyz[1], xyz[2])] =
                    std::uint32_t(grid.flat(img[0], img[1], img[2]));
            }
    check_bijection(p);
    return p;
}

LatticePermutation rotation_2d(const Grid3 &grid, Axis axis, double theta) {
    if (!(std::abs(theta) <= 0.5 * kPi + 1e-12))
        throw ValidationError("rotation_2d: |theta| must not exceed pi/2; "
                              "compose exact quarter-turns first");
    auto [u, v] = plane_of(axis);
    const double a = -std::tan(0.5 * theta);
    const double b = std::sin(theta);
    // Sh_u(a) then Sh_v(b) then Sh_u(a) equals R(theta) in exact arithmetic.
    LatticePermutation p = shear_2d(grid, Axis(u), Axis(v), a);
    p = p.then(shear_2d(grid, Axis(v), Axis(u), b));
    p = p.then(shear_2d(grid, Axis(u), Axis(v), a));
    return p;
}

LatticePermutation rotation_90(const Grid3 &grid, Axis axis, int quarter_turns) {
    const int q = ((quarter_turns % 4) + 4) % 4;
    const int n = grid.n;
    const int c = grid.center();
    auto [u, v] = plane_of(axis);

    LatticePermutation p{grid, std::vector<std::uint32_t>(grid.sites())};
    int xyz[3];
    for (xyz[0] = 0; xyz[0] < n; ++xyz[0])
        for (xyz[1] = 0; xyz[1] < n; ++xyz[1])
            for (xyz[2] = 0; xyz[2] < n; ++xyz[2]) {
                int pu = xyz[u] - c, pv = xyz[v] - c;
                int qu = pu, qv = pv;
                switch (q) {
                case 1: qu = -pv; qv = pu; break;
                case 2: qu = -pu; qv = -pv; break;
                case 3: qu = pv; qv = -pu; break;
                default: break;
                }
                int img[3] = {xyz[0], xyz[1], xyz[2]};
                img[u] = wrap(qu + c, n);
                img[v] = wrap(qv + c, n);
                p.map[grid.flat(xyz[0], xyz[1], xyz[2])] =
                    std::uint32_t(grid.flat(img[0], img[1], img[2]));
            }
    check_bijection(p);
    return p;
}

LatticePermutation rotation_3d(const Grid3 &grid, Axis axis, double theta) {
    if (!(theta > -kPi - 1e-12 && theta <= kPi + 1e-12))
        throw ValidationError("rotation_3d: theta must lie in (-pi, pi]");

    const double quarter = 0.5 * kPi;
    long long nearest = round_away(theta / quarter);
    if (std::abs(theta - double(nearest) * quarter) < 1e-12)
        return rotation_90(grid, axis, int(nearest));

    // Minimal quarter-turn extraction: q = 0 on |theta| <= pi/2, so a
    // rotation and its negative are built from exactly inverse shears there.
    int q = 0;
    double rem = theta;
    if (theta > quarter) {
        q = 1;
        rem = theta - quarter;
    } else if (theta < -quarter) {
        q = -1;
        rem = theta + quarter;
    }
    LatticePermutation p = rotation_2d(grid, axis, rem);
    if (q != 0)
        p = p.then(rotation_90(grid, axis, q));
    return p;
}

LatticeState apply_permutation(const LatticeState &state, const LatticePermutation &perm) {
    if (!(state.grid == perm.grid))
        throw ValidationError("apply_permutation: grid mismatch");
    LatticeState out = LatticeState::zero(state.grid);
    for (size_t i = 0; i < perm.map.size(); ++i)
        out.amps[perm.map[i]] = state.amps[i];
    return out;
}

DisplacementStats displacement_stats(const LatticePermutation &perm, Axis axis, double theta,
                                     double region_radius) {
    const Grid3 &grid = perm.grid;
    const int n = grid.n;
    const int c = grid.center();
    auto [u, v] = plane_of(axis);
    const double ct = std::cos(theta), st = std::sin(theta);

    DisplacementStats stats;
    KahanSum total;
    size_t count = 0;
    int xyz[3];
    for (xyz[0] = 0; xyz[0] < n; ++xyz[0])
        for (xyz[1] = 0; xyz[1] < n; ++xyz[1])
            for (xyz[2] = 0; xyz[2] < n; ++xyz[2]) {
                double p0 = xyz[0] - c, p1 = xyz[1] - c, p2 = xyz[2] - c;
                if (std::abs(p0) > region_radius || std::abs(p1) > region_radius ||
                    std::abs(p2) > region_radius)
                    continue;
                double phys[3] = {p0, p1, p2};
                double target[3] = {p0, p1, p2};
                target[u] = ct * phys[u] - st * phys[v];
                target[v] = st * phys[u] + ct * phys[v];

                auto img = grid.coords(perm.map[grid.flat(xyz[0], xyz[1], xyz[2])]);
                double d2 = 0.0;
                for (int k = 0; k < 3; ++k) {
                    double d = (img[k] - c) - target[k];
                    d -= n * std::round(d / n); // wrap-aware
                    d2 += d * d;
                }
                double dist = std::sqrt(d2);
                stats.max = std::max(stats.max, dist);
                total.add(dist);
                ++count;
                size_t bin = size_t(std::floor(dist));
                if (stats.histogram.size() <= bin)
                    stats.histogram.resize(bin + 1, 0);
                ++stats.histogram[bin];
            }
    stats.mean = count ? total.value() / double(count) : 0.0;
    return stats;
}

} // namespace su2lat
