#pragma once

#include <vector>

#include "su2lat/lattice.hpp"

namespace su2lat {

enum class Axis : int { X = 0, Y = 1, Z = 2 };

/// Explicit bijection of grid sites; the unitary implementation of shear and
/// rotation maps. The bijection is verified at construction.
struct LatticePermutation {
    Grid3 grid;
    std::vector<std::uint32_t> map; // image flat index per site

    static LatticePermutation identity(const Grid3 &grid);
    /// Composition: apply this permutation first, then `next`.
    LatticePermutation then(const LatticePermutation &next) const;
    LatticePermutation inverse() const;
    bool is_identity() const;
};

/// Cyclic shear: sheared coordinate u -> (u + round(a*(v - c))) mod n where v
/// is the driving coordinate, applied in every slice along the third axis.
/// round is half-away-from-zero. Bijective for any a (per-line translation).
LatticePermutation shear_2d(const Grid3 &grid, Axis sheared, Axis driving, double a);

/// Three-shear rotation by theta about a principal axis: Sh_u(a), Sh_v(b),
/// Sh_u(a) with a = -tan(theta/2), b = sin(theta), in the plane (u, v) that
/// makes the map an active right-handed rotation. Requires |theta| <= pi/2.
LatticePermutation rotation_2d(const Grid3 &grid, Axis axis, double theta);

/// Exact active rotation by quarter_turns * 90 degrees about a principal
/// axis: coordinate permutation with negation about the center, mod n.
LatticePermutation rotation_90(const Grid3 &grid, Axis axis, int quarter_turns);

/// Active rotation by theta in (-pi, pi] about a principal axis. Exact
/// multiples of pi/2 use pure quarter-turns; otherwise theta is reduced to
/// |theta'| <= pi/2 by extracting quarter-turns and the remainder is sheared.
LatticePermutation rotation_3d(const Grid3 &grid, Axis axis, double theta);

/// amps'[map[i]] = amps[i]; exactly unitary.
LatticeState apply_permutation(const LatticeState &state, const LatticePermutation &perm);

struct DisplacementStats {
    double max = 0.0;
    double mean = 0.0;
    std::vector<std::size_t> histogram; // bin k counts displacements in [k, k+1)
};

/// Wrap-aware Euclidean distance between each site's image and its exact
/// rotated position, over sites whose coordinates all lie within
/// region_radius of the center.
DisplacementStats displacement_stats(const LatticePermutation &perm, Axis axis, double theta,
                                     double region_radius);

} // namespace su2lat
