#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "su2lat/common.hpp"
#include "su2lat/specfun.hpp"

namespace su2lat {

/// Periodic cubic grid with n sites per axis. Site coordinates are integers
/// 0..n-1; the physical coordinate of a site is (site - center). Flat indices
/// are x-major: index = (x*n + y)*n + z, so z varies fastest.
struct Grid3 {
    int n = 0;

    explicit Grid3(int n_sites);

    int center() const { return n / 2; }
    long long sites() const { return (long long)n * n * n; }
    long long flat(int x, int y, int z) const { return ((long long)x * n + y) * n + z; }
    std::array<int, 3> coords(long long idx) const {
        int z = int(idx % n);
        idx /= n;
        int y = int(idx % n);
        return {int(idx / n), y, z};
    }
    bool operator==(const Grid3 &o) const { return n == o.n; }
};

/// Thin radial window: constant on |r - r0| <= width/2, zero elsewhere.
/// Must stay inside the central validity region of the shear rotations.
struct ShellSpec {
    double r0 = 0.0;
    double width = 3.0;

    static ShellSpec defaults(const Grid3 &grid) { return {0.35 * grid.n, 3.0}; }
    void validate(const Grid3 &grid) const;
    bool contains(double r) const { return std::abs(r - r0) <= 0.5 * width; }
};

/// Dense complex amplitude field over the n^3 grid (x-major flat order).
struct LatticeState {
    Grid3 grid;
    std::vector<cplx> amps;

    static LatticeState zero(const Grid3 &grid) { return {grid, std::vector<cplx>(grid.sites())}; }
};

inline cplx inner(const LatticeState &a, const LatticeState &b) {
    KahanSum re, im;
    for (size_t i = 0; i < a.amps.size(); ++i) {
        cplx t = std::conj(a.amps[i]) * b.amps[i];
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.value(), im.value()};
}

/// Flat indices of all sites inside the shell, ascending.
std::vector<long long> shell_sites(const Grid3 &grid, const ShellSpec &shell);

/// Discretized Y_lm * R(r) on the shell, unit norm. Requires at least
/// 20*(2l+1) shell sites (resolution heuristic).
LatticeState sample_ylm_state(int ell, int m, const Grid3 &grid, const ShellSpec &shell);

/// G(m,m') = <state(l,m)|state(l,m')> for the raw sampled states; Hermitian
/// with unit diagonal. Discretization-quality diagnostic.
Eigen::MatrixXcd gram_matrix(int ell, const Grid3 &grid, const ShellSpec &shell);

double max_offdiagonal(const Eigen::MatrixXcd &g);

/// Orthonormalized embedding of the 2l+1 compact basis states as lattice
/// vectors. Columns are the symmetric (Loewdin) orthogonalization of the raw
/// samples: V (V^dag V)^{-1/2}. Stored on the shell support only; every
/// column is zero off the shell.
struct TranslateIsometry {
    int ell = 0;
    Grid3 grid;
    ShellSpec shell;
    std::vector<long long> support;
    Eigen::MatrixXcd cols; // support.size() x (2l+1)

    int dim() const { return 2 * ell + 1; }
};

/// Requires gram max off-diagonal <= 0.3; throws NumericalError if the Gram
/// matrix is too ill-conditioned to invert its square root.
TranslateIsometry translate_isometry(int ell, const Grid3 &grid, const ShellSpec &shell);

/// encode = T * amps (exact isometry, norm preserved).
LatticeState encode(const CompactState &state, const TranslateIsometry &iso);

struct DecodeResult {
    CompactState state;   // T^dag * amps, renormalized
    double residual = 0;  // ||(I - T T^dag) amps||
    double norm_before_renorm = 0;
};

DecodeResult decode(const LatticeState &state, const TranslateIsometry &iso);

/// Binary lattice file: magic "LATS", u32 version, u32 n, i32 ell, then n^3
/// little-endian f64 re/im pairs in x-major order.
void save_lattice(const LatticeState &state, int ell, const std::string &path);

struct LoadedLattice {
    LatticeState state;
    int ell = 0;
    std::uint32_t version = 0;
};

LoadedLattice load_lattice(const std::string &path);

/// CSV rows x,y,z,re,im for inspection.
void export_lattice_csv(const LatticeState &state, const std::string &path);

} // namespace su2lat
