#include "su2lat/lattice.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace su2lat {

Grid3::Grid3(int n_sites) : n(n_sites) {
    if (n < 8 || n > 256 || !is_power_of_two(n))
        throw ValidationError("Grid3: n must be a power of two in [8, 256], got " +
                              std::to_string(n));
}

void ShellSpec::validate(const Grid3 &grid) const {
    if (!(width > 0.0) || !std::isfinite(r0) || !std::isfinite(width))
        throw ValidationError("ShellSpec: r0 and width must be finite, width > 0");
    if (!(r0 - 0.5 * width > 0.0))
        throw ValidationError("ShellSpec: shell must exclude the origin (r0 - width/2 > 0)");
    if (!(r0 + 0.5 * width < 0.5 * grid.n))
        throw ValidationError("ShellSpec: shell must fit inside the grid (r0 + width/2 < n/2)");
}

std::vector<long long> shell_sites(const Grid3 &grid, const ShellSpec &shell) {
    shell.validate(grid);
    std::vector<long long> sites;
    const int c = grid.center();
    const double rmax = shell.r0 + 0.5 * shell.width;
    const double rmax2 = rmax * rmax;
    const double rmin = shell.r0 - 0.5 * shell.width;
    const double rmin2 = rmin * rmin;
    for (int x = 0; x < grid.n; ++x) {
        double px = x - c;
        for (int y = 0; y < grid.n; ++y) {
            double py = y - c;
            double pxy2 = px * px + py * py;
            if (pxy2 > rmax2)
                continue;
            for (int z = 0; z < grid.n; ++z) {
                double pz = z - c;
                double r2 = pxy2 + pz * pz;
                if (r2 >= rmin2 && r2 <= rmax2)
                    sites.push_back(grid.flat(x, y, z));
            }
        }
    }
    return sites;
}

namespace {

/// theta, phi of a site's physical coordinates.
void site_angles(const Grid3 &grid, long long idx, double &theta, double &phi) {
    auto [x, y, z] = grid.coords(idx);
    const int c = grid.center();
    double px = x - c, py = y - c, pz = z - c;
    double r = std::sqrt(px * px + py * py + pz * pz);
    theta = std::acos(std::clamp(pz / r, -1.0, 1.0));
    phi = std::atan2(py, px);
}

void check_resolution(int ell, size_t n_shell_sites) {
    if (n_shell_sites == 0)
        throw ValidationError("shell too thin: contains no lattice sites");
    if (n_shell_sites < size_t(20) * (2 * ell + 1))
        throw ValidationError("resolution: shell holds " + std::to_string(n_shell_sites) +
                              " sites, need at least 20*(2*ell+1) = " +
                              std::to_string(20 * (2 * ell + 1)));
}

/// Raw sampled Y_lm values on the shell support, normalized, one column per m.
Eigen::MatrixXcd raw_sample_columns(int ell, const std::vector<long long> &sites,
                                    const Grid3 &grid) {
    Eigen::MatrixXcd v(sites.size(), 2 * ell + 1);
    for (size_t i = 0; i < sites.size(); ++i) {
        double theta, phi;
        site_angles(grid, sites[i], theta, phi);
        for (int m = -ell; m <= ell; ++m)
            v(i, m + ell) = ylm(ell, m, theta, phi);
    }
    for (int col = 0; col < v.cols(); ++col) {
        KahanSum acc;
        for (Eigen::Index i = 0; i < v.rows(); ++i)
            acc.add(std::norm(v(i, col)));
        v.col(col) /= std::sqrt(acc.value());
    }
    return v;
}

} // namespace

LatticeState sample_ylm_state(int ell, int m, const Grid3 &grid, const ShellSpec &shell) {
    if (std::abs(m) > ell)
        throw ValidationError("sample_ylm_state: |m| must not exceed ell");
    auto sites = shell_sites(grid, shell);
    check_resolution(ell, sites.size());

    LatticeState out = LatticeState::zero(grid);
    KahanSum acc;
    for (long long idx : sites) {
        double theta, phi;
        site_angles(grid, idx, theta, phi);
        cplx a = ylm(ell, m, theta, phi);
        out.amps[idx] = a;
        acc.add(std::norm(a));
    }
    double nrm = std::sqrt(acc.value());
    if (!(nrm > 0.0))
        throw NumericalError("sample_ylm_state: sampled state has zero norm");
    for (long long idx : sites)
        out.amps[idx] /= nrm;
    return out;
}

Eigen::MatrixXcd gram_matrix(int ell, const Grid3 &grid, const ShellSpec &shell) {
    auto sites = shell_sites(grid, shell);
    check_resolution(ell, sites.size());
    Eigen::MatrixXcd v = raw_sample_columns(ell, sites, grid);
    const int dim = 2 * ell + 1;
    Eigen::MatrixXcd g(dim, dim);
    for (int a = 0; a < dim; ++a) {
        g(a, a) = 1.0;
        for (int b = a + 1; b < dim; ++b) {
            KahanSum re, im;
            for (Eigen::Index i = 0; i < v.rows(); ++i) {
                cplx t = std::conj(v(i, a)) * v(i, b);
                re.add(t.real());
                im.add(t.imag());
            }
            g(a, b) = cplx(re.value(), im.value());
            g(b, a) = std::conj(g(a, b));
        }
    }
    return g;
}

double max_offdiagonal(const Eigen::MatrixXcd &g) {
    double mx = 0.0;
    for (Eigen::Index a = 0; a < g.rows(); ++a)
        for (Eigen::Index b = 0; b < g.cols(); ++b)
            if (a != b)
                mx = std::max(mx, std::abs(g(a, b)));
    return mx;
}

TranslateIsometry translate_isometry(int ell, const Grid3 &grid, const ShellSpec &shell) {
    auto sites = shell_sites(grid, shell);
    check_resolution(ell, sites.size());
    Eigen::MatrixXcd v = raw_sample_columns(ell, sites, grid);
    Eigen::MatrixXcd g = v.adjoint() * v;

    if (max_offdiagonal(g) > 0.3)
        throw NumericalError("translate_isometry: Gram max off-diagonal exceeds 0.3; "
                             "grid too coarse for this ell/shell");

    // Loewdin: T = V G^{-1/2}, the closest orthonormal frame to V.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    if (es.eigenvalues().minCoeff() < 1e-6)
        throw NumericalError("translate_isometry: Gram matrix nearly singular");
    Eigen::VectorXd inv_sqrt = es.eigenvalues().array().rsqrt();
    Eigen::MatrixXcd g_inv_sqrt =
        es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();

    return TranslateIsometry{ell, grid, shell, std::move(sites), v * g_inv_sqrt};
}

LatticeState encode(const CompactState &state, const TranslateIsometry &iso) {
    if (state.ell != iso.ell)
        throw ValidationError("encode: ell mismatch");
    LatticeState out = LatticeState::zero(iso.grid);
    Eigen::VectorXcd v = iso.cols * state.amps;
    for (size_t i = 0; i < iso.support.size(); ++i)
        out.amps[iso.support[i]] = v(i);
    return out;
}

DecodeResult decode(const LatticeState &state, const TranslateIsometry &iso) {
    if (!(state.grid == iso.grid))
        throw ValidationError("decode: grid mismatch");
    Eigen::VectorXcd gathered(iso.support.size());
    for (size_t i = 0; i < iso.support.size(); ++i)
        gathered(i) = state.amps[iso.support[i]];
    Eigen::VectorXcd c = iso.cols.adjoint() * gathered;

    // ||(I - T T^dag) amps|| accumulated directly (the norm-difference form
    // loses everything to cancellation when the residual is tiny).
    KahanSum res2;
    Eigen::VectorXcd in_range = iso.cols * c;
    for (size_t i = 0; i < iso.support.size(); ++i)
        res2.add(std::norm(gathered(i) - in_range(i)));
    size_t si = 0;
    const long long nsites = state.grid.sites();
    for (long long i = 0; i < nsites; ++i) {
        if (si < iso.support.size() && iso.support[si] == i) {
            ++si;
            continue;
        }
        res2.add(std::norm(state.amps[i]));
    }

    double nrm = c.norm();
    if (!(nrm > 1e-15))
        throw NumericalError("decode: state has no overlap with the isometry range");

    DecodeResult res;
    res.residual = std::sqrt(std::max(0.0, res2.value()));
    res.norm_before_renorm = nrm;
    res.state = CompactState{iso.ell, c / nrm};
    return res;
}

namespace {

void write_le_f64(std::ofstream &out, double v) {
    static_assert(std::endian::native == std::endian::little,
                  "lattice file I/O assumes a little-endian host");
    out.write(reinterpret_cast<const char *>(&v), sizeof(v));
}

void write_le_u32(std::ofstream &out, std::uint32_t v) {
    out.write(reinterpret_cast<const char *>(&v), sizeof(v));
}

} // namespace

void save_lattice(const LatticeState &state, int ell, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("save_lattice: cannot open " + path);
    out.write("LATS", 4);
    write_le_u32(out, 1u);
    write_le_u32(out, std::uint32_t(state.grid.n));
    std::int32_t ell32 = ell;
    out.write(reinterpret_cast<const char *>(&ell32), sizeof(ell32));
    for (const cplx &a : state.amps) {
        write_le_f64(out, a.real());
        write_le_f64(out, a.imag());
    }
    if (!out)
        throw NumericalError("save_lattice: write failed for " + path);
}

LoadedLattice load_lattice(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("load_lattice: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "LATS", 4) != 0)
        throw ValidationError("load_lattice: bad magic in " + path);
    std::uint32_t version = 0, n = 0;
    in.read(reinterpret_cast<char *>(&version), 4);
    in.read(reinterpret_cast<char *>(&n), 4);
    std::int32_t ell = 0;
    in.read(reinterpret_cast<char *>(&ell), 4);
    if (!in || version != 1u)
        throw ValidationError("load_lattice: unsupported version");
    LoadedLattice loaded{LatticeState::zero(Grid3(int(n))), int(ell), version};
    for (cplx &a : loaded.state.amps) {
        double re, im;
        in.read(reinterpret_cast<char *>(&re), 8);
        in.read(reinterpret_cast<char *>(&im), 8);
        a = cplx(re, im);
    }
    if (!in)
        throw ValidationError("load_lattice: truncated file " + path);
    return loaded;
}

void export_lattice_csv(const LatticeState &state, const std::string &path) {
    std::FILE *f = std::fopen(path.c_str(), "w");
    if (!f)
        throw ValidationError("export_lattice_csv: cannot open " + path);
    std::fputs("x,y,z,re,im\n", f);
    const int n = state.grid.n;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const cplx &a = state.amps[state.grid.flat(x, y, z)];
                std::fprintf(f, "%d,%d,%d,%.17g,%.17g\n", x, y, z, a.real(), a.imag());
            }
    std::fclose(f);
}

} // namespace su2lat
