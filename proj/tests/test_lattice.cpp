#include <doctest.h>

#include <cstdio>

#include "su2lat/pipeline.hpp"
#include "su2lat/shear.hpp"

using namespace su2lat;

TEST_CASE("grid and shell validation") {
    CHECK_THROWS_AS(Grid3(48), ValidationError);
    CHECK_THROWS_AS(Grid3(4), ValidationError);
    CHECK_THROWS_AS(Grid3(512), ValidationError);
    CHECK(Grid3(64).center() == 32);
    CHECK(Grid3(8).sites() == 512);

    Grid3 g(32);
    CHECK_THROWS_AS((ShellSpec{1.0, 3.0}).validate(g), ValidationError);  // touches origin
    CHECK_THROWS_AS((ShellSpec{15.5, 3.0}).validate(g), ValidationError); // pokes out of n/2
    ShellSpec::defaults(g).validate(g);
}

TEST_CASE("flat index is x-major") {
    Grid3 g(8);
    CHECK(g.flat(0, 0, 1) == 1);
    CHECK(g.flat(0, 1, 0) == 8);
    CHECK(g.flat(1, 0, 0) == 64);
    auto c = g.coords(g.flat(3, 5, 7));
    CHECK(c[0] == 3);
    CHECK(c[1] == 5);
    CHECK(c[2] == 7);
}

TEST_CASE("sampled Y_00 is uniform and positive on the shell") {
    Grid3 g(32);
    ShellSpec shell = ShellSpec::defaults(g);
    LatticeState s = sample_ylm_state(0, 0, g, shell);
    auto sites = shell_sites(g, shell);
    double expect = 1.0 / std::sqrt(double(sites.size()));
    size_t nonzero = 0;
    for (const cplx &a : s.amps)
        if (a != cplx(0, 0)) {
            CHECK(std::abs(a - cplx(expect, 0.0)) < 1e-12);
            ++nonzero;
        }
    CHECK(nonzero == sites.size());
}

TEST_CASE("sampled states are normalized with support inside n/2 - 1") {
    Grid3 g(32);
    ShellSpec shell = ShellSpec::defaults(g);
    for (int ell : {1, 3})
        for (int m = -ell; m <= ell; ++m) {
            LatticeState s = sample_ylm_state(ell, m, g, shell);
            CHECK(std::abs(std::sqrt(norm_squared(s.amps)) - 1.0) < 1e-12);
            const int c = g.center();
            for (size_t i = 0; i < s.amps.size(); ++i)
                if (s.amps[i] != cplx(0, 0)) {
                    auto [x, y, z] = g.coords((long long)i);
                    double r = std::sqrt(double((x - c) * (x - c) + (y - c) * (y - c) +
                                                (z - c) * (z - c)));
                    CHECK(r < g.n / 2.0 - 1.0);
                }
        }
}

TEST_CASE("sampling errors") {
    Grid3 g(32);
    CHECK_THROWS_AS(sample_ylm_state(2, 3, g, ShellSpec::defaults(g)), ValidationError);
    // A hair-thin shell between lattice radii catches no sites.
    CHECK_THROWS_AS(sample_ylm_state(0, 0, g, (ShellSpec{10.45, 0.01})), ValidationError);
    // Tiny shell cannot meet the 20*(2l+1) resolution floor.
    CHECK_THROWS_AS(sample_ylm_state(6, 0, g, (ShellSpec{3.0, 1.0})), ValidationError);
}

TEST_CASE("quarter-turn equivariance of sampled states") {
    // The exact z quarter-turn |x,y,z> -> |-y,x,z> multiplies the sample by
    // e^{-i m pi/2} under the global active-rotation phase convention.
    Grid3 g(32);
    ShellSpec shell = ShellSpec::defaults(g);
    LatticePermutation quarter = rotation_90(g, Axis::Z, 1);
    for (int ell = 0; ell <= 6; ++ell)
        for (int m = -ell; m <= ell; ++m) {
            LatticeState s = sample_ylm_state(ell, m, g, shell);
            LatticeState turned = apply_permutation(s, quarter);
            cplx phase = std::exp(cplx(0.0, -m * kPi / 2));
            double dev = 0.0;
            for (size_t i = 0; i < s.amps.size(); ++i)
                dev = std::max(dev, std::abs(turned.amps[i] - phase * s.amps[i]));
            CHECK(dev < 1e-10);
        }
}

TEST_CASE("gram matrix basics") {
    Grid3 g(32);
    ShellSpec shell = ShellSpec::defaults(g);

    Eigen::MatrixXcd g0 = gram_matrix(0, g, shell);
    CHECK(g0.rows() == 1);
    CHECK(std::abs(g0(0, 0) - cplx(1, 0)) < 1e-14);

    Eigen::MatrixXcd g3 = gram_matrix(3, g, shell);
    CHECK((g3 - g3.adjoint()).cwiseAbs().maxCoeff() == 0.0); // Hermitian as computed
    for (int i = 0; i < g3.rows(); ++i)
        CHECK(std::abs(g3(i, i) - cplx(1, 0)) < 1e-14);
}

TEST_CASE("gram off-diagonal shrinks when the grid doubles") {
    double prev = 1.0;
    for (int n : {32, 64}) {
        Grid3 g(n);
        double off = max_offdiagonal(gram_matrix(4, g, ShellSpec::defaults(g)));
        CHECK(off < prev);
        prev = off;
    }
}

TEST_CASE("translate isometry is exactly orthonormal and close to the raw samples") {
    Grid3 g(64);
    ShellSpec shell = ShellSpec::defaults(g);
    TranslateIsometry iso = translate_isometry(3, g, shell);

    Eigen::MatrixXcd gram = iso.cols.adjoint() * iso.cols;
    CHECK((gram - Eigen::MatrixXcd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);

    // Loewdin columns stay within the Gram perturbation of the raw samples.
    Eigen::MatrixXcd G = gram_matrix(3, g, shell);
    double bound = (G - Eigen::MatrixXcd::Identity(7, 7)).norm();
    for (int m = -3; m <= 3; ++m) {
        LatticeState raw = sample_ylm_state(3, m, g, shell);
        Eigen::VectorXcd diff(iso.support.size());
        for (size_t i = 0; i < iso.support.size(); ++i)
            diff(i) = iso.cols(i, m + 3) - raw.amps[iso.support[i]];
        CHECK(diff.norm() <= bound);
    }
}

TEST_CASE("encode/decode round trip") {
    Grid3 g(32);
    TranslateIsometry iso = translate_isometry(2, g, ShellSpec::defaults(g));
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        CompactState s = CompactState::random(2, rng);
        LatticeState enc = encode(s, iso);
        CHECK(std::abs(std::sqrt(norm_squared(enc.amps)) - 1.0) < 1e-12);
        DecodeResult dec = decode(enc, iso);
        CHECK(dec.residual < 1e-12);
        CHECK(fidelity(s, dec.state) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("decode residual after a shear rotation shrinks with n") {
    std::mt19937_64 rng(13);
    CompactState s = CompactState::random(2, rng);
    double prev = 1.0;
    for (int n : {32, 64}) {
        Grid3 g(n);
        TranslateIsometry iso = translate_isometry(2, g, ShellSpec::defaults(g));
        LatticeState enc = encode(s, iso);
        LatticeState rotated = apply_permutation(enc, rotation_3d(g, Axis::Y, kPi / 4));
        DecodeResult dec = decode(rotated, iso);
        CHECK(dec.residual < prev);
        CHECK(dec.residual < 0.5);
        prev = dec.residual;
    }
}

TEST_CASE("dimension mismatches are rejected") {
    Grid3 g(32);
    TranslateIsometry iso = translate_isometry(1, g, ShellSpec::defaults(g));
    std::mt19937_64 rng(3);
    CHECK_THROWS_AS(encode(CompactState::random(2, rng), iso), ValidationError);
    CHECK_THROWS_AS(decode(LatticeState::zero(Grid3(16)), iso), ValidationError);
}

TEST_CASE("lattice binary file round trip") {
    Grid3 g(16);
    ShellSpec shell{4.0, 2.0};
    LatticeState s = sample_ylm_state(1, 1, g, shell);
    std::string path = "lattice_roundtrip.lats";
    save_lattice(s, 1, path);
    LoadedLattice loaded = load_lattice(path);
    CHECK(loaded.ell == 1);
    CHECK(loaded.version == 1);
    CHECK(loaded.state.grid.n == 16);
    for (size_t i = 0; i < s.amps.size(); ++i)
        CHECK(loaded.state.amps[i] == s.amps[i]); // bit-exact
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_lattice("does_not_exist.lats"), ValidationError);
}

TEST_CASE("csv export writes one row per site") {
    Grid3 g(8);
    LatticeState s = LatticeState::zero(g);
    s.amps[g.flat(1, 2, 3)] = cplx(0.5, -0.25);
    std::string path = "lattice_export.csv";
    export_lattice_csv(s, path);
    std::FILE *f = std::fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    int lines = 0;
    char buf[256];
    bool found = false;
    while (std::fgets(buf, sizeof buf, f)) {
        ++lines;
        if (std::string(buf).find("1,2,3,0.5,-0.25") == 0)
            found = true;
    }
    std::fclose(f);
    CHECK(lines == 512 + 1);
    CHECK(found);
    std::remove(path.c_str());
}
