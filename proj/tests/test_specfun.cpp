#include <doctest.h>

#include "oracles.hpp"
#include "su2lat/specfun.hpp"

using namespace su2lat;

TEST_CASE("normalized associated Legendre pinned values") {
    // Y_00 is constant 1/sqrt(4 pi) regardless of x.
    CHECK(assoc_legendre_norm(0, 0, 0.3) == doctest::Approx(0.28209479177387814).epsilon(1e-12));
    // Computed with the Rodrigues brute force: sqrt(3/(4 pi)) at x = 1.
    CHECK(assoc_legendre_norm(1, 0, 1.0) == doctest::Approx(0.48860251190291992).epsilon(1e-12));

    CHECK_THROWS_AS(assoc_legendre_norm(2, 3, 0.5), ValidationError);
    CHECK_THROWS_AS(assoc_legendre_norm(3, 1, 1.5), ValidationError);
}

TEST_CASE("Legendre recurrence matches the Rodrigues brute force") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    for (int ell = 0; ell <= 10; ++ell)
        for (int m = 0; m <= ell; ++m)
            for (int rep = 0; rep < 5; ++rep) {
                double x = ux(rng);
                double got = assoc_legendre_norm(ell, m, x);
                double want = testing::legendre_norm_bruteforce(ell, m, x);
                CHECK(got == doctest::Approx(want).epsilon(1e-11));
            }
}

TEST_CASE("Legendre stays finite up to ell = 64") {
    for (int ell : {32, 50, 64})
        for (int m : {0, 1, ell / 2, ell}) {
            double v = assoc_legendre_norm(ell, m, 0.37);
            CHECK(std::isfinite(v));
        }
}

TEST_CASE("ylm pinned values and phase factorization") {
    for (double theta : {0.2, 1.1, 2.9})
        for (double phi : {0.0, 1.7, -2.0})
            CHECK(std::abs(ylm(0, 0, theta, phi) - cplx(0.28209479177387814, 0.0)) < 1e-14);

    // Rodrigues brute force with Condon-Shortley: -sqrt(3/(8 pi)).
    CHECK(std::abs(ylm(1, 1, kPi / 2, 0.0) - cplx(-0.34549414947133547, 0.0)) < 1e-12);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int rep = 0; rep < 20; ++rep) {
        int ell = rep % 6;
        int m = ell - (rep % (2 * ell + 1));
        double theta = u(rng), phi = 2.0 * u(rng);
        CHECK(std::abs(ylm(ell, m, theta, phi + kPi / 2)) ==
              doctest::Approx(std::abs(ylm(ell, m, theta, phi))).epsilon(1e-12));
        CHECK(std::abs(ylm(ell, m, theta, phi) - testing::ylm_bruteforce(ell, m, theta, phi)) <
              1e-11);
    }
}

TEST_CASE("ylm addition theorem") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
    for (int ell : {1, 5, 12, 20}) {
        double theta = u(rng), phi = 2.0 * u(rng);
        KahanSum sum;
        for (int m = -ell; m <= ell; ++m)
            sum.add(std::norm(ylm(ell, m, theta, phi)));
        CHECK(sum.value() == doctest::Approx((2.0 * ell + 1.0) / (4.0 * kPi)).epsilon(1e-10));
    }
}

TEST_CASE("wigner oracle identity and beta = pi") {
    WignerMatrix id = wigner_oracle(4, RotationSpec::identity());
    CHECK((id.entries - Eigen::MatrixXcd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);

    // d(pi) at ell = 1 against an independent Taylor exponential of -i pi Jy.
    WignerMatrix d = wigner_oracle(1, RotationSpec::euler(0.0, kPi, 0.0));
    CHECK(std::abs(d.entries(1, 1) - cplx(-1.0, 0.0)) < 1e-12);
    Eigen::MatrixXcd jy(3, 3);
    jy.setZero();
    double c = std::sqrt(2.0);
    jy(1, 0) = cplx(0.0, -0.5) * c;
    jy(0, 1) = cplx(0.0, 0.5) * c;
    jy(2, 1) = cplx(0.0, -0.5) * c;
    jy(1, 2) = cplx(0.0, 0.5) * c;
    Eigen::MatrixXcd want = testing::expm_taylor(cplx(0.0, -kPi) * jy);
    CHECK((d.entries - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("wigner oracle is unitary and a representation") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 100; ++rep) {
        int ell = rep % 11;
        RotationSpec r1 = random_rotation(rng);
        RotationSpec r2 = random_rotation(rng);
        WignerMatrix d1 = wigner_oracle(ell, r1);
        WignerMatrix d2 = wigner_oracle(ell, r2);

        Eigen::MatrixXcd unit = d1.entries.adjoint() * d1.entries;
        CHECK((unit - Eigen::MatrixXcd::Identity(d1.dim(), d1.dim())).cwiseAbs().maxCoeff() <
              1e-10);

        RotationSpec both = RotationSpec::from_matrix(r1.matrix() * r2.matrix());
        WignerMatrix dboth = wigner_oracle(ell, both);
        CHECK((d1.entries * d2.entries - dboth.entries).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("Peter-Weyl orthogonality smoke check") {
    std::mt19937_64 rng(101);
    const int ell = 2;
    KahanSum acc;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        WignerMatrix d = wigner_oracle(ell, random_rotation(rng));
        acc.add(std::norm(d.entries(3, 1)));
    }
    double avg = (2.0 * ell + 1.0) * acc.value() / samples;
    CHECK(avg == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("half-integer oracle stays unitary") {
    std::mt19937_64 rng(31);
    for (int two_ell : {1, 3, 7}) {
        WignerMatrix d = wigner_oracle_2j(two_ell, random_rotation(rng));
        CHECK((d.entries.adjoint() * d.entries -
               Eigen::MatrixXcd::Identity(d.dim(), d.dim()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
    }
}

TEST_CASE("exact_rotate conventions") {
    std::mt19937_64 rng(41);
    CompactState s = CompactState::random(3, rng);

    SUBCASE("z-rotation is the diagonal e^{-im phi}") {
        double phi = 0.83;
        CompactState r = exact_rotate(s, RotationSpec::euler(phi, 0.0, 0.0));
        for (int m = -3; m <= 3; ++m)
            CHECK(std::abs(r.amp(m) - s.amp(m) * std::exp(cplx(0.0, -m * phi))) < 1e-13);
    }

    SUBCASE("identity leaves the state untouched") {
        CompactState r = exact_rotate(s, RotationSpec::identity());
        CHECK((r.amps - s.amps).norm() < 1e-12);
    }

    SUBCASE("rotate then inverse returns the state") {
        RotationSpec rot = random_rotation(rng);
        RotationSpec inv = RotationSpec::euler(-rot.gamma, -rot.beta, -rot.alpha);
        CompactState r = exact_rotate(exact_rotate(s, rot), inv);
        CHECK((r.amps - s.amps).norm() < 1e-10);
    }

    SUBCASE("norm is preserved") {
        CompactState r = exact_rotate(s, random_rotation(rng));
        CHECK(std::abs(r.amps.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("rotation spec validation and conversions") {
    CHECK_THROWS_AS(RotationSpec::euler(std::nan(""), 0, 0), ValidationError);
    CHECK_THROWS_AS(RotationSpec::axis_angle({1.0, 0.5, 0.0}, 1.0), ValidationError);

    // Axis-angle z equals the Euler z-rotation.
    RotationSpec rz = RotationSpec::axis_angle({0.0, 0.0, 1.0}, 0.7);
    CHECK((rz.matrix() - RotationSpec::euler(0.7, 0.0, 0.0).matrix()).cwiseAbs().maxCoeff() <
          1e-12);

    std::mt19937_64 rng(59);
    for (int rep = 0; rep < 50; ++rep) {
        RotationSpec r = random_rotation(rng);
        RotationSpec back = RotationSpec::from_matrix(r.matrix());
        CHECK((back.matrix() - r.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("compact state invariants") {
    CHECK_THROWS_AS(CompactState::from_amps(1, Eigen::VectorXcd::Zero(3)), ValidationError);
    CHECK_THROWS_AS(CompactState::from_amps(1, Eigen::VectorXcd::Ones(2)), ValidationError);
    Eigen::VectorXcd v(3);
    v << 0, 1, 0;
    CompactState s = CompactState::from_amps(1, v);
    CHECK(s.amp(0) == cplx(1.0, 0.0));
}
