#include "su2lat/symm.hpp"

#include <bit>
#include <cmath>

namespace su2lat {

namespace {

long long binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    long long r = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

/// Binary Krawtchouk polynomial K_k(x; N) = sum_j (-1)^j C(x,j) C(N-x,k-j).
long long krawtchouk(int k, int x, int n) {
    long long acc = 0;
    for (int j = 0; j <= k; ++j) {
        long long term = binomial(x, j) * binomial(n - x, k - j);
        acc += (j & 1) ? -term : term;
    }
    return acc;
}

/// Angular momentum operator triple on a (two_j+1)-dimensional space.
struct SpinOps {
    Eigen::MatrixXcd jx, jy, jz;
};

SpinOps spin_ops(int two_j) {
    const int dim = two_j + 1;
    const double j = 0.5 * two_j;
    Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        double m = i - j;
        jz(i, i) = m;
        if (i + 1 < dim)
            jp(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    Eigen::MatrixXcd jm = jp.adjoint();
    return {0.5 * (jp + jm), cplx(0.0, -0.5) * (jp - jm), jz};
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    return out;
}

} // namespace

Eigen::VectorXcd dicke_state(int n_qubits, int weight) {
    if (n_qubits < 1 || n_qubits > 12)
        throw ValidationError("dicke_state: need 1 <= N <= 12");
    if (weight < 0 || weight > n_qubits)
        throw ValidationError("dicke_state: weight out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1LL << n_qubits);
    double amp = 1.0 / std::sqrt(double(binomial(n_qubits, weight)));
    for (long long x = 0; x < v.size(); ++x)
        if (std::popcount((unsigned long long)x) == weight)
            v(x) = amp;
    return v;
}

Eigen::MatrixXd hyper_hadamard(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 30)
        throw ValidationError("hyper_hadamard: need 1 <= N <= 30");
    const int dim = n_qubits + 1;
    const double scale = std::pow(2.0, -0.5 * n_qubits);
    Eigen::MatrixXd m(dim, dim);
    for (int hp = 0; hp < dim; ++hp)
        for (int h = 0; h < dim; ++h) {
            double denom =
                std::sqrt(double(binomial(n_qubits, h)) * double(binomial(n_qubits, hp)));
            m(hp, h) = scale * double(krawtchouk(hp, h, n_qubits)) / denom;
        }
    return m;
}

Eigen::MatrixXcd symmetric_restrict(const Eigen::Matrix2cd &u, int n_qubits) {
    if (n_qubits < 1 || n_qubits > 12)
        throw ValidationError("symmetric_restrict: need 1 <= N <= 12");
    if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("symmetric_restrict: U is not unitary within 1e-10");

    const int dim = n_qubits + 1;
    const long long full = 1LL << n_qubits;
    std::vector<Eigen::VectorXcd> basis(dim);
    for (int h = 0; h < dim; ++h)
        basis[h] = dicke_state(n_qubits, h);

    Eigen::MatrixXcd out(dim, dim);
    for (int h = 0; h < dim; ++h) {
        // U^(tensor N) |D_h>, one qubit at a time.
        Eigen::VectorXcd v = basis[h];
        for (int q = 0; q < n_qubits; ++q) {
            Eigen::VectorXcd next = Eigen::VectorXcd::Zero(full);
            const long long bit = 1LL << q;
            for (long long x = 0; x < full; ++x) {
                int b = (x & bit) ? 1 : 0;
                next(x & ~bit) += u(0, b) * v(x);
                next(x | bit) += u(1, b) * v(x);
            }
            v = std::move(next);
        }
        Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(full);
        for (int hp = 0; hp < dim; ++hp) {
            out(hp, h) = basis[hp].dot(v);
            proj += out(hp, h) * basis[hp];
        }
        if ((v - proj).norm() > 1e-12)
            throw NumericalError("symmetric_restrict: symmetric subspace not invariant");
    }
    return out;
}

double symmetric_vs_wigner(int n_qubits, const RotationSpec &rot) {
    Eigen::MatrixXcd a = symmetric_restrict(su2_element(rot), n_qubits);
    WignerMatrix d = wigner_oracle_2j(n_qubits, rot);
    // Alignment: weight h corresponds to m = N/2 - h, i.e. oracle index N - h.
    double dev = 0.0;
    for (int hp = 0; hp <= n_qubits; ++hp)
        for (int h = 0; h <= n_qubits; ++h)
            dev = std::max(dev,
                           std::abs(a(hp, h) - d.entries(n_qubits - hp, n_qubits - h)));
    return dev;
}

Eigen::VectorXcd add_translate(int big_m, int ell, int ellp) {
    if (ell < 0 || ellp < 0)
        throw ValidationError("add_translate: ell values must be nonnegative");
    if (std::abs(big_m) > ell + ellp)
        throw ValidationError("add_translate: |M| exceeds ell + ell', no valid splitting");
    const int dim = (2 * ell + 1) * (2 * ellp + 1);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    int count = 0;
    for (int m = -ell; m <= ell; ++m) {
        int mp = big_m - m;
        if (std::abs(mp) <= ellp) {
            v((m + ell) * (2 * ellp + 1) + (mp + ellp)) = 1.0;
            ++count;
        }
    }
    v /= std::sqrt(double(count));
    return v;
}

CGDecomposition cg_oracle(int two_ell, int two_ellp) {
    if (two_ell < 0 || two_ellp < 0 || two_ell > 12 || two_ellp > 12)
        throw ValidationError("cg_oracle: need 0 <= 2*ell <= 12 for both factors");

    SpinOps a = spin_ops(two_ell);
    SpinOps b = spin_ops(two_ellp);
    const int da = two_ell + 1, db = two_ellp + 1;
    Eigen::MatrixXcd ia = Eigen::MatrixXcd::Identity(da, da);
    Eigen::MatrixXcd ib = Eigen::MatrixXcd::Identity(db, db);

    Eigen::MatrixXcd jx = kron(a.jx, ib) + kron(ia, b.jx);
    Eigen::MatrixXcd jy = kron(a.jy, ib) + kron(ia, b.jy);
    Eigen::MatrixXcd jz = kron(a.jz, ib) + kron(ia, b.jz);
    Eigen::MatrixXcd j2 = jx * jx + jy * jy + jz * jz;
    Eigen::MatrixXcd jminus = (jx - cplx(0.0, 1.0) * jy);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(j2);

    CGDecomposition cg{two_ell, two_ellp, {}};
    int consumed = 0;
    for (int two_l = std::abs(two_ell - two_ellp); two_l <= two_ell + two_ellp; two_l += 2) {
        const double l = 0.5 * two_l;
        const double want = l * (l + 1.0);
        const int dim_l = two_l + 1;
        // Eigenvalues come back ascending, so each L block is contiguous.
        for (int i = 0; i < dim_l; ++i) {
            double got = es.eigenvalues()(consumed + i);
            if (std::abs(got - want) > 1e-8 * std::max(1.0, want))
                throw NumericalError("cg_oracle: eigenvalue grouping failed for L block");
        }
        Eigen::MatrixXcd sub = es.eigenvectors().middleCols(consumed, dim_l);
        consumed += dim_l;

        // Resolve M within the block by diagonalizing projected J_z.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esz(sub.adjoint() * jz * sub);
        Eigen::MatrixXcd cols = sub * esz.eigenvectors(); // M ascending
        for (int i = 0; i < dim_l; ++i) {
            double m_want = -l + i;
            if (std::abs(esz.eigenvalues()(i) - m_want) > 1e-8)
                throw NumericalError("cg_oracle: J_z eigenvalue grouping failed");
        }

        // Ladder positivity <L,M-1| J- |L,M> > 0, walking down from M = L.
        for (int i = dim_l - 1; i > 0; --i) {
            cplx overlap = cols.col(i - 1).dot(jminus * cols.col(i));
            if (std::abs(overlap) < 1e-12)
                throw NumericalError("cg_oracle: ladder overlap vanished");
            cols.col(i - 1) *= overlap / std::abs(overlap);
        }
        // Global phase: highest-weight component <l l; l' (L-l) | L L> real
        // positive (m = l, m' = L - l; always in range for valid L).
        int idx = two_ell * db + (two_l - two_ell + two_ellp) / 2;
        cplx pivot = cols(idx, dim_l - 1);
        if (std::abs(pivot) > 1e-12)
            cols *= std::conj(pivot) / std::abs(pivot);

        cg.blocks.push_back(CGBlock{two_l, std::move(cols)});
    }
    return cg;
}

} // namespace su2lat
