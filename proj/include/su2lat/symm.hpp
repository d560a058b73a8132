#pragma once

#include <Eigen/Dense>

#include "su2lat/specfun.hpp"

namespace su2lat {

/// Basis of the permutation-invariant subspace of N qubits: one normalized
/// uniform superposition per Hamming weight h = 0..N, dimension N+1.
struct SymmetricBasis {
    int n_qubits = 0;
    int dim() const { return n_qubits + 1; }
};

/// Uniform superposition of all N-bit strings with Hamming weight h, as a
/// dense 2^N vector. Brute-force helper for the restriction oracle (N <= 12).
Eigen::VectorXcd dicke_state(int n_qubits, int weight);

/// Restriction of H tensor N to the symmetric subspace, from Krawtchouk
/// combinatorics: entry (h',h) = 2^{-N/2} K_{h'}(h;N) / sqrt(C(N,h) C(N,h')).
/// Real, symmetric, involutory, unitary. 1 <= N <= 30.
Eigen::MatrixXd hyper_hadamard(int n_qubits);

/// Brute-force restriction of U tensor N to the symmetric subspace.
/// Requires U unitary within 1e-10 and N <= 12; verifies the subspace is
/// invariant (leakage <= 1e-12).
Eigen::MatrixXcd symmetric_restrict(const Eigen::Matrix2cd &u, int n_qubits);

/// Max entrywise deviation between symmetric_restrict(SU(2) element) and the
/// spin-N/2 oracle after the basis alignment h <-> m = N/2 - h.
double symmetric_vs_wigner(int n_qubits, const RotationSpec &rot);

/// |M> -> c * sum_m |m, m' = M - m>: uniform superposition over all valid
/// splittings, on the product space index (m+ell)*(2*ellp+1) + (m'+ellp).
Eigen::VectorXcd add_translate(int big_m, int ell, int ellp);

struct CGBlock {
    int two_l = 0;             // doubled total angular momentum L
    Eigen::MatrixXcd isometry; // (2l+1)(2l'+1) x (2L+1), columns M = -L..L
};

/// Exact Clebsch-Gordan decomposition of ell (x) ell' (doubled-ell inputs,
/// each <= 12): simultaneous diagonalization of total J^2 and J_z, one block
/// per L = |l-l'|..l+l', phases fixed by ladder positivity and a positive
/// highest-weight component.
struct CGDecomposition {
    int two_ell = 0;
    int two_ellp = 0;
    std::vector<CGBlock> blocks; // ascending L
};

CGDecomposition cg_oracle(int two_ell, int two_ellp);

} // namespace su2lat
