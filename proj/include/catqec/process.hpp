#pragma once

#include <Eigen/Dense>
#include <vector>

#include "catqec/pauli.hpp"

namespace catqec {

// Process-matrix utilities on one or two qubits. A channel is held as its
// superoperator in the column-major vec convention, vec(A rho B) =
// (B^T (x) A) vec(rho). Pauli indices follow the Pauli enum (I,X,Z,Y);
// two-qubit index = 4*a + b with qubit a in the left kron factor.

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXcd pauli_dense(Pauli p);
// n_qubits in {1,2}; idx packs qubit a in the high digit
MatrixXcd pauli_dense(int idx, int n_qubits);

// symplectic overlap: 1 if P_i and P_j anticommute
int pauli_overlap(int i, int j, int n_qubits);

struct Superop {
    int nq = 1;
    MatrixXcd s; // 4^nq x 4^nq

    int dim() const { return 1 << nq; }
    MatrixXcd apply(const MatrixXcd& rho) const;
};

Superop superop_identity(int nq);
Superop superop_from_unitary(const MatrixXcd& u);
Superop superop_from_ptm(const MatrixXd& r, int nq);
// late(early(rho))
Superop chain(const Superop& late, const Superop& early);
// one-qubit channels on qubits a and b of a two-qubit system
Superop superop_kron(const Superop& a, const Superop& b);

// R(i,j) = tr(P_i E(P_j)) / 2^nq; real for Hermiticity-preserving maps
MatrixXd ptm(const Superop& e);
// chi in the Pauli basis: E(rho) = sum_mn chi(m,n) P_m rho P_n
MatrixXcd chi_matrix(const Superop& e);
// Choi matrix sum_ij |i><j| (x) E(|i><j|); CP iff PSD
MatrixXcd choi_matrix(const Superop& e);

// twirled Pauli-error probabilities (the chi diagonal), from the PTM diagonal
// by the Walsh transform over commutation signs
VectorXd twirl_probs(const MatrixXd& r, int nq);
Superop twirl(const Superop& e);

// 1 - tr(R_ideal^T R) / 4^nq, the total error probability of the twirled
// composition E o U^-1
double infidelity(const Superop& e, const MatrixXcd& u_ideal);
double infidelity(const MatrixXd& r, const MatrixXd& r_ideal, int nq);

// ratio of dephasing weight (IZ, ZI, ZZ) to the other twelve Pauli errors
double bias_from_probs(const VectorXd& p);

// most negative Choi eigenvalue, clipped at zero (CP violation measure)
double cp_defect(const Superop& e);
// max |tr(E(P_j)) - tr(P_j)| over the basis (trace-preservation defect)
double tp_defect(const Superop& e);

} // namespace catqec
