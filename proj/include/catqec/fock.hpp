#pragma once

// Truncated Fock-space operators and cat-qubit states. Everything lives in
// an nmax-dimensional single-mode space; two-mode objects are built with
// spkron. The logical frame follows the biased-noise convention: the two
// cat states are the X eigenstates, so |0/1> = (|C+> +- |C->)/sqrt(2) are
// the approximately-coherent computational states.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>

namespace catqec {

using SpMat = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

SpMat destroy(int nmax);
SpMat create(int nmax);
SpMat number(int nmax);
SpMat fock_identity(int nmax);
SpMat spkron(const SpMat& a, const SpMat& b);

// normalized within the truncated space
VectorXcd coherent(double alpha, int nmax);
// parity +1 -> even cat |C+>, -1 -> odd cat |C->
VectorXcd cat_state(double alpha, int parity, int nmax);

// r = N+/N- = sqrt((1 - e^{-2 a^2}) / (1 + e^{-2 a^2})), so a|C+> = alpha r |C->
double cat_ratio(double alpha);

// Kerr-cat Hamiltonian -K a^t2 a^2 + K alpha^2 (a^t2 + a^2); both cat states are
// degenerate eigenstates with eigenvalue K alpha^4
SpMat kerr_cat_hamiltonian(double kerr, double alpha, int nmax);

struct CatFrame {
    int nmax = 0;
    double alpha = 0;
    VectorXcd cat_plus, cat_minus;
    MatrixXcd v; // nmax x 2 isometry, columns are logical |0>, |1>

    static CatFrame make(double alpha, int nmax);

    // project a full-space density matrix to the 2x2 logical block
    MatrixXcd qubit(const MatrixXcd& rho) const;
    double leakage(const MatrixXcd& rho) const;
    // embed a logical operator into the full space, v op v^t
    MatrixXcd embed(const MatrixXcd& op) const;
};

} // namespace catqec
