#include "catqec/process.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace catqec {

using cplx = std::complex<double>;

MatrixXcd pauli_dense(Pauli p) {
    MatrixXcd m(2, 2);
    const cplx i(0, 1);
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
        case Pauli::Y: m << 0, -i, i, 0; break;
    }
    return m;
}

static MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); i++)
        for (int j = 0; j < a.cols(); j++)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

MatrixXcd pauli_dense(int idx, int n_qubits) {
    if (n_qubits == 1) return pauli_dense(Pauli(idx));
    return kron(pauli_dense(Pauli(idx >> 2)), pauli_dense(Pauli(idx & 3)));
}

int pauli_overlap(int i, int j, int n_qubits) {
    int bit = 0;
    for (int q = 0; q < n_qubits; q++) {
        Pauli a = Pauli((i >> (2 * (n_qubits - 1 - q))) & 3);
        Pauli b = Pauli((j >> (2 * (n_qubits - 1 - q))) & 3);
        bit ^= (has_x(a) && has_z(b)) ^ (has_z(a) && has_x(b));
    }
    return bit;
}

MatrixXcd Superop::apply(const MatrixXcd& rho) const {
    int d = dim();
    Eigen::Map<const Eigen::VectorXcd> v(rho.data(), d * d);
    Eigen::VectorXcd w = s * v;
    return Eigen::Map<const MatrixXcd>(w.data(), d, d);
}

Superop superop_identity(int nq) {
    int d = 1 << nq;
    return {nq, MatrixXcd::Identity(d * d, d * d)};
}

Superop superop_from_unitary(const MatrixXcd& u) {
    int d = int(u.rows());
    int nq = d == 2 ? 1 : 2;
    return {nq, kron(u.conjugate(), u)};
}

Superop chain(const Superop& late, const Superop& early) {
    if (late.nq != early.nq) throw std::invalid_argument("superop size mismatch");
    return {late.nq, late.s * early.s};
}

Superop superop_kron(const Superop& a, const Superop& b) {
    // vec index of the two-qubit system factorizes as
    // (col_a col_b, row_a row_b); reorder the plain kron accordingly
    MatrixXcd big = kron(a.s, b.s);
    MatrixXcd out(16, 16);
    auto ix = [](int ra, int ca, int rb, int cb) {
        int row = 2 * ra + rb, col = 2 * ca + cb;
        return col * 4 + row;
    };
    auto kx = [](int ra, int ca, int rb, int cb) {
        return (ca * 2 + ra) * 4 + (cb * 2 + rb);
    };
    for (int ra = 0; ra < 2; ra++)
        for (int ca = 0; ca < 2; ca++)
            for (int rb = 0; rb < 2; rb++)
                for (int cb = 0; cb < 2; cb++)
                    for (int ra2 = 0; ra2 < 2; ra2++)
                        for (int ca2 = 0; ca2 < 2; ca2++)
                            for (int rb2 = 0; rb2 < 2; rb2++)
                                for (int cb2 = 0; cb2 < 2; cb2++)
                                    out(ix(ra, ca, rb, cb), ix(ra2, ca2, rb2, cb2)) =
                                        big(kx(ra, ca, rb, cb), kx(ra2, ca2, rb2, cb2));
    return {2, out};
}

MatrixXd ptm(const Superop& e) {
    int n = 1 << (2 * e.nq);
    int d = e.dim();
    MatrixXd r(n, n);
    std::vector<MatrixXcd> basis(n);
    for (int i = 0; i < n; i++) basis[i] = pauli_dense(i, e.nq);
    for (int j = 0; j < n; j++) {
        MatrixXcd out = e.apply(basis[j]);
        for (int i = 0; i < n; i++)
            r(i, j) = (basis[i].adjoint() * out).trace().real() / d;
    }
    return r;
}

Superop superop_from_ptm(const MatrixXd& r, int nq) {
    int n = 1 << (2 * nq);
    int d = 1 << nq;
    // E(rho) = sum_ij R_ij P_i tr(P_j rho) / 2^nq
    MatrixXcd s = MatrixXcd::Zero(d * d, d * d);
    for (int i = 0; i < n; i++) {
        MatrixXcd pi = pauli_dense(i, nq);
        Eigen::Map<Eigen::VectorXcd> vi(pi.data(), d * d);
        for (int j = 0; j < n; j++) {
            if (r(i, j) == 0.0) continue;
            MatrixXcd pj = pauli_dense(j, nq);
            Eigen::Map<Eigen::VectorXcd> vj(pj.data(), d * d);
            s += (r(i, j) / d) * vi * vj.transpose().conjugate();
        }
    }
    return {nq, s};
}

MatrixXcd chi_matrix(const Superop& e) {
    int n = 1 << (2 * e.nq);
    int d = e.dim();
    // S = sum_mn chi_mn (P_n^T (x) P_m) and the kron factors are
    // Hilbert-Schmidt orthogonal, so chi reads off by projection
    MatrixXcd chi(n, n);
    for (int m = 0; m < n; m++)
        for (int nn = 0; nn < n; nn++) {
            MatrixXcd g = kron(pauli_dense(nn, e.nq).transpose(), pauli_dense(m, e.nq));
            chi(m, nn) = (g.adjoint() * e.s).trace() / double(d * d);
        }
    return chi;
}

MatrixXcd choi_matrix(const Superop& e) {
    int d = e.dim();
    MatrixXcd c = MatrixXcd::Zero(d * d, d * d);
    MatrixXcd unit = MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; i++)
        for (int j = 0; j < d; j++) {
            unit.setZero();
            unit(i, j) = 1.0;
            MatrixXcd out = e.apply(unit);
            c.block(i * d, j * d, d, d) = out;
        }
    return c;
}

VectorXd twirl_probs(const MatrixXd& r, int nq) {
    int n = 1 << (2 * nq);
    VectorXd p = VectorXd::Zero(n);
    for (int m = 0; m < n; m++) {
        double acc = 0;
        for (int j = 0; j < n; j++)
            acc += (pauli_overlap(m, j, nq) ? -1.0 : 1.0) * r(j, j);
        p(m) = acc / n;
    }
    return p;
}

Superop twirl(const Superop& e) {
    MatrixXd r = ptm(e);
    MatrixXd rd = MatrixXd::Zero(r.rows(), r.cols());
    rd.diagonal() = r.diagonal();
    return superop_from_ptm(rd, e.nq);
}

double infidelity(const MatrixXd& r, const MatrixXd& r_ideal, int nq) {
    int n = 1 << (2 * nq);
    return 1.0 - (r_ideal.transpose() * r).trace() / n;
}

double infidelity(const Superop& e, const MatrixXcd& u_ideal) {
    return infidelity(ptm(e), ptm(superop_from_unitary(u_ideal)), e.nq);
}

double bias_from_probs(const VectorXd& p) {
    if (p.size() != 16) throw std::invalid_argument("bias needs a two-qubit channel");
    int iz = int(Pauli::Z);
    double zpart = p(iz) + p(4 * iz) + p(4 * iz + iz);
    double rest = 0;
    for (int k = 1; k < 16; k++)
        if (k != iz && k != 4 * iz && k != 4 * iz + iz) rest += p(k);
    return zpart / rest;
}

double cp_defect(const Superop& e) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(choi_matrix(e));
    double lo = es.eigenvalues().minCoeff();
    return lo < 0 ? -lo : 0.0;
}

double tp_defect(const Superop& e) {
    int n = 1 << (2 * e.nq);
    double worst = 0;
    for (int j = 0; j < n; j++) {
        MatrixXcd out = e.apply(pauli_dense(j, e.nq));
        double want = j == 0 ? e.dim() : 0.0;
        worst = std::max(worst, std::abs(out.trace().real() - want) +
                                    std::abs(out.trace().imag()));
    }
    return worst;
}

} // namespace catqec
