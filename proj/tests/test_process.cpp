#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "catqec/process.hpp"
#include "catqec/pauli.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

using namespace catqec;
using cplx = std::complex<double>;

namespace {

MatrixXcd rot_x(double theta) {
    MatrixXcd u(2, 2);
    cplx i(0, 1);
    u << std::cos(theta / 2), -i * std::sin(theta / 2),
         -i * std::sin(theta / 2), std::cos(theta / 2);
    return u;
}

Superop pauli_channel(const VectorXd& p, int nq) {
    int n = 1 << (2 * nq);
    int d = 1 << nq;
    MatrixXcd s = MatrixXcd::Zero(d * d, d * d);
    for (int k = 0; k < n; k++) {
        MatrixXcd pk = pauli_dense(k, nq);
        s += p(k) * Eigen::kroneckerProduct(pk.conjugate(), pk).eval();
    }
    return {nq, s};
}

} // namespace

TEST_CASE("identity and unitary superoperators") {
    auto id1 = superop_identity(1);
    CHECK(ptm(id1).isApprox(MatrixXd::Identity(4, 4), 1e-12));
    CHECK(tp_defect(id1) < 1e-12);
    CHECK(cp_defect(id1) < 1e-12);

    // a unitary's transfer matrix is orthogonal
    auto u = superop_from_unitary(rot_x(0.7));
    MatrixXd r = ptm(u);
    CHECK((r * r.transpose()).isApprox(MatrixXd::Identity(4, 4), 1e-12));
    CHECK(infidelity(u, rot_x(0.7)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chi of a Pauli channel is its probability vector") {
    VectorXd p(4);
    p << 0.9, 0.05, 0.03, 0.02; // I, X, Z, Y
    auto e = pauli_channel(p, 1);
    MatrixXcd chi = chi_matrix(e);
    for (int k = 0; k < 4; k++)
        CHECK(chi(k, k).real() == doctest::Approx(p(k)).epsilon(1e-12));
    CHECK(chi.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(infidelity(e, MatrixXcd::Identity(2, 2)) == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("twirling a coherent rotation leaves the diagonal chi") {
    double theta = 0.9;
    auto e = superop_from_unitary(rot_x(theta));
    auto t = twirl(e);
    MatrixXcd chi = chi_matrix(t);
    // off-diagonals vanish, cos^2/sin^2 split remains
    for (int m = 0; m < 4; m++)
        for (int n = 0; n < 4; n++)
            if (m != n) CHECK(std::abs(chi(m, n)) < 1e-12);
    CHECK(chi(0, 0).real() == doctest::Approx(std::cos(theta / 2) * std::cos(theta / 2)));
    CHECK(chi(1, 1).real() == doctest::Approx(std::sin(theta / 2) * std::sin(theta / 2)));
    CHECK(chi(2, 2).real() == doctest::Approx(0.0).epsilon(1e-12));

    VectorXd p = twirl_probs(ptm(e), 1);
    CHECK(p(0) == doctest::Approx(std::cos(theta / 2) * std::cos(theta / 2)));
    CHECK(p(1) == doctest::Approx(std::sin(theta / 2) * std::sin(theta / 2)));
}

TEST_CASE("ptm round trip and composition") {
    VectorXd p(4);
    p << 0.97, 0.01, 0.015, 0.005;
    auto e = chain(pauli_channel(p, 1), superop_from_unitary(rot_x(0.3)));
    auto back = superop_from_ptm(ptm(e), 1);
    CHECK(back.s.isApprox(e.s, 1e-10));

    // twirl preserves the transfer-matrix diagonal
    MatrixXd r = ptm(e), rt = ptm(twirl(e));
    for (int k = 0; k < 4; k++)
        CHECK(rt(k, k) == doctest::Approx(r(k, k)).epsilon(1e-12));
}

TEST_CASE("two-qubit composition from one-qubit factors") {
    auto a = superop_from_unitary(rot_x(0.4));
    VectorXd p(4);
    p << 0.95, 0.02, 0.02, 0.01;
    auto b = pauli_channel(p, 1);
    auto joint = superop_kron(a, b);
    CHECK(joint.nq == 2);
    CHECK(tp_defect(joint) < 1e-12);
    CHECK(cp_defect(joint) < 1e-10);

    // matches the direct two-qubit construction on a product input
    MatrixXcd rho_a(2, 2), rho_b(2, 2);
    rho_a << 0.7, cplx(0.1, 0.05), cplx(0.1, -0.05), 0.3;
    rho_b << 0.5, cplx(0, 0.2), cplx(0, -0.2), 0.5;
    MatrixXcd got = joint.apply(Eigen::kroneckerProduct(rho_a, rho_b).eval());
    MatrixXcd want = Eigen::kroneckerProduct(a.apply(rho_a), b.apply(rho_b)).eval();
    CHECK(got.isApprox(want, 1e-12));
}

TEST_CASE("two-qubit twirl probabilities and bias") {
    // dephasing-dominated two-qubit Pauli channel
    VectorXd p = VectorXd::Zero(16);
    int z = int(Pauli::Z), x = int(Pauli::X);
    p(4 * z) = 0.01;          // Z on qubit a
    p(z) = 0.005;             // Z on qubit b
    p(4 * z + z) = 0.005;     // ZZ
    p(4 * x + x) = 0.0001;    // XX
    p(0) = 1.0 - p.sum();
    auto e = pauli_channel(p, 2);
    VectorXd q = twirl_probs(ptm(e), 2);
    CHECK((q - p).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(bias_from_probs(q) == doctest::Approx(0.02 / 0.0001).epsilon(1e-9));
    CHECK(infidelity(e, MatrixXcd::Identity(4, 4)) == doctest::Approx(0.0201).epsilon(1e-10));
}

TEST_CASE("overlap table agrees with the sparse commutation check") {
    for (int i = 0; i < 16; i++)
        for (int j = 0; j < 16; j++) {
            PauliString a, b;
            a.set(0, Pauli(i >> 2));
            a.set(1, Pauli(i & 3));
            b.set(0, Pauli(j >> 2));
            b.set(1, Pauli(j & 3));
            CHECK(pauli_overlap(i, j, 2) == (commutes(a, b) ? 0 : 1));
        }
}

TEST_CASE("cp defect flags a non-positive map") {
    // transpose is positive but not completely positive
    MatrixXcd s = MatrixXcd::Zero(4, 4);
    s(0, 0) = s(3, 3) = 1;
    s(1, 2) = s(2, 1) = 1;
    Superop t{1, s};
    CHECK(cp_defect(t) > 0.5);
}
