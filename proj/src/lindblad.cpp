#include "catqec/lindblad.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace catqec {

using cplx = std::complex<double>;
using Triplet = Eigen::Triplet<cplx>;

MatrixXcd TimeDependentH::dense_at(double t) const {
    MatrixXcd h = MatrixXcd(h_static);
    if (driven) {
        double phi = M_PI * t / period;
        h += std::cos(2 * phi) * MatrixXcd(h_cos) + std::sin(2 * phi) * MatrixXcd(h_sin);
    }
    return h;
}

void dissipator_rhs(const std::vector<Collapse>& collapse, const MatrixXcd& rho,
                    MatrixXcd& out) {
    out.setZero(rho.rows(), rho.cols());
    for (const auto& c : collapse) {
        MatrixXcd lrho = c.op * rho;
        out.noalias() += c.rate * (lrho * c.op.adjoint());
        MatrixXcd ldl_rho = c.op.adjoint() * lrho;
        out.noalias() -= (0.5 * c.rate) * ldl_rho;
        out.noalias() -= (0.5 * c.rate) * ldl_rho.adjoint();
    }
}

void master_rhs(const MatrixXcd& h, const std::vector<Collapse>& collapse,
                const MatrixXcd& rho, MatrixXcd& out) {
    dissipator_rhs(collapse, rho, out);
    cplx mi(0, -1);
    out.noalias() += mi * (h * rho);
    out.noalias() -= mi * (rho * h);
}

namespace {

// one RK4 step of the dissipator alone
void diss_rk4_step(const std::vector<Collapse>& collapse, MatrixXcd& rho, double dt) {
    MatrixXcd k1, k2, k3, k4, tmp;
    dissipator_rhs(collapse, rho, k1);
    tmp = rho + (dt / 2) * k1;
    dissipator_rhs(collapse, tmp, k2);
    tmp = rho + (dt / 2) * k2;
    dissipator_rhs(collapse, tmp, k3);
    tmp = rho + dt * k3;
    dissipator_rhs(collapse, tmp, k4);
    rho += (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

} // namespace

void SplitStepper::run(RhoStack& rhos) const {
    if (steps <= 0) throw std::invalid_argument("steps must be positive");
    double dt = t_final / steps;
    bool dissipate = !collapse.empty();
    int nsub = std::max(1, diss_substeps);
    double sub_dt = dt / (2 * nsub);

    Eigen::SelfAdjointEigenSolver<MatrixXcd> es;
    MatrixXcd prop;
    bool prop_ready = false;

    for (int s = 0; s < steps; s++) {
        double tm = (s + 0.5) * dt;
        if (dissipate)
            for (auto& rho : rhos)
                for (int k = 0; k < nsub; k++) diss_rk4_step(collapse, rho, sub_dt);

        if (!prop_ready || h.driven) {
            es.compute(h.dense_at(tm));
            VectorXcd phases =
                (cplx(0, -dt) * es.eigenvalues().cast<cplx>().array()).exp();
            prop.noalias() = es.eigenvectors() * phases.asDiagonal() *
                             es.eigenvectors().adjoint();
            prop_ready = true;
        }
        for (auto& rho : rhos) {
            MatrixXcd tmp = prop * rho;
            rho.noalias() = tmp * prop.adjoint();
        }

        if (dissipate)
            for (auto& rho : rhos)
                for (int k = 0; k < nsub; k++) diss_rk4_step(collapse, rho, sub_dt);
    }
}

void rk4_master(const TimeDependentH& h, const std::vector<Collapse>& collapse,
                double t_final, int steps, RhoStack& rhos) {
    double dt = t_final / steps;
    MatrixXcd k1, k2, k3, k4, tmp;
    MatrixXcd h0, hm, h1;
    bool fixed = !h.driven;
    if (fixed) h0 = h.dense_at(0);
    for (int s = 0; s < steps; s++) {
        double t = s * dt;
        if (!fixed) {
            h0 = h.dense_at(t);
            hm = h.dense_at(t + dt / 2);
            h1 = h.dense_at(t + dt);
        }
        const MatrixXcd& hmid = fixed ? h0 : hm;
        const MatrixXcd& hend = fixed ? h0 : h1;
        for (auto& rho : rhos) {
            master_rhs(h0, collapse, rho, k1);
            tmp = rho + (dt / 2) * k1;
            master_rhs(hmid, collapse, tmp, k2);
            tmp = rho + (dt / 2) * k2;
            master_rhs(hmid, collapse, tmp, k3);
            tmp = rho + dt * k3;
            master_rhs(hend, collapse, tmp, k4);
            rho += (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        }
    }
}

SpMat hamiltonian_superop(const SpMat& h) {
    int d = h.rows();
    SpMat id = fock_identity(d);
    SpMat ht = SpMat(h.transpose());
    SpMat s = SpMat(spkron(id, h) - spkron(ht, id));
    return SpMat(cplx(0, -1) * s);
}

SpMat dissipator_superop(double rate, const SpMat& l) {
    int d = l.rows();
    SpMat id = fock_identity(d);
    SpMat lc = SpMat(l.conjugate());
    SpMat ldl = SpMat(SpMat(l.adjoint()) * l);
    SpMat ldl_t = SpMat(ldl.transpose());
    SpMat s = SpMat(spkron(lc, l) - 0.5 * spkron(id, ldl) - 0.5 * spkron(ldl_t, id));
    return SpMat(rate * s);
}

SpMat liouvillian(const SpMat& h, const std::vector<Collapse>& collapse) {
    SpMat s = hamiltonian_superop(h);
    for (const auto& c : collapse) s += dissipator_superop(c.rate, c.op);
    return s;
}

MatrixXcd expm_propagator(const SpMat& liouv, double t) {
    MatrixXcd m = t * MatrixXcd(liouv);
    return m.exp();
}

void apply_propagator(const MatrixXcd& prop, MatrixXcd& rho) {
    int d = rho.rows();
    Eigen::Map<VectorXcd> v(rho.data(), d * d);
    VectorXcd out = prop * v;
    rho = Eigen::Map<MatrixXcd>(out.data(), d, d);
}

void kron_apply(const MatrixXcd& prop_c, const MatrixXcd& prop_t, MatrixXcd& rho) {
    int n = int(std::lround(std::sqrt(double(prop_c.rows())))); // single-mode dim
    int dim = n * n;
    if (rho.rows() != dim) throw std::invalid_argument("kron_apply dimension mismatch");

    // regroup vec indices into (target pair, control pair)
    MatrixXcd y(n * n, n * n);
    for (int cc = 0; cc < n; cc++)
        for (int ct = 0; ct < n; ct++)
            for (int rc = 0; rc < n; rc++)
                for (int rt = 0; rt < n; rt++)
                    y(ct * n + rt, cc * n + rc) = rho(rc * n + rt, cc * n + ct);
    MatrixXcd tmp = prop_t * y;
    y.noalias() = tmp * prop_c.transpose();
    for (int cc = 0; cc < n; cc++)
        for (int ct = 0; ct < n; ct++)
            for (int rc = 0; rc < n; rc++)
                for (int rt = 0; rt < n; rt++)
                    rho(rc * n + rt, cc * n + ct) = y(ct * n + rt, cc * n + rc);
}

double spectral_span(const MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
}

} // namespace catqec
