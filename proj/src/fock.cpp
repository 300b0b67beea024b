#include "catqec/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace catqec {

using cplx = std::complex<double>;
using Triplet = Eigen::Triplet<cplx>;

SpMat destroy(int nmax) {
    std::vector<Triplet> t;
    for (int n = 1; n < nmax; n++) t.emplace_back(n - 1, n, std::sqrt(double(n)));
    SpMat a(nmax, nmax);
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

SpMat create(int nmax) { return SpMat(destroy(nmax).adjoint()); }

SpMat number(int nmax) {
    std::vector<Triplet> t;
    for (int n = 1; n < nmax; n++) t.emplace_back(n, n, double(n));
    SpMat m(nmax, nmax);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SpMat fock_identity(int nmax) {
    SpMat m(nmax, nmax);
    m.setIdentity();
    return m;
}

SpMat spkron(const SpMat& a, const SpMat& b) {
    std::vector<Triplet> t;
    t.reserve(size_t(a.nonZeros()) * b.nonZeros());
    for (int i = 0; i < a.outerSize(); i++)
        for (SpMat::InnerIterator ia(a, i); ia; ++ia)
            for (int j = 0; j < b.outerSize(); j++)
                for (SpMat::InnerIterator ib(b, j); ib; ++ib)
                    t.emplace_back(ia.row() * b.rows() + ib.row(),
                                   ia.col() * b.cols() + ib.col(),
                                   ia.value() * ib.value());
    SpMat m(a.rows() * b.rows(), a.cols() * b.cols());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

VectorXcd coherent(double alpha, int nmax) {
    VectorXcd v = VectorXcd::Zero(nmax);
    if (alpha == 0.0) {
        v(0) = 1.0;
        return v;
    }
    // log-domain amplitudes keep large alpha stable
    double la = std::log(std::abs(alpha));
    for (int n = 0; n < nmax; n++) {
        double mag = n * la - 0.5 * std::lgamma(n + 1.0);
        double s = (alpha < 0 && (n & 1)) ? -1.0 : 1.0;
        v(n) = s * std::exp(mag);
    }
    v.normalize();
    return v;
}

VectorXcd cat_state(double alpha, int parity, int nmax) {
    if (parity != 1 && parity != -1) throw std::invalid_argument("parity must be +-1");
    VectorXcd v = coherent(alpha, nmax) + double(parity) * coherent(-alpha, nmax);
    v.normalize();
    return v;
}

double cat_ratio(double alpha) {
    double e = std::exp(-2.0 * alpha * alpha);
    return std::sqrt((1.0 - e) / (1.0 + e));
}

SpMat kerr_cat_hamiltonian(double kerr, double alpha, int nmax) {
    SpMat a = destroy(nmax);
    SpMat a2 = SpMat(a * a);
    SpMat ad2 = SpMat(a2.adjoint());
    SpMat quartic = SpMat(ad2 * a2);
    SpMat drive = SpMat(ad2 + a2);
    return SpMat(-kerr * quartic + (kerr * alpha * alpha) * drive);
}

CatFrame CatFrame::make(double alpha, int nmax) {
    CatFrame f;
    f.nmax = nmax;
    f.alpha = alpha;
    f.cat_plus = cat_state(alpha, +1, nmax);
    f.cat_minus = cat_state(alpha, -1, nmax);
    f.v.resize(nmax, 2);
    double s = 1.0 / std::sqrt(2.0);
    f.v.col(0) = s * (f.cat_plus + f.cat_minus);
    f.v.col(1) = s * (f.cat_plus - f.cat_minus);
    return f;
}

MatrixXcd CatFrame::qubit(const MatrixXcd& rho) const { return v.adjoint() * rho * v; }

double CatFrame::leakage(const MatrixXcd& rho) const {
    return 1.0 - qubit(rho).trace().real() / rho.trace().real();
}

MatrixXcd CatFrame::embed(const MatrixXcd& op) const { return v * op * v.adjoint(); }

} // namespace catqec
