#pragma once

// Master-equation integrators for one- and two-mode cat systems.
//
// Two representations are used. Small problems (any single mode) go through
// the vectorized superoperator, vec(rho) column-major, where the channel for
// a time-independent generator is a single dense matrix exponential. The
// two-mode gates are too large for that, so they use a Strang-split stepper
// on the density matrix itself: the Hamiltonian half is applied exactly by
// eigendecomposition at the step midpoint, the dissipator half with RK4
// substeps in matrix form. All probe inputs of a process-matrix extraction
// are stacked and evolved together.

#include "catqec/fock.hpp"

#include <utility>
#include <vector>

namespace catqec {

struct Collapse {
    double rate = 0;
    SpMat op;
};

// H(t) = h_static + cos(2 phi) h_cos + sin(2 phi) h_sin with phi = pi t / period
struct TimeDependentH {
    SpMat h_static;
    SpMat h_cos, h_sin;
    double period = 0;
    bool driven = false;

    MatrixXcd dense_at(double t) const;
};

using RhoStack = std::vector<MatrixXcd>;

struct SplitStepper {
    TimeDependentH h;
    std::vector<Collapse> collapse;
    double t_final = 0;
    int steps = 0;
    int diss_substeps = 1;

    void run(RhoStack& rhos) const;
};

// dissipator-only and full right-hand sides in matrix form; the plain RK4
// driver is the slow reference used to validate the split stepper
void dissipator_rhs(const std::vector<Collapse>& collapse, const MatrixXcd& rho,
                    MatrixXcd& out);
void master_rhs(const MatrixXcd& h, const std::vector<Collapse>& collapse,
                const MatrixXcd& rho, MatrixXcd& out);
void rk4_master(const TimeDependentH& h, const std::vector<Collapse>& collapse,
                double t_final, int steps, RhoStack& rhos);

// superoperator route, vec(rho) with index col * dim + row
SpMat hamiltonian_superop(const SpMat& h);
SpMat dissipator_superop(double rate, const SpMat& l);
SpMat liouvillian(const SpMat& h, const std::vector<Collapse>& collapse);
MatrixXcd expm_propagator(const SpMat& liouv, double t);
// rho <- unvec(prop * vec(rho))
void apply_propagator(const MatrixXcd& prop, MatrixXcd& rho);

// product-channel application on a two-mode state, rho has dim n*n; each
// factor is a single-mode vec-propagator of dim n^2
void kron_apply(const MatrixXcd& prop_c, const MatrixXcd& prop_t, MatrixXcd& rho);

// eigenvalue spread of a Hermitian matrix, used for step-size heuristics
double spectral_span(const MatrixXcd& h);

} // namespace catqec
