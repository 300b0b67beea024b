#!/usr/bin/env python3
"""Independent master-equation reference values.

Integrates a driven single-mode Lindblad equation with scipy's adaptive
solver and prints selected density-matrix entries. The numbers are frozen
into tests/test_lindblad.cpp; rerun this script to regenerate them.
"""
import numpy as np
from scipy.integrate import solve_ivp


def destroy(n):
    return np.diag(np.sqrt(np.arange(1, n)), 1)


def coherent(alpha, n):
    k = np.arange(n)
    from scipy.special import gammaln
    mag = k * np.log(np.abs(alpha)) - 0.5 * gammaln(k + 1.0)
    v = np.exp(mag) * np.where((alpha < 0) & (k % 2 == 1), -1.0, 1.0)
    return v / np.linalg.norm(v)


def cat(alpha, parity, n):
    v = coherent(alpha, n) + parity * coherent(-alpha, n)
    return v / np.linalg.norm(v)


def main():
    n = 12
    alpha = 1.2
    kerr = 1.0
    eps = 0.08
    kappa1 = 0.01
    n_th = 0.1
    kappa2 = 0.05
    t_final = np.pi / (8 * alpha * eps)

    a = destroy(n)
    ad = a.conj().T
    a2 = a @ a
    h = -kerr * ad @ ad @ a @ a + kerr * alpha**2 * (ad @ ad + a2) + eps * (a + ad)
    cols = [(kappa1 * (1 + n_th), a), (kappa1 * n_th, ad), (kappa2, a2)]

    def rhs(t, y):
        rho = y.reshape(n, n)
        out = -1j * (h @ rho - rho @ h)
        for rate, l in cols:
            lr = l @ rho
            ldl = l.conj().T @ l
            out += rate * (lr @ l.conj().T - 0.5 * (ldl @ rho + rho @ ldl))
        return out.ravel()

    c = cat(alpha, 1, n)
    rho0 = np.outer(c, c.conj()).astype(complex)
    sol = solve_ivp(rhs, (0, t_final), rho0.ravel(), rtol=1e-11, atol=1e-13,
                    method="DOP853")
    rho = sol.y[:, -1].reshape(n, n)

    print(f"t_final = {t_final:.15f}")
    print(f"trace   = {np.trace(rho).real:.15f}")
    for (i, j) in [(0, 0), (1, 1), (2, 2), (2, 0), (3, 1), (4, 2)]:
        print(f"rho[{i}][{j}] = {rho[i, j].real:+.12e} {rho[i, j].imag:+.12e}")

    mean_a = np.trace(a @ rho)
    print(f"<a>     = {mean_a.real:+.12e} {mean_a.imag:+.12e}")


if __name__ == "__main__":
    main()
