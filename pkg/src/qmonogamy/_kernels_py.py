"""Pure-Python implementations of the numeric hot kernels.

The compiled twin (:mod:`qmonogamy._kernels_cy`) is preferred at import
time; this module keeps the package fully functional without a C
toolchain and pins down the reference semantics: the same cyclic sweep
order, rotation formulas and convergence rule for the eigensolver, and
the same per-qubit contraction for the discriminant kernel.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

JACOBI_THRESHOLD = 1e-13
JACOBI_MAX_SWEEPS = 100


class JacobiConvergenceError(RuntimeError):
    """Sweep cap reached before the off-diagonal weight fell below threshold."""


def jacobi_eigh(h, threshold=JACOBI_THRESHOLD, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigensystem of a Hermitian matrix via cyclic complex Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ``w`` sorted descending and matching
    orthonormal eigenvectors in the columns of ``v``.  Hermiticity is
    assumed, not checked; callers own that validation.
    """
    a = np.array(h, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.array([a[0, 0].real]), v
    thr2 = threshold * threshold
    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                m2 = z.real * z.real + z.imag * z.imag
                if m2 > off2:
                    off2 = m2
        if off2 <= thr2:
            break
        if sweep == max_sweeps:
            raise JacobiConvergenceError(
                f"off-diagonal weight above {threshold:g} after {max_sweeps} sweeps"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                m2 = apq.real * apq.real + apq.imag * apq.imag
                if m2 <= thr2:
                    continue
                mag = math.sqrt(m2)
                ubar = (apq / mag).conjugate()  # unit phase of the pivot
                app = a[p, p].real
                aqq = a[q, q].real
                phi = 0.5 * math.atan2(2.0 * mag, aqq - app)
                c = math.cos(phi)
                s = math.sin(phi)
                for i in range(n):
                    if i == p or i == q:
                        continue
                    hip = a[i, p]
                    hiq = a[i, q]
                    a[i, p] = c * hip - s * (ubar * hiq)
                    a[i, q] = s * hip + c * (ubar * hiq)
                    a[p, i] = a[i, p].conjugate()
                    a[q, i] = a[i, q].conjugate()
                a[p, p] = c * c * app + s * s * aqq - 2.0 * s * c * mag
                a[q, q] = s * s * app + c * c * aqq + 2.0 * s * c * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - s * (ubar * viq)
                    v[i, q] = s * vip + c * (ubar * viq)
    w = np.diagonal(a).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], np.ascontiguousarray(v[:, order])


def discriminant_per_qubit(psi0, psi1):
    """Per-qubit discriminant of two equal-length qubit-register vectors.

    For each qubit ``k`` of the register, traces out the other qubits from
    the four cross operators ``|psi_l><psi_l'|`` and returns
    ``Tr(s00 s11) - Tr(s01 s10)`` as a real array of length ``m``.
    """
    a0 = np.ascontiguousarray(psi0, dtype=np.complex128).ravel()
    a1 = np.ascontiguousarray(psi1, dtype=np.complex128).ravel()
    dim = a0.size
    if a1.size != dim or dim < 2 or dim & (dim - 1):
        raise ValueError("expected two vectors of equal power-of-two length >= 2")
    m = dim.bit_length() - 1
    out = np.empty(m)
    for k in range(m):
        lo = 1 << k
        x0 = a0.reshape(dim >> (k + 1), 2, lo)
        x1 = a1.reshape(dim >> (k + 1), 2, lo)
        s00 = np.einsum("hrl,hcl->rc", x0, x0.conj())
        s11 = np.einsum("hrl,hcl->rc", x1, x1.conj())
        s01 = np.einsum("hrl,hcl->rc", x0, x1.conj())
        out[k] = (np.sum(s00 * s11.T) - np.sum(np.abs(s01) ** 2)).real
    return out
