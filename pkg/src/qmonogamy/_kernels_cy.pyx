# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: cyclic Jacobi eigensolver and the per-qubit
discriminant contraction.  Semantics mirror ``_kernels_py``."""

import numpy as np

from libc.math cimport atan2, cos, sin, sqrt

from qmonogamy._kernels_py import JacobiConvergenceError

BACKEND = "cython"

JACOBI_THRESHOLD = 1e-13
JACOBI_MAX_SWEEPS = 100


def jacobi_eigh(h, double threshold=1e-13, int max_sweeps=100):
    """Eigensystem of a Hermitian matrix via cyclic complex Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues descending and matching orthonormal
    eigenvectors in the columns of ``v``.  Hermiticity is assumed.
    """
    a = np.array(h, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.array([a[0, 0].real]), v
    cdef double complex[:, ::1] am = a
    cdef double complex[:, ::1] vm = v
    cdef double thr2 = threshold * threshold
    cdef Py_ssize_t p, q, i, sweep
    cdef double off2, m2, mag, app, aqq, phi, c, s
    cdef double complex apq, ubar, hip, hiq, vip, viq
    cdef bint converged = 0
    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = am[p, q]
                m2 = apq.real * apq.real + apq.imag * apq.imag
                if m2 > off2:
                    off2 = m2
        if off2 <= thr2:
            converged = 1
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = am[p, q]
                m2 = apq.real * apq.real + apq.imag * apq.imag
                if m2 <= thr2:
                    continue
                mag = sqrt(m2)
                ubar = (apq / mag).conjugate()
                app = am[p, p].real
                aqq = am[q, q].real
                phi = 0.5 * atan2(2.0 * mag, aqq - app)
                c = cos(phi)
                s = sin(phi)
                for i in range(n):
                    if i == p or i == q:
                        continue
                    hip = am[i, p]
                    hiq = am[i, q]
                    am[i, p] = c * hip - s * (ubar * hiq)
                    am[i, q] = s * hip + c * (ubar * hiq)
                    am[p, i] = am[i, p].conjugate()
                    am[q, i] = am[i, q].conjugate()
                am[p, p] = c * c * app + s * s * aqq - 2.0 * s * c * mag
                am[q, q] = s * s * app + c * c * aqq + 2.0 * s * c * mag
                am[p, q] = 0.0
                am[q, p] = 0.0
                for i in range(n):
                    vip = vm[i, p]
                    viq = vm[i, q]
                    vm[i, p] = c * vip - s * (ubar * viq)
                    vm[i, q] = s * vip + c * (ubar * viq)
    if not converged:
        raise JacobiConvergenceError(
            f"off-diagonal weight above {threshold:g} after {max_sweeps} sweeps"
        )
    w = np.diagonal(a).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], np.ascontiguousarray(v[:, order])


def discriminant_per_qubit(psi0, psi1):
    """Per-qubit discriminant of two equal-length qubit-register vectors.

    Same contraction as the pure-Python twin; one pass over the amplitude
    pairs per qubit.
    """
    a0 = np.ascontiguousarray(psi0, dtype=np.complex128).ravel()
    a1 = np.ascontiguousarray(psi1, dtype=np.complex128).ravel()
    cdef Py_ssize_t dim = a0.shape[0]
    if a1.shape[0] != dim or dim < 2 or dim & (dim - 1):
        raise ValueError("expected two vectors of equal power-of-two length >= 2")
    cdef Py_ssize_t m = 0
    while (1 << (m + 1)) <= dim:
        m += 1
    out = np.empty(m)
    cdef double complex[::1] x0 = a0
    cdef double complex[::1] x1 = a1
    cdef double[::1] om = out
    cdef Py_ssize_t k, half, base, off, j0, j1
    cdef double complex c0, c1, b0, b1, s00_01, s11_01, s01_00, s01_01, s01_10, s01_11
    cdef double s00_00, s00_11, s11_00, s11_11, t_diag, t_off
    for k in range(m):
        half = 1 << k
        s00_00 = s00_11 = s11_00 = s11_11 = 0.0
        s00_01 = s11_01 = s01_00 = s01_01 = s01_10 = s01_11 = 0.0
        base = 0
        while base < dim:
            for off in range(half):
                j0 = base + off
                j1 = j0 + half
                c0 = x0[j0]
                c1 = x0[j1]
                b0 = x1[j0]
                b1 = x1[j1]
                s00_00 += c0.real * c0.real + c0.imag * c0.imag
                s00_11 += c1.real * c1.real + c1.imag * c1.imag
                s00_01 += c0 * c1.conjugate()
                s11_00 += b0.real * b0.real + b0.imag * b0.imag
                s11_11 += b1.real * b1.real + b1.imag * b1.imag
                s11_01 += b0 * b1.conjugate()
                s01_00 += c0 * b0.conjugate()
                s01_01 += c0 * b1.conjugate()
                s01_10 += c1 * b0.conjugate()
                s01_11 += c1 * b1.conjugate()
            base += 2 * half
        t_diag = (
            s00_00 * s11_00
            + s00_11 * s11_11
            + 2.0 * (s00_01.real * s11_01.real + s00_01.imag * s11_01.imag)
        )
        t_off = (
            s01_00.real * s01_00.real + s01_00.imag * s01_00.imag
            + s01_01.real * s01_01.real + s01_01.imag * s01_01.imag
            + s01_10.real * s01_10.real + s01_10.imag * s01_10.imag
            + s01_11.real * s01_11.real + s01_11.imag * s01_11.imag
        )
        om[k] = t_diag - t_off
    return out
