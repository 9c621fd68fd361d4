"""Scalar entanglement quantities for qubit states.

Linear entropy and linear mutual entropy for arbitrary registers;
concurrence, concurrence of assistance, tangles and the leading/trailing
eigenvalue splits for two-qubit states, all via the spectrum of the
spin-flip R operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qlinalg import (
    DensityMatrix,
    PureState,
    hermitian_eig,
    partial_trace,
    psd_sqrt,
)

PURITY_PURE_CUTOFF = 1e-10   # Tr(rho^2) within this of 1 takes the pure-state path
PSD_FAIL_FLOOR = -1e-8
# Eigenvalues of the R^2 operator below this are matrix-product noise; the
# square root would amplify them to ~1e-8 and poison rank-deficient states.
R_SQUARED_NOISE_FLOOR = 1e-13

# sigma_y (x) sigma_y in the little-endian two-qubit basis; real by accident
# of the phases.
_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=np.complex128
)


def _purity(mat: np.ndarray) -> float:
    return float(np.sum(np.abs(mat) ** 2))


def _linear_entropy(mat: np.ndarray) -> float:
    return 2.0 * (1.0 - _purity(mat))


def linear_entropy(rho: DensityMatrix) -> float:
    """``2 (1 - Tr rho^2)``; zero for pure states."""
    return _linear_entropy(rho.matrix)


def linear_mutual_entropy(state: PureState | DensityMatrix, a: int, b: int) -> float:
    """Linear-entropy analogue of mutual information between qubits a and b.

    ``S_L(rho_a) + S_L(rho_b) - S_L(rho_ab)``.  Not a true mutual
    information: it is nonzero for product mixed states.
    """
    if a == b:
        raise ValueError("qubit indices must differ")
    rho_ab = partial_trace(state, {a, b})
    rho_a = partial_trace(rho_ab, {a})
    rho_b = partial_trace(rho_ab, {b})
    return (
        _linear_entropy(rho_a.matrix)
        + _linear_entropy(rho_b.matrix)
        - _linear_entropy(rho_ab.matrix)
    )


def _require_two_qubits(rho: DensityMatrix) -> None:
    if rho.n_qubits != 2:
        raise ValueError("expected a two-qubit density matrix")


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """Spin-flipped matrix ``(sy (x) sy) rho* (sy (x) sy)`` of a two-qubit state."""
    _require_two_qubits(rho)
    return _YY @ rho.matrix.conj() @ _YY


def _pure_concurrence_from_vector(psi: np.ndarray) -> float:
    # 2|det| of the 2x2 amplitude array; equals sqrt of the marginal's
    # linear entropy for a normalized two-qubit vector.
    c = 2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2])
    return float(min(c, 1.0))


def r_spectrum(rho: DensityMatrix) -> np.ndarray:
    """Four descending nonnegative eigenvalues of the R operator.

    Computed as square roots of the spectrum of the Hermitian product
    ``sqrt(rho) rho~ sqrt(rho)``, which avoids any non-Hermitian
    eigenproblem.  Near-pure inputs take a closed-form shortcut instead of
    rooting an almost rank-one matrix.
    """
    _require_two_qubits(rho)
    if rho.purity() > 1.0 - PURITY_PURE_CUTOFF:
        w, v = hermitian_eig(rho.matrix)
        return np.array([_pure_concurrence_from_vector(v[:, 0]), 0.0, 0.0, 0.0])
    s = psd_sqrt(rho.matrix)
    core = s @ spin_flip(rho) @ s
    core = (core + core.conj().T) / 2
    h, _ = hermitian_eig(core)
    if h[-1] < PSD_FAIL_FLOOR:
        raise ValueError(f"R^2 operator has eigenvalue {h[-1]:.3g}; not PSD")
    h = np.clip(h, 0.0, None)
    h[h < R_SQUARED_NOISE_FLOOR] = 0.0
    return np.sqrt(h)


def concurrence(rho: DensityMatrix) -> float:
    """Two-qubit mixed-state concurrence, clamped to [0, 1]."""
    lam = r_spectrum(rho)
    return float(np.clip(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0))


def concurrence_of_assistance(rho: DensityMatrix) -> float:
    """Maximum decomposition-averaged concurrence; the trace of R."""
    return float(np.sum(r_spectrum(rho)))


@dataclass
class MeasureSet:
    """Every pairwise measure of one two-qubit state, computed together.

    ``x_split`` couples the leading R eigenvalue to the rest,
    ``y_split`` couples the trailing three among themselves; together with
    half the mutual entropy they assemble both tangles.
    """

    qubit_a: int
    qubit_b: int
    s_lin_a: float
    s_lin_b: float
    s_lin_ab: float
    s_mutual: float
    concurrence: float
    concurrence_assist: float
    tangle: float
    tangle_assist: float
    x_split: float
    y_split: float


def tangles(rho: DensityMatrix) -> MeasureSet:
    """All scalar measures of a two-qubit density matrix."""
    _require_two_qubits(rho)
    la, lb = rho.qubit_labels
    s_a = _linear_entropy(partial_trace(rho, {la}).matrix)
    s_b = _linear_entropy(partial_trace(rho, {lb}).matrix)
    s_ab = _linear_entropy(rho.matrix)
    lam = r_spectrum(rho)
    c = float(np.clip(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0))
    ca = float(np.sum(lam))
    x = 2.0 * lam[0] * (lam[1] + lam[2] + lam[3])
    y = 2.0 * (lam[1] * lam[2] + lam[1] * lam[3] + lam[2] * lam[3])
    return MeasureSet(
        qubit_a=la,
        qubit_b=lb,
        s_lin_a=s_a,
        s_lin_b=s_b,
        s_lin_ab=s_ab,
        s_mutual=s_a + s_b - s_ab,
        concurrence=c,
        concurrence_assist=ca,
        tangle=c * c,
        tangle_assist=ca * ca,
        x_split=float(x),
        y_split=float(y),
    )


def decomposition_average_concurrence(decomposition) -> float:
    """Weighted mean concurrence of a two-qubit pure-state ensemble.

    Each member's concurrence is the square root of its one-qubit
    marginal's linear entropy, so the value is independent of the
    R-spectrum machinery and brackets the extremal pair: it can never fall
    below the concurrence nor exceed the concurrence of assistance of the
    mixed state the ensemble reassembles.
    """
    states = decomposition.states
    if states.shape[1] != 4:
        raise ValueError("expected two-qubit member states")
    x = states.reshape(-1, 2, 2)
    marg = np.einsum("mha,mhb->mab", x, x.conj())
    tr2 = np.einsum("mab,mba->m", marg, marg).real
    member_c = np.sqrt(np.clip(2.0 * (1.0 - tr2), 0.0, None))
    return float(np.dot(decomposition.weights, member_c))
