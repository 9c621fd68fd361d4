"""Schmidt-cut machinery for the one-vs-rest split of a pure register state.

The first qubit is split from the other ``m`` qubits, giving two weighted
branch states.  From the branches we build per-qubit cross operators and
their discriminant, an antisymmetric pair-coefficient table, Hamming-graded
correlation sums, and the exact integer sign-matrix apparatus that pins the
discriminant's extremal values.  Two independent evaluation routes
(operator traces vs. coefficient sums) are kept deliberately separate so
each can falsify the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import discriminant_per_qubit
from .qlinalg import PureState, hermitian_eig

DEGENERATE_WEIGHT = 1e-12   # below this the second branch is completed, not divided out
PHASE_FLOOR = 1e-12
IMAG_RESIDUE_TOL = 1e-10


@dataclass
class SchmidtForm:
    """Two-branch split ``sqrt(p0)|u0>|psi0> + sqrt(p1)|u1>|psi1>``.

    ``basis_a`` holds the orthonormal first-qubit vectors ``u0, u1`` as
    columns; ``psi0, psi1`` are orthonormal states of the remaining
    ``n_b_qubits`` qubits (register bit ``k`` is original qubit ``k+1``).
    Branch phases are fixed so the first nonvanishing amplitude of each
    branch is real positive.
    """

    p0: float
    p1: float
    psi0: np.ndarray
    psi1: np.ndarray
    basis_a: np.ndarray

    @property
    def n_b_qubits(self) -> int:
        return self.psi0.size.bit_length() - 1

    def reassemble(self) -> PureState:
        branches = np.stack([self.psi0, self.psi1], axis=1)  # (j, l)
        coef = self.basis_a * np.sqrt([self.p0, self.p1])    # (a, l)
        amps = branches @ coef.T                             # (j, a); index 2j + a
        return PureState(self.n_b_qubits + 1, amps.reshape(-1))


def _fix_phase(branch: np.ndarray, basis_col: np.ndarray) -> None:
    nz = np.flatnonzero(np.abs(branch) > PHASE_FLOOR)
    if nz.size:
        phase = branch[nz[0]] / abs(branch[nz[0]])
        branch *= phase.conjugate()
        basis_col *= phase


def _complete_orthogonal(psi0: np.ndarray) -> np.ndarray:
    # Gram-Schmidt of the first basis vector that is not mostly parallel.
    for t in range(psi0.size):
        v = -psi0 * psi0[t].conjugate()
        v[t] += 1.0
        norm = np.linalg.norm(v)
        if norm * norm > 0.5:
            return v / norm
    raise RuntimeError("no orthogonal completion found")  # unreachable for unit input


def schmidt_cut(psi: PureState) -> SchmidtForm:
    """Split qubit 0 from the rest via the first qubit's reduced state.

    A vanishing second weight (below ``1e-12``) yields a completed
    orthonormal second branch instead of a division by ~zero.
    """
    if psi.n_qubits < 2:
        raise ValueError("need at least 2 qubits to cut")
    amp = psi.amplitudes.reshape(-1, 2)  # (rest j, first-qubit bit a)
    rho_a = amp.T @ amp.conj()
    w, u = hermitian_eig(rho_a)
    p = np.clip(w, 0.0, 1.0)
    basis = u.copy()
    branches = []
    for ell in range(2):
        raw = amp @ u[:, ell].conj()
        if p[ell] < DEGENERATE_WEIGHT:
            branch = None
        else:
            branch = raw / np.sqrt(p[ell])
        branches.append(branch)
    if branches[1] is None:
        branches[1] = _complete_orthogonal(branches[0])
    for ell in range(2):
        _fix_phase(branches[ell], basis[:, ell])
    return SchmidtForm(
        p0=float(p[0]),
        p1=float(p[1]),
        psi0=branches[0],
        psi1=branches[1],
        basis_a=basis,
    )


def sigma_matrices(sf: SchmidtForm) -> np.ndarray:
    """Per-qubit 2x2 cross operators of the two branches.

    Returns shape ``(m, 2, 2, 2, 2)``: ``sigma[k, l, lp]`` is the trace of
    ``|psi_l><psi_lp|`` over every branch qubit except ``k``.
    """
    m = sf.n_b_qubits
    vecs = [sf.psi0, sf.psi1]
    out = np.empty((m, 2, 2, 2, 2), dtype=np.complex128)
    dim = sf.psi0.size
    for k in range(m):
        lo = 1 << k
        shaped = [v.reshape(dim >> (k + 1), 2, lo) for v in vecs]
        for ell in range(2):
            for ellp in range(2):
                out[k, ell, ellp] = np.einsum(
                    "hrl,hcl->rc", shaped[ell], shaped[ellp].conj()
                )
    return out


def discriminant_direct(sf: SchmidtForm) -> tuple[np.ndarray, float]:
    """Per-qubit discriminants and their sum, from the cross operators.

    ``D_k = Tr(sigma_k^00 sigma_k^11 - sigma_k^01 sigma_k^10)``, summed
    over every branch qubit.
    """
    per_k = discriminant_per_qubit(sf.psi0, sf.psi1)
    return per_k, float(per_k.sum())


def state_discriminant(state: PureState | np.ndarray) -> tuple[np.ndarray, float]:
    """Discriminant of a register state across the first-qubit cut."""
    if isinstance(state, PureState):
        psi = state
    else:
        arr = np.asarray(state, dtype=np.complex128).ravel()
        psi = PureState(arr.size.bit_length() - 1, arr)
    return discriminant_direct(schmidt_cut(psi))


def alpha_table(sf: SchmidtForm) -> np.ndarray:
    """Antisymmetric pair-coefficient table of the two branches.

    ``alpha[i, j] = a0[i] a1[j] - a0[j] a1[i]`` over all pairs of branch
    basis indices; half its squared weight is 1 for orthonormal branches.
    """
    cross = np.outer(sf.psi0, sf.psi1)
    return cross - cross.T


@lru_cache(maxsize=None)
def _pair_index_tables(m: int):
    dim = 1 << m
    i = np.repeat(np.arange(dim), dim)
    j = np.tile(np.arange(dim), dim)
    dist = np.bitwise_count(i ^ j).astype(np.int64)
    return i, j, dist


def lambda_delta(at: np.ndarray, delta: int) -> float:
    """Hamming-graded correlation sum of an antisymmetric pair table.

    Over ordered index pairs at Hamming distance ``delta``, couples each
    coefficient to the conjugates of its both-bits-flipped neighbours
    within the differing-bit set.  The value is real up to numerical
    residue, which is checked.
    """
    dim = at.shape[0]
    m = dim.bit_length() - 1
    if not 0 <= delta <= m:
        raise ValueError(f"delta must be in [0, {m}]")
    i, j, dist = _pair_index_tables(m)
    sel = dist == delta
    isel, jsel = i[sel], j[sel]
    xor = isel ^ jsel
    inner = np.zeros(isel.size, dtype=np.complex128)
    for k in range(m):
        bit = 1 << k
        mask = (xor & bit) != 0
        inner[mask] += at[isel[mask] ^ bit, jsel[mask] ^ bit].conj()
    total = 0.5 * np.sum(at[isel, jsel] * inner)
    if abs(total.imag) >= IMAG_RESIDUE_TOL:
        raise ArithmeticError(f"imaginary residue {total.imag:.3g} in distance sum")
    return float(total.real)


def discriminant_via_alpha(at: np.ndarray) -> float:
    """Total discriminant evaluated purely from the pair-coefficient table.

    Independent of :func:`discriminant_direct`; the two must agree to
    numerical precision on any valid Schmidt form.
    """
    dim = at.shape[0]
    m = dim.bit_length() - 1
    i, j, dist = _pair_index_tables(m)
    abs2 = np.abs(at[i, j]) ** 2
    total = float(m - 2)
    for delta in range(3, m + 1):
        weight = float(np.sum(abs2[dist == delta]))
        total += lambda_delta(at, delta) + 0.5 * (2 - delta) * weight
    return total


def discriminant4_closed_form(at: np.ndarray) -> float:
    """Closed form of the total discriminant for a three-qubit branch register.

    One minus the squared magnitude of the alternating sum of the four
    complementary-pair coefficients; manifestly at most 1 and provably
    nonnegative.
    """
    if at.shape != (8, 8):
        raise ValueError("closed form needs a three-qubit branch register (8x8 table)")
    combo = at[0, 7] - at[1, 6] - at[2, 5] + at[3, 4]
    return float(1.0 - abs(combo) ** 2)


def v_matrix(delta: int) -> np.ndarray:
    """Integer coupling matrix of the flipped-pair quadratic form.

    Indexed by ``(delta - 1)``-bit strings: -1 between complementary
    strings, +1 between strings differing in exactly one bit, 0 otherwise.
    """
    if not 3 <= delta <= 10:
        raise ValueError("delta must be in [3, 10]")
    bits = delta - 1
    dim = 1 << bits
    x = np.arange(dim)
    xor = x[:, None] ^ x[None, :]
    ones = np.bitwise_count(xor)
    v = np.zeros((dim, dim), dtype=np.int64)
    v[ones == 1] = 1
    v[xor == dim - 1] = -1
    return v


def p_matrix(m: int) -> np.ndarray:
    """Sylvester-Hadamard sign matrix ``(-1)^(x . y)``; squares to ``2^m I``."""
    if not 1 <= m <= 10:
        raise ValueError("m must be in [1, 10]")
    dim = 1 << m
    x = np.arange(dim)
    parity = np.bitwise_count(x[:, None] & x[None, :]) & 1
    return (1 - 2 * parity.astype(np.int64))


def v_spectrum_check(delta: int) -> dict:
    """Exact integer verification that the Hadamard columns diagonalize V.

    Each column ``y`` must be an eigenvector with eigenvalue
    ``sum_k (-1)^(y_k) - (-1)^(popcount(y))`` and the largest eigenvalue
    must be ``delta - 2``.  Any mismatch raises.
    """
    if not 3 <= delta <= 8:
        raise ValueError("delta must be in [3, 8]")
    bits = delta - 1
    v = v_matrix(delta)
    p = p_matrix(bits)
    eigenvalues = []
    for y in range(1 << bits):
        t = int(y).bit_count()
        lam = (bits - 2 * t) - (-1) ** t
        col = p[:, y]
        if not np.array_equal(v @ col, lam * col):
            raise ValueError(f"column {y} is not an eigenvector with value {lam}")
        eigenvalues.append(lam)
    top = max(eigenvalues)
    if top != delta - 2:
        raise ValueError(f"largest eigenvalue {top} differs from {delta - 2}")
    return {
        "delta": delta,
        "eigenvalues": sorted(eigenvalues, reverse=True),
        "max_eigenvalue": top,
        "columns_verified": 1 << bits,
    }
