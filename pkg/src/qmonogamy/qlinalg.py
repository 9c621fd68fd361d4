"""Dense complex linear algebra and qubit-register state construction.

Bit convention used by the whole package: basis index ``i`` carries qubit
``k`` in state ``(i >> k) & 1`` (little-endian), and qubit 0 is party A.
All functions are pure and deterministic given their inputs (including
seeds); returned arrays are never aliased to the inputs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from ._backend import jacobi_eigh

HERMITICITY_TOL = 1e-12
NORM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FAIL_FLOOR = -1e-8  # below this an input is genuinely non-PSD, not noise
RANK_TOL = 1e-12

MAX_QUBITS = 12


def fingerprint(amplitudes: np.ndarray) -> str:
    """Short stable hash of an amplitude vector, for report provenance."""
    data = np.ascontiguousarray(amplitudes, dtype=np.complex128)
    return hashlib.sha256(data.tobytes()).hexdigest()[:16]


@dataclass
class PureState:
    """Normalized state vector of an ``n_qubits`` register."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"expected {1 << self.n_qubits} amplitudes, got {self.amplitudes.shape}"
            )
        norm_sq = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {np.sqrt(norm_sq):.6g} outside tolerance")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density_matrix(self) -> "DensityMatrix":
        rho = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix(tuple(range(self.n_qubits)), rho)

    def fingerprint(self) -> str:
        return fingerprint(self.amplitudes)


@dataclass
class DensityMatrix:
    """Hermitian, trace-one operator over a labeled subset of qubits.

    ``qubit_labels`` are the original register indices, ascending; label
    ``qubit_labels[t]`` occupies bit ``t`` of the matrix index.
    Positivity is not re-checked on construction (it is guaranteed by the
    partial-trace constructors and asserted statistically in the tests);
    Hermiticity and trace are.
    """

    qubit_labels: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        self.qubit_labels = tuple(self.qubit_labels)
        self.matrix = np.ascontiguousarray(self.matrix, dtype=np.complex128)
        d = 1 << len(self.qubit_labels)
        if self.matrix.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix for {self.qubit_labels}")
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > HERMITICITY_TOL:
            raise ValueError("matrix is not Hermitian within tolerance")
        if abs(np.trace(self.matrix).real - 1.0) > TRACE_TOL:
            raise ValueError("matrix trace differs from 1 beyond tolerance")

    @property
    def n_qubits(self) -> int:
        return len(self.qubit_labels)

    def purity(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))


class SpectralDecomposition(NamedTuple):
    """Descending eigenvalues and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass
class Decomposition:
    """Pure-state ensemble ``sum_i weights[i] |states[i]><states[i]|``."""

    weights: np.ndarray
    states: np.ndarray  # one normalized state vector per row

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        self.states = np.asarray(self.states, dtype=np.complex128)
        if abs(self.weights.sum() - 1.0) > NORM_TOL:
            raise ValueError("decomposition weights do not sum to 1")

    def reconstruct(self) -> np.ndarray:
        return np.einsum("i,ia,ib->ab", self.weights, self.states, self.states.conj())


def _validate_keep(keep: Iterable[int], available: tuple[int, ...]) -> list[int]:
    kept = sorted(set(int(k) for k in keep))
    if not kept:
        raise ValueError("keep set must be nonempty")
    missing = [k for k in kept if k not in available]
    if missing:
        raise ValueError(f"qubit index {missing[0]} not in system {available}")
    return kept


def partial_trace(state: PureState | DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix over ``keep``, labels ascending.

    Accepts either a pure register state or a density matrix over labeled
    qubits; ``keep`` always refers to original register indices.
    """
    if isinstance(state, PureState):
        n = state.n_qubits
        kept = _validate_keep(keep, tuple(range(n)))
        arr = state.amplitudes.reshape((2,) * n)  # axis i <-> qubit n-1-i
        kept_axes = [n - 1 - k for k in reversed(kept)]
        rest_axes = [ax for ax in range(n) if ax not in kept_axes]
        x = arr.transpose(kept_axes + rest_axes).reshape(1 << len(kept), -1)
        rho = x @ x.conj().T
        return DensityMatrix(tuple(kept), rho)

    labels = state.qubit_labels
    kept = _validate_keep(keep, labels)
    m = len(labels)
    keep_bits = {labels.index(k) for k in kept}
    a = state.matrix.reshape((2,) * (2 * m))
    row_ids = list(range(m))  # row axis i <-> register bit m-1-i
    col_ids = [i if (m - 1 - i) not in keep_bits else m + i for i in range(m)]
    kept_row_axes = [i for i in range(m) if (m - 1 - i) in keep_bits]
    out_ids = kept_row_axes + [m + i for i in kept_row_axes]
    rho = np.einsum(a, row_ids + col_ids, out_ids)
    d = 1 << len(kept)
    return DensityMatrix(tuple(kept), rho.reshape(d, d))


def hermitian_eig(m: np.ndarray) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix (descending eigenvalues).

    Raises ``ValueError`` on non-Hermitian input and propagates the
    eigensolver's convergence failure.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = jacobi_eigh(m)
    return SpectralDecomposition(w, v)


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Hermitian square root of a positive-semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero; anything below
    ``-1e-8`` raises.
    """
    w, v = hermitian_eig(m)
    if w[-1] < PSD_FAIL_FLOOR:
        raise ValueError(f"matrix has eigenvalue {w[-1]:.3g}; not PSD")
    root = np.sqrt(np.clip(w, 0.0, None))
    s = (v * root) @ v.conj().T
    return (s + s.conj().T) / 2


def haar_random_pure(n_qubits: int, seed) -> PureState:
    """Haar-random pure state from normalized i.i.d. complex Gaussians.

    ``seed`` may be an integer or a ``numpy.random.Generator``; results are
    deterministic given the seed.
    """
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}]")
    rng = np.random.default_rng(seed)
    dim = 1 << n_qubits
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(n_qubits, z / np.linalg.norm(z))


def haar_random_unitary(dim: int, seed) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def state_family(name: str, n_qubits: int) -> PureState:
    """Named reference states: GHZ, W, product (all zeros), Bell."""
    key = name.strip().lower()
    if key == "bell":
        if n_qubits != 2:
            raise ValueError("Bell requires exactly 2 qubits")
        key = "ghz"
    if n_qubits < 2:
        raise ValueError("state families need at least 2 qubits")
    dim = 1 << n_qubits
    amps = np.zeros(dim, dtype=np.complex128)
    if key == "ghz":
        amps[0] = amps[dim - 1] = 1 / np.sqrt(2)
    elif key == "w":
        for k in range(n_qubits):
            amps[1 << k] = 1 / np.sqrt(n_qubits)
    elif key == "product":
        amps[0] = 1.0
    else:
        raise ValueError(f"unknown state family {name!r}")
    return PureState(n_qubits, amps)


def sample_decomposition(
    rho: DensityMatrix, size: int, seed=None, unitary: np.ndarray | None = None
) -> Decomposition:
    """Random pure-state decomposition of ``rho`` with ``size`` members.

    Eigendecomposes ``rho``, mixes the weighted eigenvectors through the
    first ``rank`` columns of a Haar-random ``size x size`` unitary (or the
    supplied one), and reads off member weights as the squared norms.  The
    members always re-sum to ``rho``.
    """
    w, v = hermitian_eig(rho.matrix)
    rank = int(np.sum(w > RANK_TOL))
    if size < rank:
        raise ValueError(f"size {size} below state rank {rank}")
    if unitary is None:
        u = haar_random_unitary(size, seed)
    else:
        u = np.asarray(unitary, dtype=np.complex128)
        if u.shape != (size, size):
            raise ValueError("unitary shape does not match size")
    phi = (u[:, :rank] * np.sqrt(np.clip(w[:rank], 0.0, None))) @ v[:, :rank].T
    weights = np.sum(np.abs(phi) ** 2, axis=1)
    states = np.empty_like(phi)
    for j in range(size):
        if weights[j] > 1e-30:
            states[j] = phi[j] / np.sqrt(weights[j])
        else:
            states[j] = v[:, 0]  # zero-weight member; any unit vector works
    return Decomposition(weights, states)


def apply_single_qubit_unitary(psi: PureState, qubit: int, u: np.ndarray) -> PureState:
    """Apply a 2x2 unitary to one qubit of a register state."""
    if not 0 <= qubit < psi.n_qubits:
        raise ValueError("qubit index out of range")
    lo = 1 << qubit
    arr = psi.amplitudes.reshape(psi.dim >> (qubit + 1), 2, lo)
    out = np.einsum("ab,hbl->hal", np.asarray(u, dtype=np.complex128), arr)
    return PureState(psi.n_qubits, out.reshape(psi.dim))


def permute_qubits(psi: PureState, perm: Iterable[int]) -> PureState:
    """Relabel qubits: old qubit ``k`` becomes qubit ``perm[k]``."""
    n = psi.n_qubits
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise ValueError("perm is not a permutation of the qubit indices")
    inv = [0] * n
    for k, p in enumerate(perm):
        inv[p] = k
    arr = psi.amplitudes.reshape((2,) * n)
    axes = [n - 1 - inv[n - 1 - j] for j in range(n)]
    return PureState(n, arr.transpose(axes).reshape(psi.dim))


def read_state_file(path) -> PureState:
    """Load ``{"n_qubits": N, "amplitudes": [[re, im], ...]}`` JSON.

    Non-normalized vectors are rejected, not renormalized.
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        n = int(doc["n_qubits"])
        pairs = doc["amplitudes"]
        amps = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state file {path}: {exc}") from exc
    if amps.size != 1 << n:
        raise ValueError(f"state file has {amps.size} amplitudes, expected {1 << n}")
    return PureState(n, amps)


def write_state_file(path, psi: PureState) -> None:
    """Write a state in the JSON format accepted by :func:`read_state_file`."""
    doc = {
        "n_qubits": psi.n_qubits,
        "amplitudes": [[float(a.real), float(a.imag)] for a in psi.amplitudes],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
