"""Structured checkers for the monogamy inequalities and equalities.

Every checker returns one or more :class:`InequalityReport` records with
both sides, the slack, and a verdict at an explicit tolerance.  Reports
are oriented so the claim is always ``lhs <= rhs``; ``slack = rhs - lhs``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import measures
from .qlinalg import DensityMatrix, PureState, fingerprint, partial_trace

DEFAULT_TOLERANCE = 1e-9

HOLDS = "holds"
SATURATED = "saturated"
VIOLATED = "violated"


@dataclass
class InequalityReport:
    """One evaluated ``lhs <= rhs`` claim."""

    name: str
    lhs: float
    rhs: float
    slack: float
    verdict: str
    tolerance: float
    state_fingerprint: str

    def as_dict(self) -> dict:
        return asdict(self)


def classify(slack: float, tolerance: float) -> str:
    if slack < -tolerance:
        return VIOLATED
    if abs(slack) <= tolerance:
        return SATURATED
    return HOLDS


def _report(name, lhs, rhs, tol, fp) -> InequalityReport:
    slack = rhs - lhs
    return InequalityReport(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(slack),
        verdict=classify(slack, tol),
        tolerance=tol,
        state_fingerprint=fp,
    )


@dataclass
class BipartitionTangles:
    """One-vs-rest and two-vs-rest cut tangles of a pure state.

    For a globally pure state the tangle across a cut equals the linear
    entropy of the cut marginal, so no eigensolves are needed.
    ``tau1``/``tau2`` aggregate the single and pair cuts; the per-qubit
    sums each run over the other qubits.
    """

    tau_single: np.ndarray      # (n,)
    tau_pair: np.ndarray        # (n, n), symmetric, zero diagonal
    tau1_per_qubit: np.ndarray  # (n,)
    tau2_per_qubit: np.ndarray  # (n,)
    tau1: float
    tau2: float


def bipartition_tangles(psi: PureState) -> BipartitionTangles:
    """All single- and pair-cut tangles of a pure state of >= 3 qubits."""
    n = psi.n_qubits
    if n < 3:
        raise ValueError("bipartition tangles need at least 3 qubits")
    single = np.empty(n)
    for k in range(n):
        single[k] = measures.linear_entropy(partial_trace(psi, {k}))
    pair = np.zeros((n, n))
    for k in range(n):
        for kp in range(k + 1, n):
            val = measures.linear_entropy(partial_trace(psi, {k, kp}))
            pair[k, kp] = pair[kp, k] = val
    tau1_k = single.sum() - single
    tau2_k = pair.sum(axis=1)
    return BipartitionTangles(
        tau_single=single,
        tau_pair=pair,
        tau1_per_qubit=tau1_k,
        tau2_per_qubit=tau2_k,
        tau1=float(single.sum()),
        tau2=float(pair.sum() / 2.0),
    )


def _pair_sets(psi: PureState) -> list[measures.MeasureSet]:
    return [
        measures.tangles(partial_trace(psi, {0, k})) for k in range(1, psi.n_qubits)
    ]


def _require_multiparty(psi: PureState) -> None:
    if psi.n_qubits < 3:
        raise ValueError("checker needs a pure state of at least 3 qubits")


def check_ckw(psi: PureState, tolerance: float = DEFAULT_TOLERANCE) -> InequalityReport:
    """Shared-tangle monogamy: the pairwise tangles with qubit 0 sum to at
    most the linear entropy of qubit 0's marginal."""
    _require_multiparty(psi)
    sets = _pair_sets(psi)
    return _report(
        "ckw",
        sum(ms.tangle for ms in sets),
        sets[0].s_lin_a,
        tolerance,
        psi.fingerprint(),
    )


def check_dual_monogamy(
    psi: PureState, tolerance: float = DEFAULT_TOLERANCE
) -> InequalityReport:
    """Dual bound: the same marginal entropy is a floor for the summed
    tangles of assistance."""
    _require_multiparty(psi)
    sets = _pair_sets(psi)
    return _report(
        "dual_monogamy",
        sets[0].s_lin_a,
        sum(ms.tangle_assist for ms in sets),
        tolerance,
        psi.fingerprint(),
    )


def check_chain(
    psi: PureState, tolerance: float = DEFAULT_TOLERANCE
) -> tuple[InequalityReport, InequalityReport]:
    """Both sides of the monogamy chain around the shared middle term."""
    return check_ckw(psi, tolerance), check_dual_monogamy(psi, tolerance)


def check_mutual_entropy_sum(
    psi: PureState, tolerance: float = DEFAULT_TOLERANCE
) -> list[InequalityReport]:
    """Bounds on the summed pairwise linear mutual entropies with qubit 0.

    The sum sits between twice and N times the first marginal's linear
    entropy; for 3 and 4 qubits the upper factor tightens to N - 1 and a
    third report is emitted.
    """
    _require_multiparty(psi)
    n = psi.n_qubits
    sets = _pair_sets(psi)
    total = sum(ms.s_mutual for ms in sets)
    s_a = sets[0].s_lin_a
    fp = psi.fingerprint()
    reports = [
        _report("mutual_sum_lower", 2.0 * s_a, total, tolerance, fp),
        _report("mutual_sum_upper", total, n * s_a, tolerance, fp),
    ]
    if n in (3, 4):
        reports.append(
            _report("mutual_sum_tight_upper", total, (n - 1) * s_a, tolerance, fp)
        )
    return reports


def check_mutual_vs_assistance(
    rho: DensityMatrix,
    a: int | None = None,
    b: int | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> InequalityReport:
    """Half the linear mutual entropy never exceeds the tangle of assistance.

    Holds for any two-qubit state, mixed included.
    """
    la, lb = rho.qubit_labels
    if (a is not None and a != la) or (b is not None and b != lb):
        raise ValueError(f"labels {(a, b)} do not match state labels {(la, lb)}")
    ms = measures.tangles(rho)
    fp = fingerprint_of_matrix(rho)
    return _report("mutual_vs_assistance", 0.5 * ms.s_mutual, ms.tangle_assist, tolerance, fp)


def check_tangle_sum_vs_mutual(
    rho: DensityMatrix, tolerance: float = DEFAULT_TOLERANCE
) -> InequalityReport:
    """Tangle plus tangle of assistance dominate the linear mutual entropy."""
    ms = measures.tangles(rho)
    fp = fingerprint_of_matrix(rho)
    return _report(
        "tangle_sum_vs_mutual",
        ms.s_mutual,
        ms.tangle_assist + ms.tangle,
        tolerance,
        fp,
    )


def check_three_qubit_equality(
    psi: PureState, tolerance: float = DEFAULT_TOLERANCE
) -> InequalityReport:
    """For any pure 3-qubit state the four pairwise tangles with qubit 0
    (both kinds) sum exactly to twice its marginal linear entropy."""
    if psi.n_qubits != 3:
        raise ValueError("equality holds for exactly 3 qubits")
    sets = _pair_sets(psi)
    lhs = sum(ms.tangle + ms.tangle_assist for ms in sets)
    return _report(
        "three_qubit_equality", lhs, 2.0 * sets[0].s_lin_a, tolerance, psi.fingerprint()
    )


def _require_pair_cuts(psi: PureState) -> None:
    if psi.n_qubits < 4:
        raise ValueError("pair-cut checkers need at least 4 qubits")


def check_pair_cut_bounds(
    psi: PureState,
    k: int,
    tolerance: float = DEFAULT_TOLERANCE,
    bt: BipartitionTangles | None = None,
) -> tuple[InequalityReport, InequalityReport]:
    """Bounds on the pair-cut excess ``tau2_k - tau1_k`` for one qubit.

    The excess sits between ``(d - 1)`` and ``(N - 3)`` times the qubit's
    own one-vs-rest tangle, where ``d`` is 1 for four qubits and 0 above.
    """
    _require_pair_cuts(psi)
    n = psi.n_qubits
    if not 0 <= k < n:
        raise ValueError("qubit index out of range")
    if bt is None:
        bt = bipartition_tangles(psi)
    delta4 = 1.0 if n == 4 else 0.0
    excess = bt.tau2_per_qubit[k] - bt.tau1_per_qubit[k]
    own = bt.tau_single[k]
    fp = psi.fingerprint()
    lower = _report(f"pair_cut_lower_q{k}", (delta4 - 1.0) * own, excess, tolerance, fp)
    upper = _report(f"pair_cut_upper_q{k}", excess, (n - 3) * own, tolerance, fp)
    return lower, upper


def check_aggregate_bound(
    psi: PureState,
    tolerance: float = DEFAULT_TOLERANCE,
    bt: BipartitionTangles | None = None,
) -> tuple[InequalityReport, InequalityReport]:
    """Aggregate version: total pair-cut tangle vs total single-cut tangle."""
    _require_pair_cuts(psi)
    n = psi.n_qubits
    if bt is None:
        bt = bipartition_tangles(psi)
    delta4 = 1.0 if n == 4 else 0.0
    fp = psi.fingerprint()
    lower = _report(
        "aggregate_lower", 0.5 * (n - 2 + delta4) * bt.tau1, bt.tau2, tolerance, fp
    )
    upper = _report("aggregate_upper", bt.tau2, (n - 2) * bt.tau1, tolerance, fp)
    return lower, upper


def fingerprint_of_matrix(rho: DensityMatrix) -> str:
    return fingerprint(rho.matrix.reshape(-1))


def evaluate_pure_state(
    psi: PureState, tolerance: float = DEFAULT_TOLERANCE
) -> list[InequalityReport]:
    """Every checker applicable at this qubit count, sharing intermediates."""
    _require_multiparty(psi)
    n = psi.n_qubits
    sets = _pair_sets(psi)
    fp = psi.fingerprint()
    s_a = sets[0].s_lin_a
    sum_tangle = sum(ms.tangle for ms in sets)
    sum_assist = sum(ms.tangle_assist for ms in sets)
    sum_mutual = sum(ms.s_mutual for ms in sets)
    reports = [
        _report("ckw", sum_tangle, s_a, tolerance, fp),
        _report("dual_monogamy", s_a, sum_assist, tolerance, fp),
        _report("mutual_sum_lower", 2.0 * s_a, sum_mutual, tolerance, fp),
        _report("mutual_sum_upper", sum_mutual, n * s_a, tolerance, fp),
    ]
    if n in (3, 4):
        reports.append(
            _report("mutual_sum_tight_upper", sum_mutual, (n - 1) * s_a, tolerance, fp)
        )
    if n == 3:
        lhs = sum(ms.tangle + ms.tangle_assist for ms in sets)
        reports.append(_report("three_qubit_equality", lhs, 2.0 * s_a, tolerance, fp))
    if n >= 4:
        bt = bipartition_tangles(psi)
        for k in range(n):
            reports.extend(check_pair_cut_bounds(psi, k, tolerance, bt=bt))
        reports.extend(check_aggregate_bound(psi, tolerance, bt=bt))
    return reports
