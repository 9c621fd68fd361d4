"""Campaign machinery behind the CLI: single-state measurement, Haar
fuzzing, optimization-based counterexample hunting, and family tables.

Every campaign is deterministic given its configuration: per-sample
generators are derived from ``(seed, sample_index, stream)`` so results do
not depend on evaluation order or worker count, and serialized documents
exclude wall-clock time so identical configurations produce byte-identical
output.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import measures, schmidt_discriminant
from ._backend import backend_name
from .inequalities import (
    DEFAULT_TOLERANCE,
    InequalityReport,
    VIOLATED,
    bipartition_tangles,
    check_mutual_vs_assistance,
    check_tangle_sum_vs_mutual,
    evaluate_pure_state,
)
from .qlinalg import (
    PureState,
    haar_random_pure,
    partial_trace,
    read_state_file,
    state_family,
)

SCHEMA_MEASURE = "qmonogamy/measure/1"
SCHEMA_CAMPAIGN = "qmonogamy/campaign/1"
SCHEMA_HUNT = "qmonogamy/hunt/1"
SCHEMA_FAMILY = "qmonogamy/family/1"

CSV_COLUMNS = ["checker", "lhs", "rhs", "slack", "verdict", "fingerprint"]

MAX_VIOLATION_DUMPS = 32  # per checker; the count is still reported exactly

_PURE_STREAM = 0
_MIXED_STREAM = 1


@dataclass
class RunConfig:
    """Validated knobs for one campaign."""

    command: str
    n_qubits: int = 4
    samples: int = 1000
    seed: int = 0
    tolerance: float = DEFAULT_TOLERANCE
    output_path: str | None = None
    output_format: str = "json"
    restarts: int = 20
    iterations: int = 2000
    mode: str = "min"
    initial_step: float = 0.15
    start_family: str | None = None
    max_qubits: int = 6
    state_file: str | None = None

    def validate(self) -> "RunConfig":
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 2 <= self.n_qubits <= 10:
            raise ValueError("n_qubits must be in [2, 10]")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.output_format not in ("json", "csv"):
            raise ValueError("output_format must be 'json' or 'csv'")
        if self.mode not in ("min", "max"):
            raise ValueError("mode must be 'min' or 'max'")
        if self.restarts < 1 or self.iterations < 1:
            raise ValueError("restarts and iterations must be >= 1")
        return self


@dataclass
class CheckerStats:
    """Verdict counts and slack extremes for one named checker."""

    holds: int = 0
    saturated: int = 0
    violated: int = 0
    min_slack: float = float("inf")
    max_slack: float = float("-inf")
    worst_lhs: float = 0.0
    worst_rhs: float = 0.0
    worst_verdict: str = ""
    worst_fingerprint: str = ""

    def update(self, report: InequalityReport) -> None:
        setattr(self, report.verdict, getattr(self, report.verdict) + 1)
        if report.slack > self.max_slack:
            self.max_slack = report.slack
        if report.slack < self.min_slack:
            self.min_slack = report.slack
            self.worst_lhs = report.lhs
            self.worst_rhs = report.rhs
            self.worst_verdict = report.verdict
            self.worst_fingerprint = report.state_fingerprint

    def as_dict(self) -> dict:
        return {
            "holds": self.holds,
            "saturated": self.saturated,
            "violated": self.violated,
            "min_slack": self.min_slack,
            "max_slack": self.max_slack,
            "worst": {
                "lhs": self.worst_lhs,
                "rhs": self.worst_rhs,
                "verdict": self.worst_verdict,
                "fingerprint": self.worst_fingerprint,
            },
        }


@dataclass
class CampaignSummary:
    """Merged result of a fuzz campaign.

    ``wall_time_s`` is informational only and deliberately left out of the
    serialized document so reruns stay byte-identical.
    """

    schema: str
    command: str
    n_qubits: int
    samples: int
    seed: int
    tolerance: float
    backend: str
    checkers: dict[str, CheckerStats] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    suppressed_violations: int = 0
    wall_time_s: float = 0.0

    @property
    def total_violations(self) -> int:
        return sum(st.violated for st in self.checkers.values())

    def to_document(self) -> dict:
        return {
            "schema": self.schema,
            "command": self.command,
            "n_qubits": self.n_qubits,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "backend": self.backend,
            "total_violations": self.total_violations,
            "checkers": {k: v.as_dict() for k, v in sorted(self.checkers.items())},
            "violations": self.violations,
            "suppressed_violations": self.suppressed_violations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for name, st in sorted(self.checkers.items()):
            writer.writerow(
                [
                    name,
                    repr(st.worst_lhs),
                    repr(st.worst_rhs),
                    repr(st.min_slack),
                    st.worst_verdict,
                    st.worst_fingerprint,
                ]
            )
        return buf.getvalue()


def _sample_rng(seed: int, index: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([seed, index, stream])


def _hilbert_schmidt_mixed_pair(rng):
    # Two-qubit mixed state induced by tracing half of a Haar 4-qubit state.
    return partial_trace(haar_random_pure(4, rng), {0, 1})


def fuzz_campaign(config: RunConfig) -> CampaignSummary:
    """Haar-fuzz every applicable checker; deterministic given the seed.

    Each sample draws one pure ``n_qubits`` state for the pure-state
    checkers and one random mixed two-qubit state for the mixed-state
    checkers.  A violated verdict stores the full offending amplitude
    vector for replay.
    """
    config.validate()
    if config.n_qubits < 3:
        raise ValueError("fuzzing needs at least 3 qubits")
    start = time.perf_counter()
    summary = CampaignSummary(
        schema=SCHEMA_CAMPAIGN,
        command="fuzz",
        n_qubits=config.n_qubits,
        samples=config.samples,
        seed=config.seed,
        tolerance=config.tolerance,
        backend=backend_name(),
    )
    for index in range(config.samples):
        psi = haar_random_pure(config.n_qubits, _sample_rng(config.seed, index, _PURE_STREAM))
        reports = evaluate_pure_state(psi, config.tolerance)
        _merge_reports(summary, reports, psi.amplitudes)
        rho = _hilbert_schmidt_mixed_pair(_sample_rng(config.seed, index, _MIXED_STREAM))
        mixed_reports = [
            check_mutual_vs_assistance(rho, tolerance=config.tolerance),
            check_tangle_sum_vs_mutual(rho, tolerance=config.tolerance),
        ]
        _merge_reports(summary, mixed_reports, rho.matrix.reshape(-1))
    summary.wall_time_s = time.perf_counter() - start
    return summary


def _merge_reports(summary, reports, amplitudes) -> None:
    for report in reports:
        stats = summary.checkers.setdefault(report.name, CheckerStats())
        stats.update(report)
        if report.verdict == VIOLATED:
            if stats.violated <= MAX_VIOLATION_DUMPS:
                summary.violations.append(
                    {
                        "checker": report.name,
                        "lhs": report.lhs,
                        "rhs": report.rhs,
                        "slack": report.slack,
                        "fingerprint": report.state_fingerprint,
                        "amplitudes": [
                            [float(a.real), float(a.imag)] for a in amplitudes
                        ],
                    }
                )
            else:
                summary.suppressed_violations += 1


@dataclass
class HuntSummary:
    """Best state found by the derivative-free discriminant search."""

    schema: str
    mode: str
    n_qubits: int
    restarts: int
    iterations: int
    seed: int
    tolerance: float
    backend: str
    best_value: float
    best_fingerprint: str
    best_amplitudes: list
    per_restart: list[float]
    floor: float
    ceiling: float
    wall_time_s: float = 0.0

    def to_document(self) -> dict:
        return {
            "schema": self.schema,
            "mode": self.mode,
            "n_qubits": self.n_qubits,
            "restarts": self.restarts,
            "iterations": self.iterations,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "backend": self.backend,
            "best_value": self.best_value,
            "best_fingerprint": self.best_fingerprint,
            "best_amplitudes": self.best_amplitudes,
            "per_restart": self.per_restart,
            "floor": self.floor,
            "ceiling": self.ceiling,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2, sort_keys=True)


def _hunt_objective(amps: np.ndarray) -> float:
    _, total = schmidt_discriminant.state_discriminant(amps)
    return total


def hunt_campaign(config: RunConfig) -> HuntSummary:
    """Random-restart stochastic search for extremal discriminant values.

    Gaussian amplitude perturbation with renormalization, greedy
    acceptance, and step halving after 50 consecutive rejections.  The
    proven floor (-1) and ceiling (number of branch qubits minus 2) are
    asserted; crossing either means the implementation is broken, while a
    negative minimum above the floor is simply reportable data.
    """
    config.validate()
    if config.n_qubits < 5:
        raise ValueError("hunt requires >= 5 qubits")
    start = time.perf_counter()
    n = config.n_qubits
    dim = 1 << n
    m = n - 1
    sign = 1.0 if config.mode == "min" else -1.0
    best_value = float("inf")
    best_amps: np.ndarray | None = None
    per_restart: list[float] = []
    for restart in range(config.restarts):
        rng = _sample_rng(config.seed, restart, 2)
        if config.start_family:
            amps = state_family(config.start_family, n).amplitudes.copy()
        else:
            amps = haar_random_pure(n, rng).amplitudes.copy()
        current = sign * _hunt_objective(amps)
        step = config.initial_step
        rejections = 0
        for _ in range(config.iterations):
            cand = amps + step * (
                rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            )
            cand /= np.linalg.norm(cand)
            value = sign * _hunt_objective(cand)
            if value < current:
                current = value
                amps = cand
                rejections = 0
            else:
                rejections += 1
                if rejections >= 50:
                    step *= 0.5
                    rejections = 0
        per_restart.append(sign * current)
        if current < best_value:
            best_value = current
            best_amps = amps
    assert best_amps is not None
    best = sign * best_value
    floor = -1.0
    ceiling = float(m - 2)
    if best < floor - config.tolerance:
        raise RuntimeError(
            f"discriminant {best} below the proven floor {floor}; kernel bug"
        )
    if best > ceiling + config.tolerance:
        raise RuntimeError(
            f"discriminant {best} above the proven ceiling {ceiling}; kernel bug"
        )
    psi = PureState(n, best_amps)
    summary = HuntSummary(
        schema=SCHEMA_HUNT,
        mode=config.mode,
        n_qubits=n,
        restarts=config.restarts,
        iterations=config.iterations,
        seed=config.seed,
        tolerance=config.tolerance,
        backend=backend_name(),
        best_value=best,
        best_fingerprint=psi.fingerprint(),
        best_amplitudes=[[float(a.real), float(a.imag)] for a in best_amps],
        per_restart=per_restart,
        floor=floor,
        ceiling=ceiling,
    )
    summary.wall_time_s = time.perf_counter() - start
    return summary


def measure_document(psi: PureState, tolerance: float = DEFAULT_TOLERANCE) -> dict:
    """Full measurement report for one state: every pair's measures, the
    per-qubit discriminants, cut tangles, and all checker verdicts."""
    n = psi.n_qubits
    doc: dict = {
        "schema": SCHEMA_MEASURE,
        "n_qubits": n,
        "fingerprint": psi.fingerprint(),
        "backend": backend_name(),
        "tolerance": tolerance,
    }
    pairs = {}
    for a in range(n):
        for b in range(a + 1, n):
            ms = measures.tangles(partial_trace(psi, {a, b}))
            pairs[f"{a},{b}"] = {
                "s_lin_a": ms.s_lin_a,
                "s_lin_b": ms.s_lin_b,
                "s_lin_ab": ms.s_lin_ab,
                "s_mutual": ms.s_mutual,
                "concurrence": ms.concurrence,
                "concurrence_assist": ms.concurrence_assist,
                "tangle": ms.tangle,
                "tangle_assist": ms.tangle_assist,
                "x_split": ms.x_split,
                "y_split": ms.y_split,
            }
    doc["pairs"] = pairs
    per_k, total = schmidt_discriminant.state_discriminant(psi)
    doc["discriminant"] = {
        "per_qubit": {str(k + 1): float(per_k[k]) for k in range(per_k.size)},
        "total": total,
    }
    if n >= 3:
        bt = bipartition_tangles(psi)
        doc["bipartition"] = {
            "tau_single": [float(v) for v in bt.tau_single],
            "tau_pair": [[float(v) for v in row] for row in bt.tau_pair],
            "tau1": bt.tau1,
            "tau2": bt.tau2,
        }
        doc["checks"] = [r.as_dict() for r in evaluate_pure_state(psi, tolerance)]
    else:
        doc["checks"] = []
    return doc


def measure_from_file(path, tolerance: float = DEFAULT_TOLERANCE) -> dict:
    doc = measure_document(read_state_file(path), tolerance)
    doc["source"] = str(path)
    return doc


def measure_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for check in doc["checks"]:
        writer.writerow(
            [
                check["name"],
                repr(check["lhs"]),
                repr(check["rhs"]),
                repr(check["slack"]),
                check["verdict"],
                check["state_fingerprint"],
            ]
        )
    return buf.getvalue()


FAMILY_NAMES = ("GHZ", "W", "product")


def family_table(max_qubits: int, tolerance: float = DEFAULT_TOLERANCE) -> dict:
    """Reference table of every named family at 3..max_qubits qubits."""
    if max_qubits < 3:
        raise ValueError("max_qubits must be >= 3")
    rows = []
    for name in FAMILY_NAMES:
        for n in range(3, max_qubits + 1):
            psi = state_family(name, n)
            sets = [measures.tangles(partial_trace(psi, {0, k})) for k in range(1, n)]
            _, total_d = schmidt_discriminant.state_discriminant(psi)
            reports = evaluate_pure_state(psi, tolerance)
            row = {
                "family": name,
                "n_qubits": n,
                "s_lin_a": sets[0].s_lin_a,
                "sum_tangle": sum(ms.tangle for ms in sets),
                "sum_tangle_assist": sum(ms.tangle_assist for ms in sets),
                "discriminant": total_d,
                "verdicts": {r.name: r.verdict for r in reports},
            }
            if n >= 4:
                bt = bipartition_tangles(psi)
                row["tau1"] = bt.tau1
                row["tau2"] = bt.tau2
            rows.append(row)
    return {"schema": SCHEMA_FAMILY, "tolerance": tolerance, "rows": rows}


def family_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "family",
            "n_qubits",
            "s_lin_a",
            "sum_tangle",
            "sum_tangle_assist",
            "discriminant",
            "tau1",
            "tau2",
            "worst_verdict",
        ]
    )
    for row in doc["rows"]:
        verdicts = row["verdicts"].values()
        worst = (
            VIOLATED
            if VIOLATED in verdicts
            else ("saturated" if "saturated" in verdicts else "holds")
        )
        tau1 = row.get("tau1")
        tau2 = row.get("tau2")
        writer.writerow(
            [
                row["family"],
                row["n_qubits"],
                repr(row["s_lin_a"]),
                repr(row["sum_tangle"]),
                repr(row["sum_tangle_assist"]),
                repr(row["discriminant"]),
                "" if tau1 is None else repr(tau1),
                "" if tau2 is None else repr(tau2),
                worst,
            ]
        )
    return buf.getvalue()
