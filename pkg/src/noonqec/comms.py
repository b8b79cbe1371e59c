"""One-way repeater chain with loss-code correction at every station."""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from noonqec.analysis import analytic_fidelity
from noonqec.errors import InvalidInputError

L_ATT_KM = 22.0


@dataclass(frozen=True)
class CommParams:
    """Total distance ``L``, station spacing ``L0`` and attenuation length, all in km."""

    L: float
    L0: float
    N: int
    d: int = 2
    L_att: float = L_ATT_KM

    def __post_init__(self):
        if not self.L > 0:
            raise InvalidInputError("total distance L must be positive")
        if not 0 < self.L0 <= self.L:
            raise InvalidInputError("need 0 < L0 <= L")
        if not self.L_att > 0:
            raise InvalidInputError("attenuation length must be positive")
        if self.N < 1:
            raise InvalidInputError("N must be >= 1")
        if self.d < 2:
            raise InvalidInputError("d must be >= 2")


def gamma_from_distance(L0: float, L_att: float = L_ATT_KM) -> float:
    """Transmission amplitude-damping parameter ``exp(-L0 / L_att)`` of one fibre segment."""
    if L0 < 0:
        raise InvalidInputError("L0 must be non-negative")
    if L_att <= 0:
        raise InvalidInputError("L_att must be positive")
    return math.exp(-L0 / L_att)


def log_success_probability(p: CommParams) -> float:
    """``(L / L0) * log F`` where ``F`` is the per-segment fidelity of an ``N^2``-photon code."""
    gamma = gamma_from_distance(p.L0, p.L_att)
    f = analytic_fidelity(p.N * p.N, p.N - 1, gamma)
    if f <= 0.0:
        return -math.inf
    return (p.L / p.L0) * math.log(f)


def success_probability(p: CommParams) -> float:
    """End-to-end success probability; does not depend on ``d``."""
    return math.exp(log_success_probability(p))


def cost(p: CommParams) -> float:
    """Spatial cost ``N^2 / (P_succ log2(d) L0)``; ``inf`` when ``P_succ`` underflows to 0."""
    log_p = log_success_probability(p)
    if log_p == -math.inf:
        return math.inf
    log_cost = math.log(p.N * p.N) - log_p - math.log(math.log2(p.d)) - math.log(p.L0)
    return math.exp(log_cost) if log_cost < 709.0 else math.inf


def _require(grid: Sequence, name: str) -> list:
    values = list(grid)
    if not values:
        raise InvalidInputError(f"empty {name} grid")
    return values


def fidelity_table(gammas: Iterable[float], Ns: Iterable[int]) -> list[dict]:
    """Rows ``gamma, N, F`` of the worst-case fidelity of the ``N^2``-photon code."""
    gammas, Ns = _require(gammas, "gamma"), _require(Ns, "N")
    return [{"gamma": g, "N": N, "F": analytic_fidelity(N * N, N - 1, g)} for N in Ns for g in gammas]


def psucc_table(L0s: Iterable[float], Ns: Iterable[int], L: float = 1000.0, L_att: float = L_ATT_KM) -> list[dict]:
    L0s, Ns = _require(L0s, "L0"), _require(Ns, "N")
    return [
        {"L0_km": L0, "N": N, "P_succ": success_probability(CommParams(L, L0, N, 2, L_att))}
        for N in Ns
        for L0 in L0s
    ]


def cost_table(
    L0s: Iterable[float], Ns: Iterable[int], ds: Iterable[int], L: float = 1000.0, L_att: float = L_ATT_KM
) -> list[dict]:
    L0s, Ns, ds = _require(L0s, "L0"), _require(Ns, "N"), _require(ds, "d")
    return [
        {"L0_km": L0, "N": N, "d": d, "cost": cost(CommParams(L, L0, N, d, L_att))}
        for N in Ns
        for d in ds
        for L0 in L0s
    ]


SWEEP_COLUMNS = {
    "fidelity": ("gamma", "N", "F"),
    "psucc": ("L0_km", "N", "P_succ"),
    "cost": ("L0_km", "N", "d", "cost"),
}


def sweep(kind: str, **grid) -> list[dict]:
    """Dispatch to the table builder for ``kind`` in ``fidelity``, ``psucc``, ``cost``."""
    if kind == "fidelity":
        return fidelity_table(grid["gammas"], grid["Ns"])
    if kind == "psucc":
        return psucc_table(grid["L0s"], grid["Ns"], grid.get("L", 1000.0), grid.get("L_att", L_ATT_KM))
    if kind == "cost":
        return cost_table(grid["L0s"], grid["Ns"], grid["ds"], grid.get("L", 1000.0), grid.get("L_att", L_ATT_KM))
    raise InvalidInputError(f"unknown sweep kind {kind!r}")


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def to_csv(kind: str, rows: Sequence[dict]) -> str:
    """CSV with a header row; floats written with 17 significant digits."""
    columns = SWEEP_COLUMNS[kind]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()

