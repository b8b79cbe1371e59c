"""Knill-Laflamme verification and fidelities of loss codes.

All checks work on corrupted codeword branches ``E_i |c_k>`` where ``E_i``
ranges over multimode loss patterns. The Gram matrix of these branches holds
every ``<c_k| E_i^dag E_j |c_l>`` at once.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from noonqec.codes import Code, logical_state
from noonqec.errors import InvalidInputError, PreconditionError
from noonqec.fock import SparseState, inner_product
from noonqec.loss import LossPattern, apply_loss_pattern, check_gamma, patterns_up_to

DEFAULT_GAMMA = 0.9
DEFAULT_TOL = 1e-9
DEGENERACY_OVERLAP = 1.0 - 1e-10
#: below this a fitted violation is treated as exactly zero
ZERO_VIOLATION = 1e-14

ORTHOGONALITY = "orthogonality"
DEFORMATION = "deformation"


@dataclass(frozen=True)
class Violation:
    pattern_i: LossPattern
    pattern_j: LossPattern
    kind: str
    magnitude: float

    def to_dict(self) -> dict:
        return {
            "pattern_i": list(self.pattern_i),
            "pattern_j": list(self.pattern_j),
            "kind": self.kind,
            "magnitude": self.magnitude,
        }


@dataclass
class KLReport:
    """Outcome of a Knill-Laflamme check up to a given loss weight.

    ``gram[a, b]`` is the ``d x d`` block ``<c_k|E_a^dag E_b|c_l>`` for
    ``patterns[a]``, ``patterns[b]``.
    """

    code_label: str
    gamma: float
    max_weight_checked: int
    patterns: list[LossPattern]
    gram: np.ndarray
    violations: list[Violation]
    max_correctable_weight: int
    degenerate: bool
    _index: dict[LossPattern, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {p: i for i, p in enumerate(self.patterns)}

    @property
    def passed(self) -> bool:
        return not self.violations

    def block(self, pattern_i: Sequence[int], pattern_j: Sequence[int]) -> np.ndarray:
        return self.gram[self._index[tuple(pattern_i)], self._index[tuple(pattern_j)]]

    @property
    def lambda_blocks(self) -> dict[tuple[LossPattern, LossPattern], np.ndarray]:
        return {(p, q): self.gram[a, b] for a, p in enumerate(self.patterns) for b, q in enumerate(self.patterns)}

    def to_dict(self) -> dict:
        return {
            "code_label": self.code_label,
            "gamma": self.gamma,
            "max_weight": self.max_weight_checked,
            "correctable_weight": self.max_correctable_weight,
            "degenerate": self.degenerate,
            "violations": [v.to_dict() for v in self.violations],
        }


def kl_block(code: Code, pattern_i: Sequence[int], pattern_j: Sequence[int], gamma: float) -> np.ndarray:
    """``d x d`` matrix with entries ``<E_i c_k | E_j c_l>``."""
    left = [apply_loss_pattern(w, pattern_i, gamma) for w in code.codewords]
    right = [apply_loss_pattern(w, pattern_j, gamma) for w in code.codewords]
    return np.array([[inner_product(a, b) for b in right] for a in left])


def _branch_gram(code: Code, patterns: list[LossPattern], gamma: float) -> np.ndarray:
    d = code.d
    branches = [apply_loss_pattern(w, p, gamma) for p in patterns for w in code.codewords]
    index: dict[tuple[int, ...], int] = {}
    for b in branches:
        for occ in b.amplitudes:
            index.setdefault(occ, len(index))
    mat = np.zeros((len(branches), max(len(index), 1)), dtype=complex)
    for row, b in enumerate(branches):
        for occ, amp in b.amplitudes.items():
            mat[row, index[occ]] = amp
    gram = mat.conj() @ mat.T
    n = len(patterns)
    # (pattern_a, k, pattern_b, l) -> (a, b, k, l)
    return gram.reshape(n, d, n, d).transpose(0, 2, 1, 3)


def _block_violations(block: np.ndarray) -> tuple[float, float]:
    d = len(block)
    off = block[~np.eye(d, dtype=bool)]
    ortho = float(np.abs(off).max()) if off.size else 0.0
    diag = np.diag(block)
    deform = float(np.abs(diag[:, None] - diag[None, :]).max())
    return ortho, deform


def _violations(gram: np.ndarray, patterns: list[LossPattern], scale: float, tol: float) -> list[Violation]:
    n, _, d, _ = gram.shape
    offdiag = ~np.eye(d, dtype=bool)
    ortho = np.abs(gram[:, :, offdiag]).max(axis=2) if d > 1 else np.zeros((n, n))
    diag = np.diagonal(gram, axis1=2, axis2=3)
    deform = np.abs(diag[:, :, :, None] - diag[:, :, None, :]).max(axis=(2, 3))
    upper = np.triu(np.ones((n, n), dtype=bool))
    out = []
    for kind, values in ((ORTHOGONALITY, ortho), (DEFORMATION, deform)):
        for a, b in zip(*np.nonzero(upper & (values / scale > tol))):
            out.append(Violation(patterns[a], patterns[b], kind, float(values[a, b])))
    return out


def _report_sort_key(v: Violation):
    # increasing weight, then the pattern order used by enumerate_loss_patterns
    return (sum(v.pattern_i), tuple(-k for k in v.pattern_i), sum(v.pattern_j), tuple(-k for k in v.pattern_j), v.kind)


def kl_verify(code: Code, max_weight: int, gamma: float = DEFAULT_GAMMA, tol: float = DEFAULT_TOL) -> KLReport:
    """Check the Knill-Laflamme conditions for all loss patterns up to ``max_weight``.

    For each pair of patterns the off-diagonal codeword entries must vanish
    (orthogonality) and the diagonal entries must agree (non-deformation).
    Entries are compared to ``tol`` after dividing by the trace of the no-loss
    block.
    """
    gamma = check_gamma(gamma)
    if not 0.0 < gamma < 1.0:
        raise InvalidInputError("KL verification needs 0 < gamma < 1")
    if tol <= 0:
        raise InvalidInputError("tol must be positive")
    if max_weight < 0:
        raise InvalidInputError("max_weight must be non-negative")
    patterns = patterns_up_to(code.mode_count, max_weight)
    gram = _branch_gram(code, patterns, gamma)
    scale = float(np.trace(gram[0, 0]).real)
    violations = sorted(_violations(gram, patterns, scale, tol), key=_report_sort_key)

    correctable = max_weight
    for v in violations:
        correctable = min(correctable, max(sum(v.pattern_i), sum(v.pattern_j)) - 1)

    degenerate = _is_degenerate(gram, patterns, correctable)
    return KLReport(code.label, gamma, max_weight, patterns, gram, violations, correctable, degenerate)


def _is_degenerate(gram: np.ndarray, patterns: list[LossPattern], weight_limit: int) -> bool:
    """Distinct same-weight correctable patterns that corrupt every codeword identically."""
    d = gram.shape[2]
    idx = [a for a, p in enumerate(patterns) if sum(p) <= weight_limit]
    for x, a in enumerate(idx):
        for b in idx[x + 1 :]:
            if sum(patterns[a]) != sum(patterns[b]):
                continue
            same = True
            for k in range(d):
                na, nb = gram[a, a, k, k].real, gram[b, b, k, k].real
                if na <= 0 or nb <= 0 or abs(gram[a, b, k, k]) / math.sqrt(na * nb) <= DEGENERACY_OVERLAP:
                    same = False
                    break
            if same:
                return True
    return False


def max_correctable_weight(code: Code, gamma: float = DEFAULT_GAMMA, tol: float = DEFAULT_TOL) -> int:
    """Largest ``t`` such that every loss of up to ``t`` photons is correctable."""
    limit = code.max_photons()
    for w in range(limit + 1):
        report = kl_verify(code, w, gamma, tol)
        if report.violations:
            return report.max_correctable_weight
    return limit


def analytic_fidelity(total_photons: int, t: int, gamma: float) -> float:
    """``sum_{k<=t} C(M,k) gamma^(M-k) (1-gamma)^k`` for an ``M``-photon code correcting ``t`` losses."""
    gamma = check_gamma(gamma)
    if not 0 <= t <= total_photons:
        raise InvalidInputError("need 0 <= t <= total_photons")
    M = total_photons
    return math.fsum(math.comb(M, k) * gamma ** (M - k) * (1.0 - gamma) ** k for k in range(t + 1))


def branch_fidelity(state: SparseState, patterns: Iterable[Sequence[int]], gamma: float) -> float:
    """Total weight of the given loss branches of ``state``."""
    return math.fsum(apply_loss_pattern(state, p, gamma).norm_squared() for p in patterns)


def numeric_fidelity(
    code: Code,
    gamma: float,
    samples: Iterable[Sequence[complex]],
    t: int | None = None,
    tol: float = DEFAULT_TOL,
) -> tuple[float, float]:
    """Min and max recovered fidelity over sampled logical states.

    Once the code satisfies the KL conditions for all losses up to ``t``, the
    optimal recovery returns each such branch to the logical state, so the
    recovered fidelity is the summed norm of those branches.

    Raises:
        PreconditionError: if the KL conditions fail at weight ``t``.
    """
    gamma = check_gamma(gamma)
    if t is None:
        t = max_correctable_weight(code, DEFAULT_GAMMA, tol)
        if t < 0:
            raise PreconditionError(f"{code.label} violates the KL conditions already without loss")
    elif t < 0:
        raise InvalidInputError("t must be non-negative")
    elif kl_verify(code, t, DEFAULT_GAMMA, tol).violations:
        raise PreconditionError(f"{code.label} does not satisfy the KL conditions at loss weight {t}")
    patterns = patterns_up_to(code.mode_count, t)
    values = [branch_fidelity(logical_state(code, c), patterns, gamma) for c in samples]
    if not values:
        raise InvalidInputError("numeric_fidelity needs at least one sample")
    return min(values), max(values)


def pairs_up_to(mode_count: int, max_weight: int) -> list[tuple[LossPattern, LossPattern]]:
    patterns = patterns_up_to(mode_count, max_weight)
    return [(p, q) for a, p in enumerate(patterns) for q in patterns[a:]]


def max_violation(code: Code, pattern_pairs: Iterable[tuple[Sequence[int], Sequence[int]]], gamma: float) -> float:
    """Largest raw orthogonality or deformation violation over ``pattern_pairs``."""
    worst = 0.0
    for p, q in pattern_pairs:
        worst = max(worst, *_block_violations(kl_block(code, p, q, gamma)))
    return worst


def approximate_kl_order(
    code: Code,
    pattern_pairs: Iterable[tuple[Sequence[int], Sequence[int]]],
    gamma_grid: Sequence[float],
) -> float:
    """Leading exponent ``p`` of the KL violation ``v(gamma) ~ (1 - gamma)^p``.

    Fits ``log v = p log x + a + b x`` with ``x = 1 - gamma`` (the linear term
    absorbs the first correction of a polynomial violation) and snaps ``p`` to
    the nearest integer when within 1e-3 of it. Returns ``inf`` when every
    violation is below ``ZERO_VIOLATION``.
    """
    pairs = list(pattern_pairs)
    xs, vs = [], []
    for g in gamma_grid:
        if not 0.0 < g < 1.0:
            raise InvalidInputError("gamma grid values must lie in (0, 1)")
        xs.append(1.0 - g)
        vs.append(max_violation(code, pairs, g))
    if max(vs) < ZERO_VIOLATION:
        return math.inf
    if min(vs) < ZERO_VIOLATION:
        raise InvalidInputError("violation vanishes at some grid points; cannot fit a power law")
    if len(xs) < 3:
        raise InvalidInputError("need at least three gamma values")
    x = np.array(xs)
    design = np.column_stack([np.log(x), np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, np.log(vs), rcond=None)
    p = float(coef[0])
    return float(round(p)) if abs(p - round(p)) < 1e-3 else p


def clean_patterns(report: KLReport) -> list[LossPattern]:
    """Patterns not involved in any KL violation of ``report``."""
    bad = {v.pattern_i for v in report.violations} | {v.pattern_j for v in report.violations}
    return [p for p in report.patterns if p not in bad]


def maximal_consistent_patterns(report: KLReport, tol: float = DEFAULT_TOL) -> list[LossPattern]:
    """Greedy KL-consistent pattern set: add patterns in order while no pair violates."""
    scale = float(np.trace(report.gram[0, 0]).real)
    chosen: list[int] = []
    for a in range(len(report.patterns)):
        ok = True
        for b in chosen + [a]:
            ortho, deform = _block_violations(report.gram[b, a])
            if ortho / scale > tol or deform / scale > tol:
                ok = False
                break
        if ok:
            chosen.append(a)
    return [report.patterns[a] for a in chosen]


def partial_fidelity(
    code: Code,
    gamma: float,
    max_weight: int,
    samples: Iterable[Sequence[complex]],
    strategy: str = "clean",
    tol: float = DEFAULT_TOL,
) -> float:
    """Worst sampled fidelity when only part of the weight-``max_weight`` losses is corrected.

    ``strategy="clean"`` keeps every pattern not implicated in a violation;
    ``"maximal"`` greedily keeps a larger mutually consistent subset.
    """
    report = kl_verify(code, max_weight, DEFAULT_GAMMA, tol)
    if strategy == "clean":
        patterns = clean_patterns(report)
    elif strategy == "maximal":
        patterns = maximal_consistent_patterns(report, tol)
    else:
        raise InvalidInputError(f"unknown strategy {strategy!r}")
    values = [branch_fidelity(logical_state(code, c), patterns, gamma) for c in samples]
    if not values:
        raise InvalidInputError("partial_fidelity needs at least one sample")
    return min(values)


def fit_quadratic_infidelity(gammas: Sequence[float], fidelities: Sequence[float]) -> float:
    """Coefficient ``c`` in ``1 - F = c (1-gamma)^2 + b (1-gamma)^3`` by least squares."""
    x = 1.0 - np.asarray(gammas, dtype=float)
    y = 1.0 - np.asarray(fidelities, dtype=float)
    design = np.column_stack([x**2, x**3])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(coef[0])
