"""Multimode amplitude-damping (photon loss) channel.

The channel is applied branch by branch: a loss pattern ``(k_0, ..., k_{m-1})``
selects the Kraus operator ``A_{k_0} x ... x A_{k_{m-1}}`` and the result is the
(sub-normalized) pure state of that branch. For states with fixed total photon
number the branches of different patterns never need to be summed coherently,
so all physical quantities are sums of branch norms.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

from noonqec.errors import InvalidInputError
from noonqec.fock import Occupation, SparseState, compositions

LossPattern = tuple[int, ...]


def check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise InvalidInputError(f"damping parameter gamma={gamma} outside [0, 1]")
    return gamma


def kraus_coefficient(n: int, k: int, gamma: float) -> float:
    """Matrix element ``<n-k|A_k|n>`` of the single-mode loss operator."""
    gamma = check_gamma(gamma)
    if k > n:
        return 0.0
    return math.sqrt(math.comb(n, k) * gamma ** (n - k) * (1.0 - gamma) ** k)


def single_mode_kraus(state: SparseState, mode: int, k: int, gamma: float) -> SparseState:
    """Apply ``A_k`` (loss of ``k`` photons) to one mode of ``state``."""
    gamma = check_gamma(gamma)
    if not 0 <= mode < state.mode_count:
        raise InvalidInputError(f"mode {mode} out of range for {state.mode_count} modes")
    if k < 0:
        raise InvalidInputError("number of lost photons must be non-negative")
    out: dict[Occupation, complex] = {}
    for occ, amp in state.amplitudes.items():
        n = occ[mode]
        if n < k:
            continue
        new = occ[:mode] + (n - k,) + occ[mode + 1 :]
        out[new] = out.get(new, 0j) + kraus_coefficient(n, k, gamma) * amp
    return SparseState._trusted(state.mode_count, out)


def apply_loss_pattern(state: SparseState, pattern: Sequence[int], gamma: float) -> SparseState:
    """Apply the tensor-product Kraus operator selected by ``pattern``."""
    gamma = check_gamma(gamma)
    pattern = tuple(int(k) for k in pattern)
    if len(pattern) != state.mode_count:
        raise InvalidInputError(
            f"loss pattern has {len(pattern)} entries, state has {state.mode_count} modes"
        )
    if any(k < 0 for k in pattern):
        raise InvalidInputError(f"negative entry in loss pattern {pattern}")
    # one pass over the support; the per-mode factors commute
    out: dict[Occupation, complex] = {}
    for occ, amp in state.amplitudes.items():
        coeff = 1.0
        for n, k in zip(occ, pattern):
            if n < k:
                coeff = 0.0
                break
            coeff *= kraus_coefficient(n, k, gamma)
        if coeff == 0.0:
            continue
        new = tuple(n - k for n, k in zip(occ, pattern))
        out[new] = out.get(new, 0j) + coeff * amp
    return SparseState._trusted(state.mode_count, out)


def enumerate_loss_patterns(mode_count: int, weight: int) -> list[LossPattern]:
    """All ways to lose ``weight`` photons over ``mode_count`` modes.

    Ordered lexicographically descending on the first mode, i.e.
    ``(1, 0)`` before ``(0, 1)``.
    """
    if weight < 0:
        raise InvalidInputError("weight must be non-negative")
    if mode_count < 1:
        raise InvalidInputError("mode_count must be >= 1")
    return list(compositions(weight, mode_count))


def patterns_up_to(mode_count: int, max_weight: int) -> list[LossPattern]:
    """Loss patterns of weight ``0..max_weight``, grouped by increasing weight."""
    out: list[LossPattern] = []
    for w in range(max_weight + 1):
        out.extend(enumerate_loss_patterns(mode_count, w))
    return out


def loss_weight_probability(state: SparseState, weight: int, gamma: float) -> float:
    """Probability that exactly ``weight`` photons are lost in total."""
    return math.fsum(
        apply_loss_pattern(state, p, gamma).norm_squared()
        for p in enumerate_loss_patterns(state.mode_count, weight)
    )


def povm_residual(n_max: int, gamma: float) -> float:
    """Largest deviation of ``sum_k <n|A_k^dag A_k|n>`` from 1 over ``n <= n_max``."""
    gamma = check_gamma(gamma)
    if n_max < 0:
        raise InvalidInputError("n_max must be non-negative")
    worst = 0.0
    for n in range(n_max + 1):
        total = math.fsum(kraus_coefficient(n, k, gamma) ** 2 for k in range(n + 1))
        worst = max(worst, abs(total - 1.0))
    return worst
