"""Heralded preparation of an arbitrary logical qubit of the four-photon code.

Pipeline: two NOON-type blocks with one ancilla photon each are symmetrized
(an ideal operation here), ancilla pairs pass tunable beam splitters, the
ancillas are projected onto the detection pattern ``1001`` and the last
logical mode gets a ``pi/2`` phase shift.

Mode layout after symmetrization: logical modes ``0..3`` followed by the
ancillas ``a1, b1, a2, b2`` (modes ``4..7``).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from noonqec.codes import alternative_blocks, logical_state, noon_code
from noonqec.errors import InvalidInputError
from noonqec.fock import (
    SparseState,
    basis_state,
    compositions,
    inner_product,
    normalize,
    permute_modes,
    tensor_product,
)
from noonqec.optics import HALF, beam_splitter, phase_shift

LOGICAL_MODES = 4
ANCILLA_PAIRS = ((4, 5), (6, 7))
HERALD = (1, 0, 0, 1)


@dataclass(frozen=True)
class PrepResult:
    output_state: SparseState
    success_probability: float
    target_coefficients: tuple[float, float]
    t: float

    def fidelity_to_target(self) -> float:
        """``|<target|output>|^2`` with the two-block NOON target."""
        if self.success_probability == 0.0:
            return 0.0
        return abs(inner_product(alternative_target(*self.target_coefficients), self.output_state)) ** 2


def target_coefficients(t: float) -> tuple[float, float]:
    """Logical amplitudes ``((1-t), -t) / sqrt(t^2 + (1-t)^2)`` heralded at transmittance ``t``."""
    norm = math.hypot(t, 1.0 - t)
    return (1.0 - t) / norm, -t / norm


def alternative_target(c0: complex, c1: complex) -> SparseState:
    """``c0 [NOON+]^2 + c1 [NOON-]^2`` on four modes."""
    plus, minus = alternative_blocks(2, 2)
    return c0 * tensor_product(plus, plus) + c1 * tensor_product(minus, minus)


def symmetrize(phi1: SparseState, phi2: SparseState) -> SparseState:
    """Normalized ``|phi1>|phi2> + |phi2>|phi1>`` on twice the modes."""
    if phi1.mode_count != phi2.mode_count:
        raise InvalidInputError("symmetrizer inputs must have equal mode counts")
    return normalize(tensor_product(phi1, phi2) + tensor_product(phi2, phi1))


def resource_states() -> tuple[SparseState, SparseState]:
    """``|0>NOON+|1>`` and ``|1>NOON-|0>`` (ancilla, two logical modes, ancilla)."""
    plus, minus = alternative_blocks(2, 2)
    psi1 = tensor_product(tensor_product(basis_state((0,)), plus), basis_state((1,)))
    psi2 = tensor_product(tensor_product(basis_state((1,)), minus), basis_state((0,)))
    return psi1, psi2


def pre_measurement_state(t: float) -> SparseState:
    """Eight-mode state just before the ancilla detectors."""
    if not 0.0 <= t <= 1.0:
        raise InvalidInputError(f"transmittance t={t} outside [0, 1]")
    psi1, psi2 = resource_states()
    sym = symmetrize(psi1, psi2)
    # (a1 L1 L2 b1 | a2 L3 L4 b2) -> (L1 L2 L3 L4 | a1 b1 a2 b2)
    state = permute_modes(sym, (1, 2, 5, 6, 0, 3, 4, 7))
    # single photon: |10> -> sqrt(t)|10> + sqrt(1-t)|01>, i.e. amplitude transmittance sqrt(1-t)
    for pair in ANCILLA_PAIRS:
        state = beam_splitter(state, pair, math.sqrt(1.0 - t))
    return state


def project_ancillas(state: SparseState, outcome: Sequence[int]) -> SparseState:
    """Unnormalized logical-mode state conditioned on the ancilla counts ``outcome``."""
    outcome = tuple(outcome)
    amps = {occ[:LOGICAL_MODES]: amp for occ, amp in state.amplitudes.items() if occ[LOGICAL_MODES:] == outcome}
    return SparseState(LOGICAL_MODES, amps)


def outcome_probabilities(t: float) -> dict[tuple[int, ...], float]:
    """Probability of every ancilla detection pattern carrying the two ancilla photons."""
    state = pre_measurement_state(t)
    return {
        outcome: project_ancillas(state, outcome).norm_squared()
        for outcome in compositions(2, len(HERALD))
    }


def prep_logical_qubit(t: float) -> PrepResult:
    """Run the heralded preparation at beam-splitter transmittance ``t``."""
    projected = project_ancillas(pre_measurement_state(t), HERALD)
    p_success = projected.norm_squared()
    out = phase_shift(normalize(projected), LOGICAL_MODES - 1, math.pi / 2)
    return PrepResult(out, p_success, target_coefficients(t), t)


def finish_to_standard_code(result: PrepResult) -> SparseState:
    """50:50 beam splitter on each two-mode block, giving a state of the standard ``N=2`` code."""
    state = result.output_state
    for pair in ((0, 1), (2, 3)):
        state = beam_splitter(state, pair, HALF)
    return state


def standard_target(result: PrepResult) -> SparseState:
    return logical_state(noon_code(2, 2), result.target_coefficients)
