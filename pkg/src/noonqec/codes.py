"""NOON-state loss codes and the reference codes they are compared against."""

from __future__ import annotations

import cmath
import math
import re
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from noonqec.errors import InvalidInputError, UnknownCodeError
from noonqec.fock import (
    SparseState,
    basis_state,
    combine,
    inner_product,
    tensor_power,
)
from noonqec.optics import symmetric_splitter

ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class Code:
    """Orthonormal codewords spanning a code space.

    Attributes:
        codewords: the logical basis states ``|0>, ..., |d-1>``.
        label: short identifier used in reports and the CLI.
        block_structure: ``(blocks, modes_per_block)`` for block codes.
        total_photons: fixed photon number of every basis term, if any.
    """

    codewords: tuple[SparseState, ...]
    label: str
    block_structure: tuple[int, int] | None = None
    total_photons: int | None = None

    def __post_init__(self):
        words = tuple(self.codewords)
        object.__setattr__(self, "codewords", words)
        if len(words) < 2:
            raise InvalidInputError("a code needs at least two codewords")
        m = words[0].mode_count
        if any(w.mode_count != m for w in words):
            raise InvalidInputError("codewords differ in mode count")
        for i, a in enumerate(words):
            for j, b in enumerate(words[i:], i):
                target = 1.0 if i == j else 0.0
                if abs(inner_product(a, b) - target) > ORTHO_TOL:
                    raise InvalidInputError(f"codewords {i}, {j} of {self.label} are not orthonormal")
        if self.total_photons is not None:
            for w in words:
                if w.photon_numbers() != {self.total_photons}:
                    raise InvalidInputError(f"{self.label}: codeword support is not at {self.total_photons} photons")
        if self.block_structure is not None:
            blocks, per_block = self.block_structure
            if blocks * per_block != m:
                raise InvalidInputError(f"block structure {self.block_structure} does not cover {m} modes")

    @property
    def d(self) -> int:
        return len(self.codewords)

    @property
    def mode_count(self) -> int:
        return self.codewords[0].mode_count

    def fixed_photon_number(self) -> int | None:
        """Common photon number of all codewords, inferred when not declared."""
        if self.total_photons is not None:
            return self.total_photons
        numbers = set().union(*(w.photon_numbers() for w in self.codewords))
        return numbers.pop() if len(numbers) == 1 else None

    def max_photons(self) -> int:
        return max(max(w.photon_numbers()) for w in self.codewords)


def fix_global_phase(state: SparseState) -> SparseState:
    """Rotate so the amplitude of the lexicographically smallest basis state is real positive."""
    if state.is_zero():
        return state
    _, amp = next(iter(state))
    return state.scale(abs(amp) / amp)


def _roots(d: int) -> list[complex]:
    return [cmath.exp(2j * math.pi * j / d) for j in range(d)]


def _one_mode_occupied(N: int, d: int, j: int) -> SparseState:
    occ = [0] * d
    occ[j] = N
    return basis_state(occ)


def splitter_inputs(N: int, d: int) -> list[SparseState]:
    """``S_d`` applied to each of the ``d`` single-mode-occupied ``N``-photon states."""
    return [symmetric_splitter(_one_mode_occupied(N, d, j), range(d)) for j in range(d)]


def noon_blocks(N: int, d: int) -> list[SparseState]:
    """Per-block states ``|k~> = d^{-1/2} sum_j w^{kj} S_d[N e_j]``, ``w = exp(2 pi i / d)``."""
    if N < 1 or d < 2:
        raise InvalidInputError("need N >= 1 and d >= 2")
    inputs = splitter_inputs(N, d)
    w = _roots(d)
    scale = 1.0 / math.sqrt(d)
    return [combine((scale * w[(k * j) % d], inputs[j]) for j in range(d)) for k in range(d)]


def alternative_blocks(N: int, d: int) -> list[SparseState]:
    """Per-block states ``d^{-1/2} sum_j w^{kj} |N e_j>`` (no splitter)."""
    if N < 1 or d < 2:
        raise InvalidInputError("need N >= 1 and d >= 2")
    w = _roots(d)
    scale = 1.0 / math.sqrt(d)
    return [
        combine((scale * w[(k * j) % d], _one_mode_occupied(N, d, j)) for j in range(d)) for k in range(d)
    ]


def _block_code(blocks: list[SparseState], n_blocks: int, label: str, N: int) -> Code:
    d = len(blocks)
    words = tuple(fix_global_phase(tensor_power(b, n_blocks)) for b in blocks)
    return Code(words, label, block_structure=(n_blocks, d), total_photons=N * n_blocks)


def noon_code(N: int, d: int, blocks: int | None = None) -> Code:
    """Qudit NOON code: ``d`` codewords ``|k~>^{(x) N}`` on ``d N`` modes with ``N^2`` photons.

    ``blocks`` overrides the number of blocks (default ``N``); fewer blocks than
    ``N`` gives a weaker code, e.g. the six-photon two-block ``N = 3`` variant.
    """
    n_blocks = N if blocks is None else blocks
    if n_blocks < 1:
        raise InvalidInputError("need at least one block")
    label = f"noon({N},{d})" if blocks is None else f"noon({N},{d})x{n_blocks}"
    return _block_code(noon_blocks(N, d), n_blocks, label, N)


def noon_code_alternative(N: int, d: int) -> Code:
    """Block code built directly from multimode NOON-type states, without the splitter."""
    return _block_code(alternative_blocks(N, d), N, f"noon_alt({N},{d})", N)


def _literal(label: str, *words: dict, photons: int | None = None) -> Code:
    states = []
    for table in words:
        m = len(next(iter(table)))
        states.append(SparseState(m, {tuple(int(c) for c in key): amp for key, amp in table.items()}))
    return Code(tuple(states), label, total_photons=photons)


_S2 = 1.0 / math.sqrt(2.0)
_S3 = 1.0 / math.sqrt(3.0)


def _leung4() -> Code:
    return _literal("leung4", {"40": _S2, "04": _S2}, {"22": 1.0}, photons=4)


def _leung7() -> Code:
    return _literal("leung7", {"70": _S2, "16": _S2}, {"52": _S2, "34": _S2}, photons=7)


def _bosonic9() -> Code:
    h, s = 0.5, math.sqrt(3.0) / 2.0
    return _literal("bosonic9", {"90": h, "36": s}, {"09": h, "63": s}, photons=9)


def _banaszek3() -> Code:
    return _literal("banaszek3", {"300": _S3, "030": _S3, "003": _S3}, {"111": 1.0}, photons=3)


def _qpc22() -> Code:
    return _literal(
        "qpc22",
        {"10101010": _S2, "01010101": _S2},
        {"10100101": _S2, "01011010": _S2},
        photons=4,
    )


def _approx_leung() -> Code:
    return _literal("approx_leung", {"0000": _S2, "1111": _S2}, {"0011": _S2, "1100": _S2})


def _naive2() -> Code:
    return _literal("naive2", {"20": _S2, "02": _S2}, {"11": 1.0}, photons=2)


def _fake2() -> Code:
    return _literal(
        "fake2",
        {"20": 0.5, "02": 0.5, "11": _S2},
        {"20": 0.5, "02": 0.5, "11": -_S2},
        photons=2,
    )


def _twoblock_n3() -> Code:
    code = noon_code(3, 2, blocks=2)
    return Code(code.codewords, "twoblock_n3", code.block_structure, code.total_photons)


def multirail(d: int) -> Code:
    """One photon in one of ``d`` modes: detects, but cannot correct, a loss."""
    if d < 2:
        raise InvalidInputError("multiple-rail encoding needs d >= 2")
    words = tuple(basis_state([int(i == k) for i in range(d)]) for k in range(d))
    return Code(words, f"multirail({d})", total_photons=1)


REFERENCE_CODES: dict[str, Callable[[], Code]] = {
    "leung4": _leung4,
    "leung7": _leung7,
    "bosonic9": _bosonic9,
    "banaszek3": _banaszek3,
    "qpc22": _qpc22,
    "approx_leung": _approx_leung,
    "naive2": _naive2,
    "fake2": _fake2,
    "twoblock_n3": _twoblock_n3,
}

_PARAM_LABEL = re.compile(r"^(noon|noon_alt|multirail)\((\d+)(?:,(\d+))?\)$")


def reference_code(label: str, d: int | None = None) -> Code:
    """Look up a reference code by label; ``multirail`` needs ``d`` (or ``"multirail(3)"``)."""
    if label == "multirail":
        if d is None:
            raise InvalidInputError("multirail needs a dimension d")
        return multirail(d)
    if label in REFERENCE_CODES:
        return REFERENCE_CODES[label]()
    match = _PARAM_LABEL.match(label.replace(" ", ""))
    if match:
        kind, a, b = match.groups()
        if kind == "multirail" and b is None:
            return multirail(int(a))
        if kind == "noon" and b is not None:
            return noon_code(int(a), int(b))
        if kind == "noon_alt" and b is not None:
            return noon_code_alternative(int(a), int(b))
    raise UnknownCodeError(label)


def catalog() -> list[Code]:
    """Codes shown by ``list-codes``: the reference zoo and small NOON codes."""
    codes = [REFERENCE_CODES[label]() for label in REFERENCE_CODES]
    codes += [multirail(d) for d in (2, 3, 4)]
    codes += [noon_code(N, d) for N, d in ((2, 2), (3, 2), (2, 3))]
    codes += [noon_code_alternative(N, d) for N, d in ((2, 2), (3, 2), (2, 3))]
    return codes


def logical_state(code: Code, c: Sequence[complex]) -> SparseState:
    """Encode coefficients ``c`` as ``sum_i c_i |c_i>``."""
    c = [complex(x) for x in c]
    if len(c) != code.d:
        raise InvalidInputError(f"expected {code.d} coefficients, got {len(c)}")
    if abs(math.fsum(abs(x) ** 2 for x in c) - 1.0) > 1e-12:
        raise InvalidInputError("logical coefficients are not normalized")
    return combine(zip(c, code.codewords))


def random_coefficients(d: int, samples: int, rng: np.random.Generator | int | None = None) -> list[np.ndarray]:
    """Unitarily invariant random unit vectors in ``C^d``."""
    rng = np.random.default_rng(rng)
    z = rng.normal(size=(samples, d)) + 1j * rng.normal(size=(samples, d))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return list(z)


def blockwise_splitter(code: Code, direction: str = "forward") -> Code:
    """Apply ``S_d`` (or its inverse) to every block of every codeword.

    No phase fixing is applied, so ``forward`` followed by ``inverse`` is the
    identity.
    """
    if code.block_structure is None:
        raise InvalidInputError(f"{code.label} has no block structure")
    if direction not in ("forward", "inverse"):
        raise InvalidInputError("direction must be 'forward' or 'inverse'")
    blocks, per_block = code.block_structure
    words = []
    for w in code.codewords:
        for b in range(blocks):
            w = symmetric_splitter(w, range(b * per_block, (b + 1) * per_block), inverse=direction == "inverse")
        words.append(w)
    suffix = "S" if direction == "forward" else "S^-1"
    return Code(tuple(words), f"{suffix}[{code.label}]", code.block_structure, code.total_photons)
