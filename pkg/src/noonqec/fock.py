"""Sparse pure states of bosonic modes in the occupation-number (Fock) basis.

A state is a map from occupation tuples ``(n_0, ..., n_{m-1})`` to complex
amplitudes. Every operation returns a new state; instances are never mutated
after construction, so they can be shared freely between threads.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from functools import lru_cache
from types import MappingProxyType

from noonqec.errors import InvalidInputError, NormalizationError

Occupation = tuple[int, ...]

#: amplitudes with magnitude below this are dropped
PRUNE_EPS = 1e-14


def _as_occupation(occupations: Iterable[int]) -> Occupation:
    occ = tuple(int(n) for n in occupations)
    if not occ:
        raise InvalidInputError("an occupation vector needs at least one mode")
    if any(n < 0 for n in occ):
        raise InvalidInputError(f"negative occupation in {occ}")
    return occ


class SparseState:
    """Complex amplitudes over Fock basis states of a fixed number of modes.

    Args:
        mode_count: number of optical modes ``m``.
        amplitudes: mapping from occupation tuples of length ``m`` to amplitudes.
            Entries with ``|amp| < PRUNE_EPS`` are discarded.
    """

    __slots__ = ("_mode_count", "_amps")
    # make numpy scalars defer to __rmul__ instead of broadcasting over the state
    __array_ufunc__ = None

    def __init__(self, mode_count: int, amplitudes: Mapping[Sequence[int], complex] | None = None):
        if mode_count < 1:
            raise InvalidInputError("mode_count must be >= 1")
        amps: dict[Occupation, complex] = {}
        for occ, amp in (amplitudes or {}).items():
            key = _as_occupation(occ)
            if len(key) != mode_count:
                raise InvalidInputError(f"occupation {key} does not have {mode_count} modes")
            amp = complex(amp)
            if abs(amp) >= PRUNE_EPS:
                amps[key] = amps.get(key, 0j) + amp
        self._mode_count = mode_count
        self._amps = MappingProxyType(amps)

    @classmethod
    def _trusted(cls, mode_count: int, amps: dict[Occupation, complex]) -> SparseState:
        # skips validation; callers guarantee keys have the right length
        obj = cls.__new__(cls)
        obj._mode_count = mode_count
        obj._amps = MappingProxyType({k: v for k, v in amps.items() if abs(v) >= PRUNE_EPS})
        return obj

    @property
    def mode_count(self) -> int:
        return self._mode_count

    @property
    def amplitudes(self) -> Mapping[Occupation, complex]:
        return self._amps

    def __len__(self) -> int:
        return len(self._amps)

    def __iter__(self) -> Iterator[tuple[Occupation, complex]]:
        """Iterate ``(occupation, amplitude)`` pairs in lexicographic order."""
        for occ in sorted(self._amps):
            yield occ, self._amps[occ]

    def __getitem__(self, occupations: Sequence[int]) -> complex:
        return self._amps.get(tuple(occupations), 0j)

    def __repr__(self) -> str:
        terms = " + ".join(f"({amp:.6g})|{''.join(map(str, occ))}>" for occ, amp in list(self)[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"SparseState(m={self._mode_count}: {terms or '0'}{more})"

    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self._amps.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def is_zero(self) -> bool:
        return not self._amps

    def photon_numbers(self) -> set[int]:
        """Set of total photon numbers present in the support."""
        return {sum(occ) for occ in self._amps}

    def scale(self, factor: complex) -> SparseState:
        return SparseState._trusted(self._mode_count, {k: factor * v for k, v in self._amps.items()})

    def __mul__(self, factor: complex) -> SparseState:
        return self.scale(factor)

    __rmul__ = __mul__

    def __add__(self, other: SparseState) -> SparseState:
        return combine([(1, self), (1, other)])

    def __sub__(self, other: SparseState) -> SparseState:
        return combine([(1, self), (-1, other)])

    def __neg__(self) -> SparseState:
        return self.scale(-1)

    def allclose(self, other: SparseState, atol: float = 1e-12) -> bool:
        """Amplitude-wise comparison (no global-phase freedom)."""
        if other.mode_count != self._mode_count:
            return False
        keys = set(self._amps) | set(other._amps)
        return all(abs(self[k] - other[k]) <= atol for k in keys)


@lru_cache(maxsize=None)
def compositions(total: int, parts: int) -> tuple[Occupation, ...]:
    """All occupation tuples of length ``parts`` summing to ``total``.

    Order is lexicographically descending: ``(1, 0)`` comes before ``(0, 1)``.
    """
    if parts == 1:
        return ((total,),)
    return tuple(
        (first,) + rest for first in range(total, -1, -1) for rest in compositions(total - first, parts - 1)
    )


def basis_state(occupations: Sequence[int]) -> SparseState:
    """Unit-norm Fock state with all weight on ``occupations``."""
    occ = _as_occupation(occupations)
    return SparseState._trusted(len(occ), {occ: 1.0 + 0j})


def zero_state(mode_count: int) -> SparseState:
    return SparseState(mode_count)


def combine(terms: Iterable[tuple[complex, SparseState]]) -> SparseState:
    """Linear combination ``sum_i c_i |psi_i>``; the result is not normalized."""
    terms = list(terms)
    if not terms:
        raise InvalidInputError("combine needs at least one term")
    m = terms[0][1].mode_count
    acc: dict[Occupation, complex] = {}
    for coeff, state in terms:
        if state.mode_count != m:
            raise InvalidInputError(f"mode_count mismatch: {state.mode_count} != {m}")
        for occ, amp in state.amplitudes.items():
            acc[occ] = acc.get(occ, 0j) + coeff * amp
    return SparseState._trusted(m, acc)


def inner_product(a: SparseState, b: SparseState) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    if a.mode_count != b.mode_count:
        raise InvalidInputError(f"mode_count mismatch: {a.mode_count} != {b.mode_count}")
    small, large = (a.amplitudes, b.amplitudes) if len(a) <= len(b) else (b.amplitudes, a.amplitudes)
    total = 0j
    for occ in small:
        if occ in large:
            total += a.amplitudes[occ].conjugate() * b.amplitudes[occ]
    return total


def tensor_product(a: SparseState, b: SparseState) -> SparseState:
    """``|a>|b>`` with the modes of ``b`` appended after those of ``a``."""
    amps = {
        occ_a + occ_b: amp_a * amp_b
        for occ_a, amp_a in a.amplitudes.items()
        for occ_b, amp_b in b.amplitudes.items()
    }
    return SparseState._trusted(a.mode_count + b.mode_count, amps)


def tensor_power(a: SparseState, n: int) -> SparseState:
    if n < 1:
        raise InvalidInputError("tensor power needs n >= 1")
    out = a
    for _ in range(n - 1):
        out = tensor_product(out, a)
    return out


def normalize(a: SparseState) -> SparseState:
    norm = a.norm()
    if norm == 0.0:
        raise NormalizationError("cannot normalize the zero state")
    return a.scale(1.0 / norm)


def permute_modes(a: SparseState, order: Sequence[int]) -> SparseState:
    """Reorder modes so that new mode ``i`` is old mode ``order[i]``."""
    if sorted(order) != list(range(a.mode_count)):
        raise InvalidInputError(f"{order} is not a permutation of {a.mode_count} modes")
    return SparseState._trusted(
        a.mode_count, {tuple(occ[i] for i in order): amp for occ, amp in a.amplitudes.items()}
    )


def overlap_up_to_phase(a: SparseState, b: SparseState) -> float:
    """``|<a|b>| / (|a| |b|)``; 1 means equal as rays."""
    na, nb = a.norm(), b.norm()
    if na == 0.0 or nb == 0.0:
        return 0.0
    return abs(inner_product(a, b)) / (na * nb)


def format_state(state: SparseState) -> str:
    """Text form: one ``n1 n2 ... nm <re> <im>`` line per amplitude, sorted by occupation."""
    lines = [
        " ".join(map(str, occ)) + f" {amp.real:.17g} {amp.imag:.17g}" for occ, amp in state
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_state(text: str, mode_count: int | None = None) -> SparseState:
    """Inverse of :func:`format_state`. Blank lines and ``#`` comments are skipped."""
    amps: dict[Occupation, complex] = {}
    width = mode_count
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) < 3:
            raise InvalidInputError(f"line {lineno}: expected occupations followed by re im")
        try:
            occ = _as_occupation(int(f) for f in fields[:-2])
            amp = complex(float(fields[-2]), float(fields[-1]))
        except ValueError as exc:
            raise InvalidInputError(f"line {lineno}: {exc}") from exc
        if width is None:
            width = len(occ)
        elif len(occ) != width:
            raise InvalidInputError(f"line {lineno}: expected {width} modes, got {len(occ)}")
        amps[occ] = amps.get(occ, 0j) + amp
    if width is None:
        raise InvalidInputError("empty state text and no mode_count given")
    return SparseState(width, amps)
