"""Passive linear optics on sparse Fock states.

Convention for an ``n``-port matrix ``U``: the creation operator of input
mode ``l`` is replaced by ``sum_k U[k, l] a_k^dag``. The symmetric splitter
``U[k, l] = exp(2 pi i k l / d) / sqrt(d)`` is symmetric, so row/column
conventions coincide for it.

The two-mode beam splitter with amplitude transmittance ``t`` and
reflectance ``r = sqrt(1 - t^2)`` is the real symmetric matrix
``[[r, t], [t, -r]]``; it is its own inverse and at ``t = r = 1/sqrt(2)``
equals the ``d = 2`` symmetric splitter.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from functools import lru_cache

import numpy as np

from noonqec.errors import InvalidInputError
from noonqec.fock import Occupation, SparseState, compositions

HALF = 1.0 / math.sqrt(2.0)


def _check_modes(state: SparseState, modes: Sequence[int]) -> tuple[int, ...]:
    modes = tuple(int(i) for i in modes)
    if len(set(modes)) != len(modes):
        raise InvalidInputError(f"modes {modes} are not distinct")
    for i in modes:
        if not 0 <= i < state.mode_count:
            raise InvalidInputError(f"mode {i} out of range for {state.mode_count} modes")
    return modes


def _apply_local(state: SparseState, modes: tuple[int, ...], local) -> SparseState:
    """Apply a map ``sub-occupation -> {sub-occupation: amp}`` on the chosen modes."""
    out: dict[Occupation, complex] = {}
    for occ, amp in state.amplitudes.items():
        sub = tuple(occ[i] for i in modes)
        for new_sub, coeff in local(sub).items():
            new = list(occ)
            for i, n in zip(modes, new_sub):
                new[i] = n
            key = tuple(new)
            out[key] = out.get(key, 0j) + coeff * amp
    return SparseState._trusted(state.mode_count, out)


@lru_cache(maxsize=4096)
def _bs_fock(m: int, n: int, t: float) -> dict[tuple[int, int], float]:
    r = math.sqrt(max(0.0, 1.0 - t * t))
    out: dict[tuple[int, int], float] = {}
    for j in range(m + 1):
        for k in range(n + 1):
            p = j + k
            coeff = (
                math.sqrt(math.factorial(p) * math.factorial(m + n - p) / (math.factorial(m) * math.factorial(n)))
                * math.comb(m, j)
                * math.comb(n, k)
                * (-1) ** k
                * t ** (n + j - k)
                * r ** (m - j + k)
            )
            key = (m + n - p, p)
            out[key] = out.get(key, 0.0) + coeff
    return out


def beam_splitter(state: SparseState, mode_pair: Sequence[int], t: float = HALF) -> SparseState:
    """Two-mode beam splitter with amplitude transmittance ``t`` on ``mode_pair``.

    Uses the explicit double sum over photons routed from each input port; the
    50:50 device is ``t = 1/sqrt(2)``.
    """
    if len(mode_pair) != 2:
        raise InvalidInputError("beam splitter acts on exactly two modes")
    modes = _check_modes(state, mode_pair)
    if not 0.0 <= t <= 1.0:
        raise InvalidInputError(f"transmittance {t} outside [0, 1]")
    return _apply_local(state, modes, lambda sub: _bs_fock(sub[0], sub[1], float(t)))


def beam_splitter_matrix(t: float = HALF) -> np.ndarray:
    """Creation-operator matrix equivalent to :func:`beam_splitter`."""
    r = math.sqrt(max(0.0, 1.0 - t * t))
    return np.array([[r, t], [t, -r]], dtype=complex)


def noon_expansion(N: int, sign: int = 1) -> SparseState:
    """Closed form of the 50:50 splitter on ``|N0>`` (``sign=+1``) or ``|0N>`` (``sign=-1``)."""
    if N < 1:
        raise InvalidInputError("N must be >= 1")
    if sign not in (1, -1):
        raise InvalidInputError("sign must be +1 or -1")
    pref = HALF**N
    return SparseState(2, {(N - j, j): pref * sign**j * math.sqrt(math.comb(N, j)) for j in range(N + 1)})


def symmetric_splitter_matrix(d: int, origin: int = 0) -> np.ndarray:
    """``d``-port symmetric splitter ``U[k, l] = exp(2 pi i (k+o)(l+o) / d) / sqrt(d)``.

    ``origin`` selects 0- or 1-based mode labels; 0 gives the standard
    tritter outputs (``T[|200>]`` has all-positive amplitudes).
    """
    if d < 2:
        raise InvalidInputError("a multiport needs d >= 2")
    if origin not in (0, 1):
        raise InvalidInputError("origin must be 0 or 1")
    idx = np.arange(d) + origin
    return np.exp(2j * np.pi * np.outer(idx, idx) / d) / math.sqrt(d)


def is_unitary(U: np.ndarray, atol: float = 1e-12) -> bool:
    U = np.asarray(U)
    return U.ndim == 2 and U.shape[0] == U.shape[1] and np.allclose(U @ U.conj().T, np.eye(len(U)), atol=atol)


def _multiport_fock(sub: Occupation, U: np.ndarray) -> dict[Occupation, complex]:
    # expand prod_l (sum_k U[k,l] a_k^dag)^{n_l} as a polynomial in output creation operators
    d = len(sub)
    poly: dict[Occupation, complex] = {(0,) * d: 1.0 + 0j}
    for l, n_l in enumerate(sub):
        column = [(k, complex(U[k, l])) for k in range(d) if U[k, l] != 0]
        for _ in range(n_l):
            nxt: dict[Occupation, complex] = {}
            for mono, c in poly.items():
                for k, u in column:
                    key = mono[:k] + (mono[k] + 1,) + mono[k + 1 :]
                    nxt[key] = nxt.get(key, 0j) + c * u
            poly = nxt
    norm_in = math.prod(math.factorial(n) for n in sub)
    return {
        mono: c * math.sqrt(math.prod(math.factorial(e) for e in mono) / norm_in)
        for mono, c in poly.items()
    }


def apply_multiport(state: SparseState, modes: Sequence[int], U: np.ndarray) -> SparseState:
    """Apply the passive linear network ``U`` to the listed modes."""
    U = np.asarray(U, dtype=complex)
    modes = _check_modes(state, modes)
    if U.shape != (len(modes), len(modes)):
        raise InvalidInputError(f"matrix shape {U.shape} does not match {len(modes)} modes")
    if not is_unitary(U):
        raise InvalidInputError("multiport matrix is not unitary")
    cache: dict[Occupation, dict[Occupation, complex]] = {}

    def local(sub: Occupation) -> dict[Occupation, complex]:
        if sub not in cache:
            cache[sub] = _multiport_fock(sub, U)
        return cache[sub]

    return _apply_local(state, modes, local)


def symmetric_splitter(state: SparseState, modes: Sequence[int], inverse: bool = False) -> SparseState:
    """Apply ``S_d`` (or its inverse) on ``modes``, ``d = len(modes)``."""
    U = symmetric_splitter_matrix(len(modes))
    return apply_multiport(state, modes, U.conj().T if inverse else U)


def phase_shift(state: SparseState, mode: int, phi: float) -> SparseState:
    """Multiply each term by ``exp(i phi n_mode)``."""
    (mode,) = _check_modes(state, (mode,))
    return SparseState._trusted(
        state.mode_count,
        {occ: amp * complex(math.cos(phi * occ[mode]), math.sin(phi * occ[mode])) for occ, amp in state.amplitudes.items()},
    )


def multinomial_expansion(N: int, d: int) -> SparseState:
    """Closed form of ``S_d[|N, 0, ..., 0>]`` from the multinomial theorem.

    Independent of :func:`apply_multiport`; used as a cross-check.
    """
    pref = math.sqrt(1.0 / d) ** N / math.sqrt(math.factorial(N))
    return SparseState(
        d,
        {
            k: pref * math.factorial(N) / math.sqrt(math.prod(math.factorial(x) for x in k))
            for k in compositions(N, d)
        },
    )
