import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noonqec.errors import InvalidInputError, NormalizationError
from noonqec.fock import (
    SparseState,
    basis_state,
    combine,
    compositions,
    format_state,
    inner_product,
    normalize,
    overlap_up_to_phase,
    parse_state,
    permute_modes,
    tensor_power,
    tensor_product,
    zero_state,
)

amplitude = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def states(modes=2, max_n=3):
    occ = st.tuples(*[st.integers(0, max_n)] * modes)
    return st.dictionaries(occ, amplitude, max_size=6).map(lambda d: SparseState(modes, d))


def test_prunes_tiny_amplitudes():
    s = SparseState(2, {(1, 0): 1e-16, (0, 1): 0.5})
    assert len(s) == 1
    assert s[(1, 0)] == 0


@pytest.mark.parametrize("occ", [(), (1, -1)])
def test_rejects_bad_occupations(occ):
    with pytest.raises(InvalidInputError):
        basis_state(occ)


def test_rejects_wrong_length():
    with pytest.raises(InvalidInputError):
        SparseState(2, {(1, 0, 0): 1.0})


def test_iteration_is_sorted():
    s = SparseState(2, {(2, 0): 1, (0, 2): 1, (1, 1): 1})
    assert [occ for occ, _ in s] == [(0, 2), (1, 1), (2, 0)]


def test_compositions_order_and_count():
    assert compositions(1, 2) == ((1, 0), (0, 1))
    assert len(compositions(4, 3)) == math.comb(6, 2)


def test_normalize_zero_raises():
    with pytest.raises(NormalizationError):
        normalize(zero_state(3))


def test_tensor_product_layout():
    s = tensor_product(basis_state((1, 0)), basis_state((2,)))
    assert s.amplitudes == {(1, 0, 2): 1}


def test_tensor_power():
    noon = normalize(SparseState(2, {(2, 0): 1, (0, 2): 1}))
    p = tensor_power(noon, 3)
    assert p.mode_count == 6
    assert len(p) == 8
    assert p.norm() == pytest.approx(1.0)


def test_permute_modes():
    s = basis_state((1, 2, 3))
    assert permute_modes(s, (2, 0, 1)).amplitudes == {(3, 1, 2): 1}
    with pytest.raises(InvalidInputError):
        permute_modes(s, (0, 0, 1))


def test_overlap_up_to_phase_ignores_phase():
    s = normalize(SparseState(2, {(1, 0): 1, (0, 1): 1j}))
    assert overlap_up_to_phase(s, s.scale(1j)) == pytest.approx(1.0)


def test_format_parse_roundtrip():
    s = SparseState(3, {(1, 0, 1): 0.25 - 0.5j, (0, 2, 0): 1 / 3})
    text = format_state(s)
    assert text.splitlines()[0] == "0 2 0 0.33333333333333331 0"
    assert parse_state(text).allclose(s, atol=0)


def test_parse_skips_comments_and_rejects_garbage():
    assert parse_state("# header\n\n1 0 1 0\n").amplitudes == {(1, 0): 1}
    with pytest.raises(InvalidInputError):
        parse_state("1 0 x 0")


@given(states(), states(), amplitude)
def test_inner_product_linear_in_second_argument(a, b, c):
    lhs = inner_product(a, combine([(c, b), (1, a)]))
    rhs = c * inner_product(a, b) + inner_product(a, a)
    assert abs(lhs - rhs) <= 1e-9 * (1 + abs(rhs))


@given(states(), states())
def test_inner_product_hermitian(a, b):
    assert abs(inner_product(a, b) - inner_product(b, a).conjugate()) <= 1e-9 * (1 + abs(inner_product(a, b)))


@settings(max_examples=50)
@given(states(1), states(2))
def test_tensor_product_norm_multiplies(a, b):
    assert tensor_product(a, b).norm() == pytest.approx(a.norm() * b.norm(), rel=1e-9, abs=1e-12)
