import math

import mpmath
import pytest

from noonqec.comms import (
    CommParams,
    cost,
    gamma_from_distance,
    log_success_probability,
    sweep,
    success_probability,
    to_csv,
)
from noonqec.errors import InvalidInputError


def test_success_probability_against_high_precision():
    mpmath.mp.dps = 50
    g = mpmath.exp(mpmath.mpf(-1) / 22)
    exact = (g**4 + 4 * g**3 * (1 - g)) ** 1000
    got = success_probability(CommParams(1000.0, 1.0, 2))
    assert got == pytest.approx(float(exact), rel=1e-10)


def test_gamma_from_distance():
    assert gamma_from_distance(22.0) == pytest.approx(math.exp(-1))
    assert gamma_from_distance(0.0) == 1.0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(L=0, L0=1, N=2),
        dict(L=10, L0=20, N=2),
        dict(L=10, L0=1, N=0),
        dict(L=10, L0=1, N=2, d=1),
        dict(L=10, L0=1, N=2, L_att=0),
    ],
)
def test_params_validation(kwargs):
    with pytest.raises(InvalidInputError):
        CommParams(**kwargs)


def test_underflow_is_handled():
    # P_succ = exp(-L / 22) for the unencoded photon
    p = CommParams(1e5, 20.0, 1)
    assert log_success_probability(p) == pytest.approx(-1e5 / 22)
    assert success_probability(p) == 0.0
    assert cost(p) == math.inf


def test_cost_formula():
    p = CommParams(1000.0, 0.5, 3, 4)
    assert cost(p) == pytest.approx(9 / (success_probability(p) * 2 * 0.5), rel=1e-12)


def test_csv_output_is_deterministic():
    rows = sweep("psucc", L0s=[0.5, 1.0], Ns=[2, 3])
    text = to_csv("psucc", rows)
    assert text.splitlines()[0] == "L0_km,N,P_succ"
    assert len(text.splitlines()) == 5
    assert text == to_csv("psucc", sweep("psucc", L0s=[0.5, 1.0], Ns=[2, 3]))


def test_sweep_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        sweep("nope")
    with pytest.raises(InvalidInputError):
        sweep("fidelity", gammas=[], Ns=[2])
