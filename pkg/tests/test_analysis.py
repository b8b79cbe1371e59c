import math

import mpmath
import numpy as np
import pytest

from noonqec.analysis import (
    analytic_fidelity,
    clean_patterns,
    fit_quadratic_infidelity,
    kl_block,
    kl_verify,
    max_correctable_weight,
    maximal_consistent_patterns,
    numeric_fidelity,
    partial_fidelity,
)
from noonqec.codes import noon_code, random_coefficients, reference_code
from noonqec.errors import InvalidInputError, PreconditionError


def test_report_dict_schema():
    report = kl_verify(reference_code("fake2"), 1)
    data = report.to_dict()
    assert set(data) == {"code_label", "gamma", "max_weight", "correctable_weight", "degenerate", "violations"}
    assert data["correctable_weight"] == 0
    (v,) = data["violations"]
    assert v["kind"] == "deformation"
    # <0|E2'E3|0> - <1|E2'E3|1> = gamma (1 - gamma) * 2
    assert v["magnitude"] == pytest.approx(2 * 0.9 * 0.1)


def test_naive_code_violates_orthogonality():
    report = kl_verify(reference_code("naive2"), 1)
    assert not report.passed
    assert {v.kind for v in report.violations} == {"orthogonality"}


def test_gram_blocks_agree_with_direct_route():
    code = noon_code(2, 3)
    report = kl_verify(code, 1)
    for p in report.patterns[:3]:
        for q in report.patterns:
            np.testing.assert_allclose(report.block(p, q), kl_block(code, p, q, 0.9), atol=1e-14)


def test_noon22_lambda_is_diagonal_constant():
    report = kl_verify(noon_code(2, 2), 1)
    block = report.block((1, 0, 0, 0), (1, 0, 0, 0))
    np.testing.assert_allclose(block, 0.9**3 * 0.1 * np.eye(2), atol=1e-15)


def test_degeneracy():
    assert not kl_verify(noon_code(2, 2), 1).degenerate
    assert kl_verify(noon_code(3, 2), 2).degenerate


def test_twoblock_violating_pairs():
    report = kl_verify(reference_code("twoblock_n3"), 2)
    pairs = {frozenset((v.pattern_i, v.pattern_j)) for v in report.violations}
    assert pairs == {
        frozenset(((1, 0, 1, 0), (0, 1, 0, 1))),
        frozenset(((1, 0, 0, 1), (0, 1, 1, 0))),
    }


def test_approximate_code_fails_without_loss():
    assert max_correctable_weight(reference_code("approx_leung")) == -1


@pytest.mark.parametrize("gamma", [0.0, 1.0])
def test_verify_needs_open_gamma(gamma):
    with pytest.raises(InvalidInputError):
        kl_verify(noon_code(2, 2), 1, gamma)


def test_numeric_fidelity_preconditions():
    with pytest.raises(PreconditionError):
        numeric_fidelity(reference_code("fake2"), 0.9, [(1, 0)], t=1)
    with pytest.raises(PreconditionError):
        numeric_fidelity(reference_code("approx_leung"), 0.9, [(1, 0)])


def test_fidelity_against_high_precision():
    mpmath.mp.dps = 40
    g = mpmath.mpf("0.9")
    exact = g**4 + 4 * g**3 * (1 - g)
    assert mpmath.nstr(exact, 6) == "0.9477"
    lo, hi = numeric_fidelity(noon_code(2, 2), 0.9, random_coefficients(2, 3, rng=0))
    assert abs(lo - float(exact)) < 1e-14
    assert abs(analytic_fidelity(4, 1, 0.9) - float(exact)) < 1e-15


@pytest.mark.parametrize("M,t", [(4, 1), (9, 2), (16, 3)])
def test_analytic_fidelity_leading_order(M, t):
    # 1 - F ~ C(M, t+1) (1-gamma)^(t+1)
    x = 1e-3
    assert (1 - analytic_fidelity(M, t, 1 - x)) / x ** (t + 1) == pytest.approx(math.comb(M, t + 1), rel=0.05)


def test_partial_strategies():
    code = reference_code("twoblock_n3")
    report = kl_verify(code, 2)
    clean = clean_patterns(report)
    maximal = maximal_consistent_patterns(report)
    assert set(clean) <= set(maximal)
    assert len(clean) == len(report.patterns) - 4
    with pytest.raises(InvalidInputError):
        partial_fidelity(code, 0.99, 2, [(1, 0)], strategy="best")


def test_fit_quadratic_infidelity_recovers_coefficient():
    g = np.linspace(0.99, 0.999, 10)
    f = 1 - 7 * (1 - g) ** 2 + 3 * (1 - g) ** 3
    assert fit_quadratic_infidelity(g, f) == pytest.approx(7, rel=1e-9)
