"""Level-N form expansions against independent oracles and frozen values."""

from k3mirror.modular import (
    alpha_series,
    build_forms,
    eisenstein,
    eta_expansion,
    hauptmodul_j,
    verify_hauptmodul,
    verify_ramanujan_ring,
)
from k3mirror.series import Q


def test_eta_oracle_pentagonal():
    # eta(tau)/q^(1/24) = sum_k (-1)^k q^(k(3k-1)/2)
    eta = eta_expansion(1, 30)
    expected = {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1, 22: 1, 26: 1}
    for k in range(27):
        assert eta.unit.coeff(k) == expected.get(k, 0)


def test_eisenstein_leading_terms():
    e2 = eisenstein(2, 10)
    e4 = eisenstein(4, 10)
    e6 = eisenstein(6, 10)
    assert [e2.coeff(k) for k in range(3)] == [1, -24, -72]
    assert [e4.coeff(k) for k in range(3)] == [1, 240, 2160]
    assert [e6.coeff(k) for k in range(3)] == [1, -504, -16632]


def test_level3_a_expansion():
    # theta-like weight-1 form: 1 + 6q + 6q^3 + 6q^4 + 12q^7 + ...
    forms = build_forms(3, 12)
    assert [forms.A.coeff(k) for k in range(8)] == [1, 6, 0, 6, 6, 0, 0, 12]


def test_level2_a_expansion_frozen():
    # Frozen from the defining eta-quotient together with the fourth-root
    # identity A^4 = B^4 + C^4 (B^4 = 1 - 16q + ..., C^4 = 64q(1 + 8q + ...)).
    forms = build_forms(2, 8)
    assert [forms.A.coeff(k) for k in range(6)] == [1, 12, -60, 768, -11004, 178200]
    fourth = forms.A ** 4
    assert [fourth.coeff(k) for k in range(6)] == [1, 48, 624, 1344, 5232, 6048]


def test_c_power_normalization():
    # C^r = d_N * q * (1 + O(q))
    for level in (1, 2, 3):
        forms = build_forms(level, 10)
        cr = forms.Cr
        assert cr.valuation() == 1
        assert cr.coeff(1) == forms.d_N


def test_ramanujan_ring_all_levels():
    for level in (1, 2, 3):
        rep = verify_ramanujan_ring(build_forms(level, 30))
        assert rep.passed, [c.name for c in rep.checks if c.status == "fail"]


def test_j_function_all_levels():
    for level in (1, 2, 3):
        rep = verify_hauptmodul(build_forms(level, 30))
        assert rep.passed, [c.name for c in rep.checks if c.status == "fail"]


def test_j_level1_frozen_coefficients():
    j = hauptmodul_j(build_forms(1, 10))
    assert j.coeff(-1) == 1
    assert j.coeff(0) == 744
    assert j.coeff(1) == 196884
    assert j.coeff(2) == 21493760


def test_alpha_vanishes_at_cusp():
    for level in (1, 2, 3):
        forms = build_forms(level, 10)
        alpha = alpha_series(forms)
        assert alpha.valuation() == 1
        assert alpha.coeff(1) == Q(forms.d_N)
