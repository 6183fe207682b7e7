import pytest

from qborcherds import catalog
from qborcherds.cartan import CartanDatum
from qborcherds.characters import (OddIsotropicUndefined, build_S, denominator,
                                   enumerate_E, enumerate_F, enumerate_O, formula_character,
                                   is_prefix, module_character, series_mul)
from qborcherds.modules import build_verma, verma_character
from qborcherds.scalar import euler_phi_coeffs

NAMES = ["a1", "a1_odd", "a2", "b2", "borcherds_super", "borcherds_iso", "imaginary"]


def test_kac_moody_E_trivial():
    d = catalog.datum("a2")
    E = enumerate_E(d, d.weight([1, 0]), 5)
    assert len(E) == 1 and E[0].sign == 1 and not any(E[0].total)
    assert build_S(d, d.weight([1, 0]), 5).nonzero() == {(0, 0): 1}


def test_isotropic_E_signs():
    d = catalog.datum("borcherds_iso")
    lam = d.weight([1, 0])
    E = enumerate_E(d, lam, 7)
    phi = euler_phi_coeffs(7)
    got = {t.total: t.sign for t in E}
    assert got == {(0, n): phi[n] for n in range(8) if phi[n]}
    S = build_S(d, lam, 7)
    assert S.nonzero() == {(0, n): phi[n] for n in range(8) if phi[n]}


def test_non_orthogonal_lambda_gives_trivial_S():
    d = catalog.datum("borcherds_iso")
    assert build_S(d, d.weight([1, 1]), 5).nonzero() == {(0, 0): 1}


def test_non_isotropic_singletons():
    d = catalog.datum("imaginary")
    E = enumerate_E(d, d.weight([0]), 4)
    assert sorted((t.total, t.sign) for t in E) == [((0,), 1)] + [((n,), -1) for n in range(1, 5)]


def test_odd_isotropic_hook():
    d = CartanDatum.make([[0]], [1], [1])
    lam = d.weight([0])
    with pytest.raises(OddIsotropicUndefined):
        enumerate_O(d, lam, 3)
    O = enumerate_O(d, lam, 3, odd_hook=lambda *a: 1)
    assert len(O) == 4


def test_odd_non_isotropic_terms():
    d = CartanDatum.make([[-2]], [1], [1])
    O = enumerate_O(d, d.weight([0]), 3)
    assert sorted(t.sign for t in O) == [-1, -1, -1, 1]


def test_F_orthogonality():
    d = CartanDatum.make([[-2, -2], [-2, -2]], [1, 1], [0, 1])
    F = enumerate_F(d, d.weight([0, 0]), 4)
    for t in F:
        if len(t.support) == 2:
            assert d.form_roots(0, 1) == 0


def test_a1_closed_form():
    d = catalog.datum("a1")
    for m in range(4):
        ch = formula_character(d, d.weight([m]), 6)
        assert ch.nonzero() == {(k,): 1 for k in range(min(m, 6) + 1)}


def test_trivial_weight():
    for name in NAMES:
        d = catalog.datum(name)
        assert formula_character(d, d.zero_weight(), 4).nonzero() == {(0,) * d.n: 1}


@pytest.mark.parametrize("name", NAMES)
def test_denominator_inverts_verma(name):
    d = catalog.datum(name)
    D = denominator(d, 5)
    assert D[(0,) * d.n] == 1
    M0 = verma_character(build_verma(d, d.zero_weight(), 5))
    assert series_mul(D, M0, 5) == {(0,) * d.n: 1}


@pytest.mark.parametrize("name, lam", [(n, lam) for n in NAMES for lam in catalog.WEIGHTS.get(n, [])])
def test_formula_equals_module(name, lam):
    d = catalog.datum(name)
    w = d.weight(lam)
    assert formula_character(d, w, 4) == module_character(d, w, 4)


def test_stability():
    for name in ("a2", "borcherds_iso"):
        d = catalog.datum(name)
        w = d.weight([1, 0])
        assert is_prefix(formula_character(d, w, 3), formula_character(d, w, 4))
        assert is_prefix(module_character(d, w, 3), module_character(d, w, 4))


def test_non_dominant_rejected():
    d = catalog.datum("a1")
    with pytest.raises(ValueError):
        formula_character(d, d.weight([-1]), 3)
