import pytest
from hypothesis import given, strategies as st

from qborcherds import catalog
from qborcherds.cartan import exdegrees_up_to
from qborcherds.modules import build_verma, irreducible_quotient
from qborcherds.rtheta import (OmegaOperator, QuotientOmega, cas_identities,
                               casimir_eigen_check, casimir_exponents,
                               casimir_lowering_defects, compute_theta, f_difference,
                               f_identity_holds, generators,
                               perturbation_detected, omega_commutation_defects, singular_casimir_check,
                               theta_sign, verify_intertwiner, verify_inverse)
from qborcherds.scalar import QScalar
from qborcherds.ualgebra import UAlgebra

NAMES = ["a1", "a1_odd", "a2", "borcherds_super", "borcherds_iso", "imaginary"]


def test_degree_zero_and_one():
    for name in NAMES:
        d = catalog.datum(name)
        th = compute_theta(d, 2)
        assert th.blocks[()] == [[QScalar.one()]]
        for i in d.indices:
            nu = (((i, 1), 1),)
            s = -1 if d.parity[i] else 1
            expect = -(1 - QScalar.q_pow(2 * d.D[i]) * s)
            assert th.blocks[nu] == [[expect]]


def test_isotropic_higher_level_block():
    d = catalog.datum("borcherds_iso")
    th = compute_theta(d, 3)
    for l in (2, 3):
        assert th.blocks[(((1, l), 1),)] == [[-(1 - QScalar.q_pow(2 * l * d.D[1]))]]


@pytest.mark.parametrize("name", NAMES)
def test_intertwiner(name):
    d = catalog.datum(name)
    U = UAlgebra(d)
    th = compute_theta(d, 3)
    for label, u in generators(d, U, 3):
        assert verify_intertwiner(th, u, U), label


@pytest.mark.parametrize("name", ["borcherds_super", "borcherds_iso", "imaginary"])
def test_weight_height_sign_fails_at_level_two(name):
    d = catalog.datum(name)
    U = UAlgebra(d)
    th = compute_theta(d, 3, height_mode="weight")
    bad = [label for label, u in generators(d, U, 3) if not verify_intertwiner(th, u, U)]
    assert bad and all(label.endswith(",2]") for label in bad)


def test_signs_agree_without_higher_levels():
    d = catalog.datum("a2")
    for nu in exdegrees_up_to(d, 4):
        assert theta_sign(d, nu, "parts") == theta_sign(d, nu, "weight")


@pytest.mark.parametrize("name", [n for n in NAMES if n in catalog.BAR_CONSISTENT])
def test_inverse(name):
    d = catalog.datum(name)
    assert verify_inverse(compute_theta(d, 3))


def test_inverse_needs_bar_consistency():
    # bar does not preserve the Serre relation when d_i and p(i) differ in parity
    assert not verify_inverse(compute_theta(catalog.datum("a2_d1"), 3))


@pytest.mark.parametrize("name", NAMES)
def test_cas_recursions(name):
    d = catalog.datum(name)
    th = compute_theta(d, 3)
    for nu in exdegrees_up_to(d, 3):
        for g in d.letters(3):
            r = cas_identities(th, nu, g)
            assert r is None or all(r), (nu, g, r)


def test_uniqueness_by_perturbation():
    d = catalog.datum("borcherds_super")
    th = compute_theta(d, 3)
    U = UAlgebra(d)
    for nu, C in th.blocks.items():
        for p in range(len(C)):
            for r in range(len(C)):
                assert perturbation_detected(th, nu, p, r, U)


@given(st.data())
def test_f_identity(data):
    name = data.draw(st.sampled_from(NAMES))
    d = catalog.datum(name)
    mu = [data.draw(st.integers(-5, 5)) for _ in d.indices]
    i = data.draw(st.sampled_from(list(d.indices)))
    l = 1 if d.is_real(i) else data.draw(st.integers(1, 4))
    assert f_identity_holds(d, mu, i, l)


def test_f_difference_a1():
    d = catalog.datum("a1")
    lam = d.weight([2])
    # f(lam - 3 alpha) - f(lam) = 0 for the singular vector of M(2 Lambda)
    assert f_difference(d, lam, (3,)) == 0


@pytest.mark.parametrize("name, lam", [(n, lam) for n in NAMES for lam in catalog.WEIGHTS[n]])
def test_omega_on_modules(name, lam):
    d = catalog.datum(name)
    vm = build_verma(d, d.weight(lam), 3)
    om = OmegaOperator(vm)
    assert om.matrix((0,) * d.n) == [[QScalar.one()]]
    assert not omega_commutation_defects(vm, om)
    assert all(ok for ok, _ in casimir_eigen_check(vm, om).values())
    assert all(a and b for _, a, b in singular_casimir_check(vm, om))
    qs = irreducible_quotient(vm)
    qo = QuotientOmega(qs, om)
    assert not omega_commutation_defects(qs, qo)
    assert not casimir_lowering_defects(qs, qo)
    assert not casimir_lowering_defects(vm, om)
    assert all(e is not None for e in casimir_exponents(qs, qo).values())


def test_imaginary_exponents():
    d = catalog.datum("imaginary")
    vm = build_verma(d, d.weight([1]), 3)
    qs = irreducible_quotient(vm)
    ex = casimir_exponents(qs)
    # (alpha, alpha) = -4: level-2 letters contribute 2 * (-4), level 3 contributes 6 * (-4)
    assert ex[(1,)] == [0]
    assert ex[(2,)] == [-8, 0]
    assert ex[(3,)] == [-24, -8, 0]


def test_real_only_exponents_vanish():
    d = catalog.datum("a2")
    qs = irreducible_quotient(build_verma(d, d.weight([1, 1]), 3))
    assert all(e in ([], [0]) for e in casimir_exponents(qs).values())
