import random

import pytest

from qborcherds import catalog
from qborcherds.freesuper import divided_power
from qborcherds.modules import (brute_character, build_verma, check_oint, commutation_defect,
                                irreducible_quotient, maximal_submodule_direct,
                                maximal_submodule_sweep, no_singular_below_top, highest_weight_checks,
                                verma_character)
from qborcherds.pairing import gram_block, serre_element
from qborcherds.cartan import exdegrees_of_weight
from qborcherds.linalg import matvec
from qborcherds.scalar import QScalar

CASES = [(n, lam) for n in ["a1", "a1_odd", "a2", "borcherds_super", "borcherds_iso",
                            "imaginary"] for lam in catalog.WEIGHTS[n]]


def quotient(name, lam, depth=4):
    d = catalog.datum(name)
    return irreducible_quotient(build_verma(d, d.weight(lam), depth))


def test_a1_dims():
    d = catalog.datum("a1")
    for m in range(4):
        vm = build_verma(d, d.weight([m]), 4)
        assert all(vm.dim(b) == 1 for b in vm.betas)
        qs = irreducible_quotient(vm)
        assert [qs.dim((k,)) for k in range(5)] == [1 if k <= m else 0 for k in range(5)]


def test_a1_singular_vector():
    d = catalog.datum("a1")
    vm = build_verma(d, d.weight([2]), 4)
    for k in range(1, 5):
        assert len(vm.singular_vectors((k,))) == (1 if k == 3 else 0)


def test_a1_raising_coefficient():
    d = catalog.datum("a1")
    m = 3
    vm = build_verma(d, d.weight([m]), 4)
    for k in range(1, 5):
        # a b^(k) v = coefficient * b^(k-1) v in the divided power basis
        x = vm.coords(divided_power(d, 0, k), (k,))
        y = matvec(vm.raising((0, 1), (k,)), x)
        base = vm.coords(divided_power(d, 0, k - 1), (k - 1,))
        q = QScalar.q()
        c = (q ** (-(k - 1) + m) - q ** ((k - 1) - m)) / (1 - q ** 2)
        assert y == [z * c for z in base]


def test_trivial_module():
    for name in ("a1", "borcherds_iso", "imaginary"):
        d = catalog.datum(name)
        qs = quotient(name, (0,) * d.n)
        assert brute_character(qs) == {b: (1 if not any(b) else 0) for b in qs.verma.betas}


def test_verma_character_is_free(named_datum):
    name, d = named_datum
    vm = build_verma(d, d.weight([1] * d.n), 3)
    for b, n in verma_character(vm).items():
        assert n == sum(gram_block(d, nu).rank for nu in exdegrees_of_weight(d, b, 3))


@pytest.mark.parametrize("name, lam", CASES)
def test_sweep_equals_direct(name, lam):
    d = catalog.datum(name)
    vm = build_verma(d, d.weight(lam), 4)
    J1 = maximal_submodule_sweep(vm)
    J2 = maximal_submodule_direct(vm)
    assert {b: len(v) for b, v in J1.items()} == {b: len(v) for b, v in J2.items()}


@pytest.mark.parametrize("name, lam", CASES)
def test_confluence(name, lam):
    d = catalog.datum(name)
    vm = build_verma(d, d.weight(lam), 4)
    a = irreducible_quotient(vm).dims()
    b = irreducible_quotient(vm, order=lambda bs: list(reversed(bs))).dims()
    rng = random.Random(7)
    c = irreducible_quotient(vm, order=lambda bs: rng.sample(bs, len(bs))).dims()
    assert a == b == c


@pytest.mark.parametrize("name, lam", CASES)
def test_oint_and_highest_weight_checks(name, lam):
    qs = quotient(name, lam)
    rep = check_oint(qs)
    assert rep["ok"], rep["failures"]
    assert all(highest_weight_checks(qs).values())
    assert no_singular_below_top(qs)[0]


@pytest.mark.parametrize("name", ["a1", "a1_odd", "a2", "borcherds_super", "imaginary"])
def test_commutation_matrices(name):
    d = catalog.datum(name)
    vm = build_verma(d, d.weight([1] * d.n), 4)
    for beta in vm.betas:
        for g in vm.letters:
            for h in vm.letters:
                D = commutation_defect(vm, beta, g, h)
                if D is not None:
                    assert all(x.is_zero() for row in D for x in row), (beta, g, h)


def action_matrix(sl, x, beta):
    """Matrix of x^- on the weight space beta, x homogeneous in F."""
    out = None
    for w, c in x.terms.items():
        M = None
        b = beta
        for g in reversed(w):
            L = sl.lowering(g, b)
            M = L if M is None else [[sum((L[r][k] * M[k][s] for k in range(len(M))),
                                          QScalar.zero()) for s in range(len(M[0]))]
                                     for r in range(len(L))]
            b = tuple(v + (g[1] if i == g[0] else 0) for i, v in enumerate(b))
        M = [[e * c for e in row] for row in M]
        out = M if out is None else [[a + e for a, e in zip(r1, r2)] for r1, r2 in zip(out, M)]
    return out


def test_serre_annihilates():
    for name in ("a2", "borcherds_super", "borcherds_iso"):
        d = catalog.datum(name)
        vm = build_verma(d, d.weight([1] * d.n), 5)
        for i in d.real_indices:
            for j in d.indices:
                if i == j:
                    continue
                x = serre_element(d, i, j, 1)
                h = sum(sum(l for _, l in w) for w in [next(iter(x.terms))])
                for beta in vm.betas:
                    if sum(beta) + h <= 5:
                        M = action_matrix(vm, x, beta)
                        assert all(e.is_zero() for row in M for e in row)


def test_nondominant_has_singular_vector():
    d = catalog.datum("a1")
    # <h, lam> = -1 is not dominant: no finite quotient, but O_int fails or a singular vector exists
    vm = build_verma(d, d.weight([-1]), 3)
    qs = irreducible_quotient(vm)
    rep = check_oint(qs)
    assert not rep["ok"] or any(vm.singular_vectors((k,)) for k in range(1, 4))


def test_imaginary_b_singular():
    d = catalog.datum("imaginary")
    vm = build_verma(d, d.weight([0]), 3)
    for l in range(1, 4):
        assert vm.singular_vectors((l,))
