from itertools import product

import pytest
from hypothesis import given, strategies as st

from qborcherds import catalog
from qborcherds.cartan import exdegree_parts, exdegrees_up_to
from qborcherds.freesuper import (FElement, bar, bar_coproduct, bar_coproduct_definition,
                                  coproduct, coproduct_left, coproduct_right, derive_left,
                                  derive_right, divided_power, sigma, tensor_flip,
                                  tensor_multiply, tensor_sigma, twist, word_parity,
                                  word_weight, NotBarConsistent)
from qborcherds.pairing import multiset_permutations
from qborcherds.scalar import QScalar

NAMES = ["a1_odd", "a2", "borcherds_super", "borcherds_iso", "imaginary"]


def words_up_to(d, h):
    out = []
    for nu in exdegrees_up_to(d, h):
        out += multiset_permutations(exdegree_parts(nu))
    return out


def sgn(e):
    return -1 if e & 1 else 1


def word_strategy(name, h=4):
    d = catalog.datum(name)
    return st.sampled_from(words_up_to(d, h))


def test_twisted_product_basic(a1):
    x = FElement.gen(0)
    assert (x * x).terms == {((0, 1), (0, 1)): QScalar.one()}
    X = coproduct(a1, x)
    assert X == {(((0, 1),), ()): QScalar.one(), ((), ((0, 1),)): QScalar.one()}


@pytest.mark.parametrize("name", NAMES)
def test_coassociativity(name):
    d = catalog.datum(name)
    for w in words_up_to(d, 4):
        X = coproduct(d, FElement.word(w))
        assert coproduct_left(d, X) == coproduct_right(d, X), w


@pytest.mark.parametrize("name", NAMES)
def test_coproduct_multiplicative(name):
    d = catalog.datum(name)
    ws = words_up_to(d, 2)
    for u, v in product(ws, ws):
        x, y = FElement.word(u), FElement.word(v)
        assert coproduct(d, x * y) == tensor_multiply(d, coproduct(d, x), coproduct(d, y))


@pytest.mark.parametrize("name", NAMES)
def test_sigma_flip(name):
    d = catalog.datum(name)
    for w in words_up_to(d, 4):
        x = FElement.word(w)
        assert coproduct(d, sigma(x)) == tensor_sigma(tensor_flip(coproduct(d, x)))


@pytest.mark.parametrize("name", NAMES)
def test_derivations_and_sigma(name):
    d = catalog.datum(name)
    for w in words_up_to(d, 4):
        x = FElement.word(w)
        for g in d.letters(4):
            assert derive_right(d, sigma(x), *g) == sigma(derive_left(d, x, *g))


@pytest.mark.parametrize("name", [n for n in NAMES if n in catalog.BAR_CONSISTENT])
def test_right_left_bar_relation(name):
    d = catalog.datum(name)
    for w in words_up_to(d, 4):
        x = FElement.word(w)
        px = word_parity(d, w)
        for g in d.letters(4):
            i, l = g
            pl = d.letter_parity(g)
            beta = tuple(a - (l if k == i else 0) for k, a in enumerate(word_weight(d, w)))
            e = d.form(beta, d.unit(i, l))
            rhs = bar(derive_left(d, bar(x), i, l)).scale(QScalar.q_pow(e) * sgn(px * pl - pl * pl))
            assert derive_right(d, x, i, l) == rhs, (w, g)


@pytest.mark.parametrize("name", NAMES)
def test_coproduct_splitting(name):
    d = catalog.datum(name)
    for w in words_up_to(d, 4):
        x = FElement.word(w)
        X = coproduct(d, x)
        for g in d.letters(4):
            right = FElement({a: c for (a, b), c in X.items() if b == (g,)})
            left = FElement({b: c for (a, b), c in X.items() if a == (g,)})
            assert right == derive_right(d, x, *g)
            assert left == derive_left(d, x, *g)


@pytest.mark.parametrize("name", ["a1_odd", "a1_d2", "borcherds_super", "a2"])
def test_bar_coproduct_divided_powers(name):
    d = catalog.datum(name)
    for i in d.real_indices:
        base = QScalar.q_pow(d.D[i]) * sgn(d.parity[i])
        for n in range(5):
            lhs = bar_coproduct_definition(d, divided_power(d, i, n))
            rhs = {}
            for t in range(n + 1):
                c = base ** (-t * (n - t))
                for (u, cu) in divided_power(d, i, t).terms.items():
                    for (v, cv) in divided_power(d, i, n - t).terms.items():
                        rhs[(u, v)] = rhs.get((u, v), QScalar.zero()) + c * cu * cv
            assert lhs == {k: v for k, v in rhs.items() if not v.is_zero()}


@pytest.mark.parametrize("name", [n for n in NAMES if n in catalog.BAR_CONSISTENT])
def test_bar_coproduct_closed_form(name):
    d = catalog.datum(name)
    for w in words_up_to(d, 3):
        x = FElement.word(w)
        assert bar_coproduct(d, x) == bar_coproduct_definition(d, x)


def test_bar_coproduct_rejects_inconsistent():
    with pytest.raises(NotBarConsistent):
        bar_coproduct(catalog.datum("a2_d1"), FElement.gen(0))


@given(st.data())
def test_grading(data):
    name = data.draw(st.sampled_from(NAMES))
    d = catalog.datum(name)
    w = data.draw(word_strategy(name))
    x = FElement.word(w)
    wt, p = word_weight(d, w), word_parity(d, w)
    for (a, b), _ in coproduct(d, x).items():
        assert tuple(s + t for s, t in zip(word_weight(d, a), word_weight(d, b))) == wt
        assert (word_parity(d, a) + word_parity(d, b)) % 2 == p
    for g in d.letters(4):
        for v in derive_right(d, x, *g).terms:
            assert word_weight(d, v) == tuple(
                c - (g[1] if k == g[0] else 0) for k, c in enumerate(wt))


@given(st.data())
def test_twisted_associativity(data):
    name = data.draw(st.sampled_from(NAMES))
    d = catalog.datum(name)
    ws = [data.draw(word_strategy(name, 2)) for _ in range(3)]
    X, Y, Z = (coproduct(d, FElement.word(w)) for w in ws)
    assert tensor_multiply(d, tensor_multiply(d, X, Y), Z) == \
        tensor_multiply(d, X, tensor_multiply(d, Y, Z))


def test_twist_sign():
    d = catalog.datum("borcherds_super")
    assert twist(d, ((0, 1),), ((0, 1),)) == (-1, d.form_roots(0, 0))


def test_divided_power_errors():
    d = catalog.datum("borcherds_super")
    with pytest.raises(ValueError):
        divided_power(d, 1, 2)
    assert divided_power(d, 0, -1).is_zero()
