"""The free superalgebra F on letters a_{il}, its twisted coproduct and derivations.

A word is a tuple of letters ``(i, l)``; an element is a dict word -> QScalar
wrapped in :class:`FElement`.  Tensor elements map pairs (or triples) of words
to QScalars.
"""

from functools import lru_cache

from .cartan import exdegree
from .scalar import QScalar, super_qfact

ONE_WORD = ()


def _add_into(d, key, c):
    v = d.get(key)
    v = c if v is None else v + c
    if v.is_zero():
        d.pop(key, None)
    else:
        d[key] = v


def signed_qpow(sign, e):
    return QScalar.q_pow(e) * sign


@lru_cache(maxsize=None)
def word_weight(datum, word):
    v = [0] * datum.n
    for i, l in word:
        v[i] += l
    return tuple(v)


@lru_cache(maxsize=None)
def word_parity(datum, word):
    return sum(l * datum.parity[i] for i, l in word) & 1


def twist(datum, x, y):
    """(sign, exponent) of (-1)^{p(x)p(y)} q^{(|x|,|y|)} for words x, y."""
    s = -1 if word_parity(datum, x) and word_parity(datum, y) else 1
    return s, datum.form(word_weight(datum, x), word_weight(datum, y))


class FElement:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def word(cls, word, coeff=None):
        return cls({tuple(word): QScalar.one() if coeff is None else QScalar.coerce(coeff)})

    @classmethod
    def gen(cls, i, l=1):
        return cls.word(((i, l),))

    @classmethod
    def one(cls):
        return cls.word(ONE_WORD)

    @classmethod
    def zero(cls):
        return cls()

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(out, w, c)
        return FElement(out)

    def __neg__(self):
        return FElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = QScalar.coerce(c)
        if c.is_zero():
            return FElement()
        return FElement({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FElement):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, FElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def component(self, nu):
        """Homogeneous component of ExDegree nu."""
        return FElement({w: c for w, c in self.terms.items() if exdegree(w) == nu})

    def exdegrees(self):
        return sorted({exdegree(w) for w in self.terms})

    def map_coeffs(self, f):
        return FElement({w: f(c) for w, c in self.terms.items()})

    def render(self, datum=None):
        return render_element(self.terms, datum)

    def __repr__(self):
        return f"FElement({self.render()})"


def render_word(word, datum=None, letter="a"):
    if not word:
        return "1"
    nm = (lambda i: datum.names[i]) if datum else (lambda i: str(i + 1))
    return " ".join(f"{letter}[{nm(i)},{l}]" for i, l in word)


def render_coeff(c):
    s = str(c)
    if c.is_laurent() and len(c.coefficient_items()) == 1:
        return s
    return f"({s})"


def render_element(terms, datum=None, letter="a"):
    if not terms:
        return "0"
    keys = sorted(terms, key=lambda w: (len(w), w))
    return " + ".join(f"{render_coeff(terms[w])} * {render_word(w, datum, letter)}"
                      for w in keys)


def multiply(x, y):
    out = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            _add_into(out, w1 + w2, c1 * c2)
    return FElement(out)


def generator(i, l=1):
    return FElement.gen(i, l)


# coproduct ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _coproduct_word(datum, word):
    """rho(word) as a dict (w1, w2) -> QScalar, built by splicing the last letter."""
    if not word:
        return {((), ()): QScalar.one()}
    prev = _coproduct_word(datum, word[:-1])
    a = word[-1]
    aw = (a,)
    out = {}
    for (x1, x2), c in prev.items():
        s, e = twist(datum, x2, aw)
        _add_into(out, (x1 + aw, x2), c * signed_qpow(s, e))
        _add_into(out, (x1, x2 + aw), c)
    return out


def coproduct(datum, x):
    out = {}
    for w, c in x.terms.items():
        for k, v in _coproduct_word(datum, w).items():
            _add_into(out, k, c * v)
    return out


def tensor_multiply(datum, X, Y):
    """Twisted product on F (x) F."""
    out = {}
    for (x1, x2), c in X.items():
        for (x3, x4), d in Y.items():
            s, e = twist(datum, x2, x3)
            _add_into(out, (x1 + x3, x2 + x4), c * d * signed_qpow(s, e))
    return out


def tensor_add(*Xs):
    out = {}
    for X in Xs:
        for k, c in X.items():
            _add_into(out, k, c)
    return out


def tensor_scale(X, c):
    c = QScalar.coerce(c)
    return {k: v * c for k, v in X.items()} if not c.is_zero() else {}


def tensor_of(x, y):
    out = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            _add_into(out, (w1, w2), c1 * c2)
    return out


def coproduct_left(datum, X):
    """(rho (x) 1) applied to a 2-tensor."""
    out = {}
    for (x1, x2), c in X.items():
        for (y1, y2), d in _coproduct_word(datum, x1).items():
            _add_into(out, (y1, y2, x2), c * d)
    return out


def coproduct_right(datum, X):
    """(1 (x) rho) applied to a 2-tensor."""
    out = {}
    for (x1, x2), c in X.items():
        for (y1, y2), d in _coproduct_word(datum, x2).items():
            _add_into(out, (x1, y1, y2), c * d)
    return out


# derivations --------------------------------------------------------------

@lru_cache(maxsize=None)
def _derive_word(datum, word, letter, right):
    out = {}
    p = datum.letter_parity(letter)
    lw = (letter,)
    for k, a in enumerate(word):
        if a != letter:
            continue
        other = word[k + 1:] if right else word[:k]
        s, e = twist(datum, lw, other)
        _add_into(out, word[:k] + word[k + 1:], signed_qpow(s if p else 1, e))
    return out


def _derive(datum, x, i, l, right):
    out = {}
    for w, c in x.terms.items():
        for v, d in _derive_word(datum, w, (i, l), right).items():
            _add_into(out, v, c * d)
    return FElement(out)


def derive_right(datum, x, i, l=1):
    """rho_{i,l}: twist against the letters to the right of the removed one."""
    return _derive(datum, x, i, l, True)


def derive_left(datum, x, i, l=1):
    """rho^{i,l}: twist against the letters to the left."""
    return _derive(datum, x, i, l, False)


# involutions --------------------------------------------------------------

def sigma(x):
    return FElement({w[::-1]: c for w, c in x.terms.items()})


def bar(x):
    return x.map_coeffs(lambda c: c.bar())


def tensor_bar(X):
    return {k: c.bar() for k, c in X.items()}


def tensor_flip(X):
    return {(b, a): c for (a, b), c in X.items()}


def tensor_sigma(X):
    return {tuple(w[::-1] for w in k): c for k, c in X.items()}


class NotBarConsistent(ValueError):
    pass


def bar_coproduct_definition(datum, x):
    """bar(rho(bar(x))), coefficientwise on both factors."""
    return tensor_bar(coproduct(datum, bar(x)))


def bar_coproduct(datum, x):
    """Closed form sum (-q)^{-(|x1|,|x2|)} (-1)^{p(x1)p(x2)} x2 (x) x1."""
    if not datum.bar_consistent:
        raise NotBarConsistent("bar coproduct closed form needs d_i = p(i) mod 2")
    out = {}
    for (x1, x2), c in coproduct(datum, x).items():
        s, e = twist(datum, x1, x2)
        if e & 1:
            s = -s
        _add_into(out, (x2, x1), c * signed_qpow(s, -e))
    return out


# divided powers -----------------------------------------------------------

def divided_power(datum, i, n):
    if not datum.is_real(i):
        raise ValueError(f"divided powers need a real index, got {datum.names[i]}")
    if n < 0:
        return FElement()
    f = super_qfact(n, datum.D[i], datum.parity[i])
    return FElement.word(((i, 1),) * n, f.inverse())


def letters_of(x):
    return sorted({a for w in x.terms for a in w})
