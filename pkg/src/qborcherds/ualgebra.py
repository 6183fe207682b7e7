"""The algebra U in triangular normal form b-part * K-part * a-part.

A monomial is a triple (v, k, w): v a word in the b-letters, k the exponent
vector of prod K_i^{k_i}, w a word in the a-letters.  Elements are dicts
monomial -> QScalar.  Normal form means both words are pivot words of their
Gram blocks; the b-side reuses the a-side blocks through x -> x^-.
"""

from functools import lru_cache

from .cartan import exdegree, exdegree_parts, e_of, c_of
from .freesuper import (_add_into, derive_left, derive_right,
                        signed_qpow, word_parity, word_weight)
from .pairing import gram_block
from .scalar import QScalar


def _sgn(e):
    return -1 if e & 1 else 1


def kvec_add(a, b, s=1):
    return tuple(x + s * y for x, y in zip(a, b))


def kvec_of_letter(datum, letter, sign=1):
    i, l = letter
    v = [0] * datum.n
    v[i] = sign * l
    return tuple(v)


def kvec_of_word(datum, word, sign=1):
    return tuple(sign * x for x in word_weight(datum, word))


def mono_parity(datum, m):
    return (word_parity(datum, m[0]) + word_parity(datum, m[2])) & 1


class UElement:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(out, m, c)
        return UElement(out)

    def __neg__(self):
        return UElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = QScalar.coerce(c)
        if c.is_zero():
            return UElement()
        return UElement({m: c * v for m, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, UElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"UElement({render_u(self.terms)})"


def render_u(terms, datum=None):
    from .freesuper import render_coeff, render_word
    if not terms:
        return "0"
    nm = (lambda i: datum.names[i]) if datum else (lambda i: str(i + 1))
    parts = []
    for m in sorted(terms, key=lambda m: (len(m[0]), m[0], m[1], len(m[2]), m[2])):
        v, k, w = m
        body = []
        if v:
            body.append(render_word(v, datum, "b"))
        ks = [f"K[{nm(i)}]^{e}" for i, e in enumerate(k) if e]
        body += ks
        if w:
            body.append(render_word(w, datum, "a"))
        parts.append(f"{render_coeff(terms[m])} * {' '.join(body) or '1'}")
    return " + ".join(parts)


# straightening on raw words ------------------------------------------------

@lru_cache(maxsize=None)
def straighten_words(datum, w, v):
    """a_w b_v as dict (v', k, w') -> QScalar over raw words."""
    zero = (0,) * datum.n
    if not w:
        return {(v, zero, ()): QScalar.one()}
    if not v:
        return {((), zero, w): QScalar.one()}
    w1, a = w[:-1], w[-1]
    c, v1 = v[0], v[1:]
    out = {}
    s = _sgn(datum.letter_parity(a) * datum.letter_parity(c))
    # (-1)^{p(a)p(c)} a_{w1} b_c (a b_{v1})
    for (u, kap, x), t in straighten_words(datum, (a,), v1).items():
        for (u2, kap2, x2), t2 in straighten_words(datum, w1, (c,) + u).items():
            e = -datum.form(kap, word_weight(datum, x2))
            _add_into(out, (u2, kvec_add(kap2, kap), x2 + x),
                      t * t2 * signed_qpow(s, e))
    if a == c:
        i, l = a
        eta = (1 - QScalar.q_pow(2 * l * datum.D[i]) * _sgn(datum.letter_parity(a))).inverse()
        inner = straighten_words(datum, w1, v1)
        for sg in (1, -1):
            kap = kvec_of_letter(datum, a, sg)
            e1 = -datum.form(kap, word_weight(datum, w1))
            for (u, kap2, x), t in inner.items():
                e = e1 - datum.form(kap, word_weight(datum, u))
                _add_into(out, (u, kvec_add(kap, kap2), x), t * eta * signed_qpow(sg, e))
    return out


class UAlgebra:
    """Normal-form arithmetic in U for a fixed datum."""

    def __init__(self, datum, max_height=None):
        self.datum = datum
        self.max_height = max_height
        self.overflow = False
        self.zero_k = (0,) * datum.n
        self._red = {}
        self._mul = {}
        self._delta = {}

    # reduction modulo the radical
    def reduce_word(self, word):
        r = self._red.get(word)
        if r is None:
            if not word:
                r = {(): QScalar.one()}
            else:
                blk = gram_block(self.datum, exdegree(word))
                r = {blk.basis_words[blk.pivots[s]]: c
                     for s, c in blk.reduce_word(word).items()}
            self._red[word] = r
        return r

    def _too_high(self, word):
        return self.max_height is not None and sum(l for _, l in word) > self.max_height

    def normalize(self, raw):
        out = {}
        for (v, k, w), c in raw.items():
            if self._too_high(v) or self._too_high(w):
                self.overflow = True
                continue
            for v2, c2 in self.reduce_word(v).items():
                for w2, c3 in self.reduce_word(w).items():
                    _add_into(out, (v2, k, w2), c * c2 * c3)
        return out

    # constructors
    def one(self):
        return UElement({((), self.zero_k, ()): QScalar.one()})

    def a(self, i, l=1):
        return UElement({((), self.zero_k, ((i, l),)): QScalar.one()})

    def b(self, i, l=1):
        return UElement({(((i, l),), self.zero_k, ()): QScalar.one()})

    def K(self, kv):
        return UElement({((), tuple(kv), ()): QScalar.one()})

    def Ki(self, i, e=1):
        k = [0] * self.datum.n
        k[i] = e
        return self.K(k)

    def embed_plus(self, x):
        return UElement(self.normalize({((), self.zero_k, w): c for w, c in x.terms.items()}))

    def embed_minus(self, x):
        """x^-: a-letters become b-letters, so omega(x^+) = (-1)^{p(x)} x^-."""
        return UElement(self.normalize({(w, self.zero_k, ()): c for w, c in x.terms.items()}))

    def monomial(self, v=(), k=None, w=()):
        return UElement({(tuple(v), tuple(k or self.zero_k), tuple(w)): QScalar.one()})

    # products
    def mul_monomials(self, m1, m2):
        key = (m1, m2)
        r = self._mul.get(key)
        if r is not None:
            return r
        v1, k1, w1 = m1
        v2, k2, w2 = m2
        raw = {}
        for (v, kap, w), c in straighten_words(self.datum, w1, v2).items():
            e = -self.datum.form(k1, word_weight(self.datum, v)) \
                - self.datum.form(k2, word_weight(self.datum, w))
            # exponent vectors pair through the root form: K^k ~ sum k_i alpha_i
            _add_into(raw, (v1 + v, kvec_add(kvec_add(k1, kap), k2), w + w2),
                      c * QScalar.q_pow(e))
        r = self.normalize(raw)
        self._mul[key] = r
        return r

    def mul(self, x, y):
        out = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                for m, c in self.mul_monomials(m1, m2).items():
                    _add_into(out, m, c1 * c2 * c)
        return UElement(out)

    def prod(self, *xs):
        out = self.one()
        for x in xs:
            out = self.mul(out, x)
        return out

    def straighten_product(self, u, v):
        self.overflow = False
        r = self.mul(u, v)
        return r, self.overflow

    def parity(self, m):
        return mono_parity(self.datum, m)

    # involutions and maps
    def omega(self, x):
        """Automorphism a -> (-1)^p b, b -> a, K -> K^{-1}."""
        out = UElement()
        for (v, k, w), c in x.terms.items():
            t = self.prod(*[self.a(*g) for g in v])
            t = self.mul(t, self.K(tuple(-e for e in k)))
            s = _sgn(word_parity(self.datum, w))
            t = self.mul(t, self.prod(*[self.b(*g) for g in w]).scale(s))
            out = out + t.scale(c)
        return out

    def sigma(self, x):
        """Anti-automorphism a -> a, b -> (-1)^p b, K -> K^{-1}."""
        out = UElement()
        for (v, k, w), c in x.terms.items():
            t = self.prod(*[self.a(*g) for g in reversed(w)])
            t = self.mul(t, self.K(tuple(-e for e in k)))
            s = _sgn(word_parity(self.datum, v))
            t = self.mul(t, self.prod(*[self.b(*g) for g in reversed(v)]).scale(s))
            out = out + t.scale(c)
        return out

    def b_bar_factor(self, letter):
        """bar(b_il) = (-1)^{p(li)} q_i^{2l} b_il keeps the cross relation."""
        i, l = letter
        return signed_qpow(_sgn(self.datum.letter_parity(letter)), 2 * l * self.datum.D[i])

    def bar(self, x):
        out = {}
        for (v, k, w), c in x.terms.items():
            f = c.bar()
            for g in v:
                f = f * self.b_bar_factor(g)
            _add_into(out, (v, tuple(-e for e in k), w), f)
        return UElement(out)

    def bar_plain(self, x):
        """a -> a, b -> b, K -> K^{-1}: not multiplicative, kept for comparison."""
        return UElement({(v, tuple(-e for e in k), w): c.bar()
                         for (v, k, w), c in x.terms.items()})

    # antipodes
    def _anti(self, x, gen_a, gen_b):
        out = UElement()
        for (v, k, w), c in x.terms.items():
            pv = word_parity(self.datum, v)
            pw = word_parity(self.datum, w)
            t = self._anti_word(w, gen_a)
            t = self.mul(t, self.K(tuple(-e for e in k)))
            t = self.mul(t, self._anti_word(v, gen_b))
            out = out + t.scale(c * _sgn(pv * pw))
        return out

    def _anti_word(self, word, gen):
        # S(x1...xn) = (-1)^{sum_{i<j} p_i p_j} S(xn)...S(x1)
        odd = sum(1 for g in word if self.datum.letter_parity(g))
        t = self.prod(*[gen(g) for g in reversed(word)])
        return t.scale(_sgn(odd * (odd - 1) // 2))

    def antipode_S(self, x):
        d = self.datum
        ga = lambda g: self.mul(self.K(kvec_of_letter(d, g, -1)), self.a(*g)).scale(-1)
        gb = lambda g: self.mul(self.b(*g), self.K(kvec_of_letter(d, g, 1))).scale(-1)
        return self._anti(x, ga, gb)

    def antipode_Sprime(self, x):
        d = self.datum
        ga = lambda g: self.mul(self.a(*g), self.K(kvec_of_letter(d, g, -1))).scale(-1)
        gb = lambda g: self.mul(self.K(kvec_of_letter(d, g, 1)), self.b(*g)).scale(-1)
        return self._anti(x, ga, gb)

    def commutator_plus(self, x, i, l=1):
        """(rho_{i,l}(x)^+ K^l - (-1)^{p(li)p(x)-p(li)} K^{-l} rho^{i,l}(x)^+) / (1 - s q_i^{2l})."""
        d = self.datum
        pl = d.letter_parity((i, l))
        px = _homog_parity(d, x)
        eta = (1 - QScalar.q_pow(2 * l * d.D[i]) * _sgn(pl)).inverse()
        first = self.mul(self.embed_plus(derive_right(d, x, i, l)),
                         self.K(kvec_of_letter(d, (i, l), 1)))
        second = self.mul(self.K(kvec_of_letter(d, (i, l), -1)),
                          self.embed_plus(derive_left(d, x, i, l)))
        return (first - second.scale(_sgn(pl * px + pl))).scale(eta)

    def commutator_minus(self, x, i, l=1):
        """Right side of a_il x^- - (-1)^{p(li)p(x)} x^- a_il."""
        d = self.datum
        pl = d.letter_parity((i, l))
        px = _homog_parity(d, x)
        eta = (1 - QScalar.q_pow(2 * l * d.D[i]) * _sgn(pl)).inverse()
        first = self.mul(self.K(kvec_of_letter(d, (i, l), 1)),
                         self.embed_minus(derive_left(d, x, i, l)))
        second = self.mul(self.embed_minus(derive_right(d, x, i, l)),
                          self.K(kvec_of_letter(d, (i, l), -1)))
        return (first - second.scale(_sgn(pl * px + pl))).scale(eta)

    # coproduct
    def tensor_mul(self, X, Y):
        out = {}
        d = self.datum
        for (x1, x2), c in X.items():
            p2 = mono_parity(d, x2)
            for (y1, y2), e in Y.items():
                s = _sgn(p2 * mono_parity(d, y1))
                A = self.mul_monomials(x1, y1)
                if not A:
                    continue
                B = self.mul_monomials(x2, y2)
                ce = c * e * s
                for m1, a in A.items():
                    for m2, b in B.items():
                        _add_into(out, (m1, m2), ce * a * b)
        return out

    def tensor_one(self):
        z = ((), self.zero_k, ())
        return {(z, z): QScalar.one()}

    def _delta_gen(self, kind, letter, barred=False):
        z = self.zero_k
        kp = kvec_of_letter(self.datum, letter, 1)
        km = kvec_of_letter(self.datum, letter, -1)
        g = (letter,)
        one = ((), z, ())
        if kind == "a":
            k = km if barred else kp
            return {(((), z, g), one): QScalar.one(), (((), k, ()), ((), z, g)): QScalar.one()}
        k = kp if barred else km
        return {((g, z, ()), ((), k, ())): QScalar.one(), (one, (g, z, ())): QScalar.one()}

    def delta_monomial(self, m, barred=False):
        key = (m, barred)
        r = self._delta.get(key)
        if r is not None:
            return r
        v, k, w = m
        r = self.tensor_one()
        for g in v:
            r = self.tensor_mul(r, self._delta_gen("b", g, barred))
        if any(k):
            r = self.tensor_mul(r, {(((), k, ()), ((), k, ())): QScalar.one()})
        for g in w:
            r = self.tensor_mul(r, self._delta_gen("a", g, barred))
        self._delta[key] = r
        return r

    def coproduct(self, x):
        out = {}
        for m, c in x.terms.items():
            for key, d in self.delta_monomial(m).items():
                _add_into(out, key, c * d)
        return out

    def coproduct_bar(self, x):
        """(bar (x) bar) Delta bar on generators: a -> a(x)1 + K^{-l}(x)a, b -> b(x)K^l + 1(x)b."""
        out = {}
        for m, c in x.terms.items():
            for key, d in self.delta_monomial(m, barred=True).items():
                _add_into(out, key, c * d)
        return out

    def tensor_bar(self, X):
        out = {}
        for (m1, m2), c in X.items():
            f = c.bar()
            for g in m1[0] + m2[0]:
                f = f * self.b_bar_factor(g)
            key = ((m1[0], tuple(-e for e in m1[1]), m1[2]),
                   (m2[0], tuple(-e for e in m2[1]), m2[2]))
            _add_into(out, key, f)
        return out


def _homog_parity(datum, x):
    ps = {word_parity(datum, w) for w in x.terms}
    if len(ps) > 1:
        raise ValueError("element is not parity-homogeneous")
    return ps.pop() if ps else 0


def tensor_add(*Xs):
    out = {}
    for X in Xs:
        for k, c in X.items():
            _add_into(out, k, c)
    return out


def tensor_sub(X, Y):
    out = dict(X)
    for k, c in Y.items():
        _add_into(out, k, -c)
    return out


def tensor_scale(X, c):
    c = QScalar.coerce(c)
    if c.is_zero():
        return {}
    return {k: v * c for k, v in X.items()}


def antipode_sign(datum, nu):
    """(-1)^{ht nu + e(nu)} (-q)^{c(nu)} as used in S(x^+) for x of ExDegree nu."""
    ht = sum(m for _, m in nu)
    c = c_of(datum, nu)
    return signed_qpow(_sgn(ht + e_of(datum, nu) + c), c)


def k_of_exdegree(datum, nu, sign=1):
    v = [0] * datum.n
    for (i, l), m in nu:
        v[i] += sign * l * m
    return tuple(v)


def triangular_count(ua, beta_minus, beta_plus, depth=None):
    """Number of normal monomials b_v K a_w per fixed K with |v|, |w| given."""
    from .cartan import exdegrees_of_weight
    d = ua.datum
    dm = sum(gram_block(d, nu).rank for nu in exdegrees_of_weight(d, beta_minus, depth))
    dp = sum(gram_block(d, nu).rank for nu in exdegrees_of_weight(d, beta_plus, depth))
    return dm * dp


def exdegree_parts_list(nu):
    return exdegree_parts(nu)
