"""Bilinear form on F, Gram blocks per ExDegree, the radical and dual bases."""

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb

from .cartan import exdegree_parts
from .freesuper import (FElement, _add_into, derive_right, divided_power,
                        twist, word_weight)
from .linalg import (inverse, laurent_rows_to_poly, poly_to_q, rref_ff)
from .scalar import QScalar


def letter_norm(datum, letter):
    """(a_il, a_il) = 1 / (1 - (-1)^{p(li)} q_i^{2l})."""
    i, l = letter
    s = -1 if datum.letter_parity(letter) else 1
    return (1 - QScalar.q_pow(2 * l * datum.D[i]) * s).inverse()


@lru_cache(maxsize=None)
def word_form(datum, u, w):
    """(u, w) for words, by peeling the last letter of u."""
    if len(u) != len(w):
        return QScalar.zero()
    if not u:
        return QScalar.one()
    a = u[-1]
    acc = QScalar.zero()
    for v, c in derive_right(datum, FElement.word(w), *a).terms.items():
        f = word_form(datum, u[:-1], v)
        if not f.is_zero():
            acc = acc + c * f
    if acc.is_zero():
        return acc
    return acc * letter_norm(datum, a)


def form(datum, x, y):
    acc = QScalar.zero()
    for u, c in x.terms.items():
        for w, d in y.terms.items():
            f = word_form(datum, u, w)
            if not f.is_zero():
                acc = acc + c * d * f
    return acc


@lru_cache(maxsize=None)
def _strip_letter(datum, word, letter):
    """Right derivation on a word as integer data: [(subword, sign, exponent)]."""
    out = []
    lw = (letter,)
    for k, a in enumerate(word):
        if a == letter:
            s, e = twist(datum, lw, word[k + 1:])
            out.append((word[:k] + word[k + 1:], s, e))
    return tuple(out)


@lru_cache(maxsize=None)
def poly_pair(datum, u, w):
    """Integer Laurent part of (u, w): (u, w) = N_nu * poly_pair, as dict exp -> int."""
    if not u:
        return {0: 1} if not w else {}
    a = u[-1]
    out = {}
    for v, s, e in _strip_letter(datum, w, a):
        for e2, c in poly_pair(datum, u[:-1], v).items():
            k = e + e2
            x = out.get(k, 0) + s * c
            if x:
                out[k] = x
            else:
                out.pop(k, None)
    return out


def multiset_permutations(parts):
    parts = sorted(parts)
    out = []
    n = len(parts)

    def rec(acc, counts):
        if len(acc) == n:
            out.append(tuple(acc))
            return
        for k, (letter, m) in enumerate(counts):
            if m:
                counts[k] = (letter, m - 1)
                acc.append(letter)
                rec(acc, counts)
                acc.pop()
                counts[k] = (letter, m)

    distinct = []
    for p in parts:
        if distinct and distinct[-1][0] == p:
            distinct[-1] = (p, distinct[-1][1] + 1)
        else:
            distinct.append((p, 1))
    rec([], distinct)
    return out


def block_norm(datum, nu):
    out = QScalar.one()
    for letter, m in nu:
        out = out * letter_norm(datum, letter) ** m
    return out


@dataclass
class GramBlock:
    datum: object
    degree: tuple
    basis_words: list
    poly: list           # integer Laurent matrix, entries dict exp -> int
    norm: QScalar
    pivots: list         # positions into basis_words
    coords: list         # per word: dict pivot slot -> QScalar
    radical_basis: list = field(default_factory=list)
    _dual: list = None

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def dim(self):
        return len(self.basis_words)

    @cached_property
    def index(self):
        return {w: k for k, w in enumerate(self.basis_words)}

    @property
    def pivot_words(self):
        return [self.basis_words[k] for k in self.pivots]

    @cached_property
    def gram(self):
        return [[QScalar.from_laurent(d) * self.norm if d else QScalar.zero()
                 for d in row] for row in self.poly]

    @property
    def dual_coeffs(self):
        """X with dual_p = sum_r X[r][p] pivot_r, i.e. the inverse pivot Gram matrix."""
        if self._dual is None:
            sub = [[QScalar.from_laurent(self.poly[a][b]) if self.poly[a][b]
                    else QScalar.zero() for b in self.pivots] for a in self.pivots]
            inv = inverse(sub) if sub else []
            ninv = self.norm.inverse()
            self._dual = [[x * ninv for x in row] for row in inv]
        return self._dual

    def dual_element(self, p):
        X = self.dual_coeffs
        return FElement({self.basis_words[self.pivots[r]]: X[r][p]
                         for r in range(self.rank) if not X[r][p].is_zero()})

    def pivot_element(self, p):
        return FElement.word(self.basis_words[self.pivots[p]])

    def reduce_word(self, w):
        return self.coords[self.index[w]]

    def reduce(self, x):
        """Coordinates (slot -> QScalar) of the component of x in this block."""
        out = {}
        for w, c in x.terms.items():
            k = self.index.get(w)
            if k is None:
                continue
            for slot, d in self.coords[k].items():
                _add_into(out, slot, c * d)
        return out

    def from_coords(self, vec):
        return FElement({self.basis_words[self.pivots[s]]: c for s, c in vec.items()
                         if not c.is_zero()})

    def vector(self, x):
        v = [QScalar.zero()] * self.dim
        for w, c in x.terms.items():
            k = self.index.get(w)
            if k is None:
                raise ValueError(f"word {w} is not of degree {self.degree}")
            v[k] = c
        return v

    def pair_vector(self, x):
        """The vector ((w, x))_w over basis words, up to the block norm."""
        v = self.vector(x)
        out = []
        for row in self.poly:
            s = QScalar.zero()
            for d, c in zip(row, v):
                if d and not c.is_zero():
                    s = s + QScalar.from_laurent(d) * c
            out.append(s)
        return out

    def radical_membership(self, x):
        """(True, coefficients over radical_basis) or (False, witness word)."""
        pv = self.pair_vector(x)
        for k, s in enumerate(pv):
            if not s.is_zero():
                return False, self.basis_words[k]
        v = self.vector(x)
        nonpiv = [j for j in range(self.dim) if j not in set(self.pivots)]
        d = self._den
        return True, [v[j] / d for j in nonpiv]


@lru_cache(maxsize=None)
def gram_block(datum, nu):
    words = multiset_permutations(exdegree_parts(nu))
    poly = [[poly_pair(datum, u, w) for w in words] for u in words]
    P, _ = laurent_rows_to_poly(poly)
    n = len(words)
    R, piv, den = rref_ff(P, n)
    dq = poly_to_q(den)
    pset = {c: k for k, c in enumerate(piv)}
    coords = []
    radical = []
    for j in range(n):
        if j in pset:
            coords.append({pset[j]: QScalar.one()})
            continue
        vec = {}
        rad = {words[j]: dq}
        for k in range(len(piv)):
            if not R[k][j].is_zero():
                c = poly_to_q(R[k][j])
                vec[k] = c / dq
                rad[words[piv[k]]] = -c
        coords.append(vec)
        radical.append(FElement(rad))
    blk = GramBlock(datum, nu, words, poly, block_norm(datum, nu), piv, coords,
                    radical)
    blk._den = dq
    return blk


def blocks_of(datum, x):
    return [gram_block(datum, nu) for nu in x.exdegrees()]


def radical_membership(datum, x):
    """True iff x pairs to zero with every word; certificate per ExDegree."""
    cert = {}
    for nu in x.exdegrees():
        ok, data = gram_block(datum, nu).radical_membership(x.component(nu))
        if not ok:
            return False, data
        cert[nu] = data
    return True, cert


def in_radical(datum, x):
    return radical_membership(datum, x)[0]


def normal_form(datum, x):
    """Rewrite x over pivot words modulo the radical."""
    out = FElement()
    for nu in x.exdegrees():
        blk = gram_block(datum, nu)
        out = out + blk.from_coords(blk.reduce(x.component(nu)))
    return out


# Serre-type elements ------------------------------------------------------

def _sgn(e):
    return -1 if e & 1 else 1


def serre_element(datum, i, j, k=1):
    if not datum.is_real(i):
        raise ValueError("serre_element needs a real index i")
    if (j, k) == (i, 1):
        raise ValueError("(j, k) must differ from (i, 1)")
    if datum.is_real(j) and k != 1:
        raise ValueError("real index j carries level 1 only")
    N = 1 - k * datum.A[i][j]
    pi = datum.parity[i]
    pkj = (k * datum.parity[j]) & 1
    mid = FElement.gen(j, k)
    out = FElement()
    for n2 in range(N + 1):
        n1 = N - n2
        s = _sgn(n2 + pi * (n2 * pkj + comb(n2, 2)))
        term = divided_power(datum, i, n1) * mid * divided_power(datum, i, n2)
        out = out + term.scale(s)
    return out


def higher_serre_element(datum, i, j, m, c):
    """F_{i,j,m,n,c} with n = sum(c)."""
    if not datum.is_real(i) or i == j:
        raise ValueError("higher Serre needs a real i different from j")
    c = tuple(c)
    n = sum(c)
    if m <= 0 or m <= -datum.A[i][j] * n:
        raise ValueError(f"need m > -a_ij n, got m={m}, n={n}")
    if datum.is_real(j):
        mid = divided_power(datum, j, n)
    else:
        mid = FElement.one()
        for ct in c:
            mid = mid * FElement.gen(j, ct)
    pi, pj = datum.parity[i], datum.parity[j]
    qi = datum.D[i]
    out = FElement()
    for r in range(m + 1):
        s = m - r
        e = -r * (n * datum.A[i][j] + m - 1)
        sign = _sgn(r + n * r * pi * pj + comb(r, 2) * pi + (pi * e))
        coeff = QScalar.q_pow(qi * e) * sign
        term = divided_power(datum, i, r) * mid * divided_power(datum, i, s)
        out = out + term.scale(coeff)
    return out


def commuting_element(datum, a, b):
    """a_{il} a_{jk} - (-1)^{p(li)p(kj)} a_{jk} a_{il}."""
    s = -1 if datum.letter_parity(a) and datum.letter_parity(b) else 1
    return FElement.word((a, b)) - FElement.word((b, a)).scale(s)


def weight_of(datum, x):
    ws = {word_weight(datum, w) for w in x.terms}
    if len(ws) != 1:
        raise ValueError("element is not weight-homogeneous")
    return ws.pop()


def divided_power_norm(datum, i, n):
    """Closed form of (a_i^(n), a_i^(n))."""
    from .scalar import super_qfact
    d, p = datum.D[i], datum.parity[i]
    base = 1 - QScalar.q_pow(2 * d) * _sgn(p)
    return (QScalar.q_pow(d * comb(n, 2)) / base ** n
            / super_qfact(n, d, p))
