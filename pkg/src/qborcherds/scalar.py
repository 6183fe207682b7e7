"""Exact arithmetic in Q(q) and super q-combinatorics.

A :class:`QScalar` is stored as ``q**val * num / den`` with ``num`` and ``den``
integer polynomials (python-flint ``fmpz_poly``).  The canonical form keeps
``num(0) != 0``, ``den(0) != 0``, ``gcd(num, den) == 1`` over Z[q] and a
positive leading coefficient on ``den``, so equality is structural.
"""

from fractions import Fraction
from functools import lru_cache

from flint import fmpz_poly

_ONE = fmpz_poly([1])
_ZERO = fmpz_poly([])


def _strip(p):
    """Split off the power of q dividing p: returns (k, p / q**k)."""
    if p.is_zero():
        return 0, p
    k = 0
    while p[k] == 0:
        k += 1
    if k:
        p = fmpz_poly(p.coeffs()[k:])
    return k, p


def _poly_key(p):
    return tuple(int(c) for c in p.coeffs())


class LaurentPoly:
    """Sparse Laurent polynomial in q with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                clean[int(e)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    def to_qscalar(self):
        return sum((QScalar.from_fraction(c) * QScalar.q_pow(e)
                    for e, c in self.terms.items()), QScalar.zero())

    def __str__(self):
        return render_terms(sorted(self.terms.items()))

    __repr__ = __str__


def _coeff_str(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        c = c.numerator
    return str(c)


def render_terms(items):
    """Render ascending (exponent, coefficient) pairs, e.g. ``q^-2 + 2 + q^2``."""
    if not items:
        return "0"
    parts = []
    for e, c in items:
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = _coeff_str(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{_coeff_str(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class QScalar:
    """Element of Q(q) in canonical reduced form."""

    __slots__ = ("num", "den", "val", "_hash")

    def __init__(self, num, den=_ONE, val=0, _canonical=False):
        if not _canonical:
            num, den, val = _canonicalize(num, den, val)
        self.num = num
        self.den = den
        self.val = val
        self._hash = None

    # constructors
    @classmethod
    def zero(cls):
        return _QZERO

    @classmethod
    def one(cls):
        return _QONE

    @classmethod
    def from_int(cls, n):
        if n == 0:
            return _QZERO
        return cls(fmpz_poly([n]), _ONE, 0)

    @classmethod
    def from_fraction(cls, f):
        f = Fraction(f)
        return cls(fmpz_poly([f.numerator]), fmpz_poly([f.denominator]), 0)

    @classmethod
    def q_pow(cls, k):
        return cls(_ONE, _ONE, int(k), _canonical=True)

    @classmethod
    def q(cls):
        return cls.q_pow(1)

    @classmethod
    def from_laurent(cls, terms):
        """Build from a mapping exponent -> integer coefficient."""
        if not terms:
            return _QZERO
        lo = min(terms)
        hi = max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] += int(c)
        return cls(fmpz_poly(coeffs), _ONE, lo)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, QScalar):
            return x
        if isinstance(x, int):
            return cls.from_int(x)
        if isinstance(x, Fraction):
            return cls.from_fraction(x)
        if isinstance(x, LaurentPoly):
            return x.to_qscalar()
        raise TypeError(f"cannot coerce {type(x).__name__} to QScalar")

    # predicates
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self):
        return self.den.degree() == 0 and self.den[0] == 1

    def is_monomial(self):
        return self.is_laurent() and self.num.degree() == 0

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, QScalar):
            other = QScalar.coerce(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        v = min(self.val, other.val)
        a = _shift(self.num, self.val - v)
        b = _shift(other.num, other.val - v)
        if self.den == other.den:
            return QScalar(a + b, self.den, v)
        return QScalar(a * other.den + b * self.den, self.den * other.den, v)

    __radd__ = __add__

    def __neg__(self):
        return QScalar(-self.num, self.den, self.val, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, QScalar):
            other = QScalar.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return QScalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, QScalar):
            if isinstance(other, int):
                if other == 0:
                    return _QZERO
                return QScalar(self.num * other, self.den, self.val)
            other = QScalar.coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return _QZERO
        if self.is_laurent() and other.is_laurent():
            return QScalar(self.num * other.num, _ONE, self.val + other.val,
                           _canonical=_is_normal_num(self.num * other.num))
        return QScalar(self.num * other.num, self.den * other.den,
                       self.val + other.val)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QScalar(self.den, self.num, -self.val)

    def __truediv__(self, other):
        if not isinstance(other, QScalar):
            other = QScalar.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QScalar.coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = _QONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, QScalar):
            try:
                other = QScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return (self.val == other.val and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.val, _poly_key(self.num), _poly_key(self.den)))
        return self._hash

    # structure
    def bar(self):
        """Substitute q -> -q^{-1}."""
        return bar_scalar(self)

    def numerator(self):
        """Numerator as a LaurentPoly (the q-power shift is kept here)."""
        return LaurentPoly({i + self.val: int(c)
                            for i, c in enumerate(self.num.coeffs()) if c})

    def denominator(self):
        return LaurentPoly({i: int(c) for i, c in enumerate(self.den.coeffs()) if c})

    def laurent(self):
        """Return the LaurentPoly when the denominator is a nonzero integer."""
        if self.den.degree() != 0:
            raise ValueError(f"{self} is not a Laurent polynomial")
        d = int(self.den[0])
        return LaurentPoly({i + self.val: Fraction(int(c), d)
                            for i, c in enumerate(self.num.coeffs()) if c})

    def coefficient_items(self):
        return sorted(self.laurent().terms.items())

    def __str__(self):
        if self.den.degree() == 0:
            return render_terms(self.coefficient_items())
        return f"({self.numerator()})/({self.denominator()})"

    def __repr__(self):
        return f"QScalar({self})"


def _shift(p, k):
    if k == 0:
        return p
    return fmpz_poly([0] * k + p.coeffs())


def _is_normal_num(p):
    return not p.is_zero() and p[0] != 0


def _canonicalize(num, den, val):
    if not isinstance(num, fmpz_poly):
        num = fmpz_poly(num)
    if not isinstance(den, fmpz_poly):
        den = fmpz_poly(den)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator in Q(q)")
    if num.is_zero():
        return _ZERO, _ONE, 0
    k1, num = _strip(num)
    k2, den = _strip(den)
    val = val + k1 - k2
    if den.degree() > 0 or den[0] != 1:
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
        if den.leading_coefficient() < 0:
            num = -num
            den = -den
    return num, den, val


_QZERO = QScalar(_ZERO, _ONE, 0, _canonical=True)
_QONE = QScalar(_ONE, _ONE, 0, _canonical=True)


def _bar_poly(p):
    """p(-q^{-1}) written as q^{-deg} * r(q); returns (r, -deg)."""
    coeffs = [int(c) for c in p.coeffs()]
    n = len(coeffs) - 1
    # p(-1/q) = sum c_k (-1)^k q^{-k} = q^{-n} sum c_k (-1)^k q^{n-k}
    rev = [0] * (n + 1)
    for k, c in enumerate(coeffs):
        rev[n - k] = -c if k & 1 else c
    return fmpz_poly(rev), -n


def bar_scalar(s):
    """The ring involution of Q(q) fixing Q and sending q to -q^{-1}."""
    if s.is_zero():
        return s
    n, nv = _bar_poly(s.num)
    d, dv = _bar_poly(s.den)
    sign = -1 if s.val & 1 else 1
    return QScalar(n * sign, d, nv - dv - s.val)


# super q-combinatorics -----------------------------------------------------

def _signed_qpow(d, parity, e):
    """((-1)^parity q^d)^e."""
    s = -1 if (parity and e & 1) else 1
    return QScalar.q_pow(d * e) * s


@lru_cache(maxsize=None)
def super_qbinom(a, t, d, parity):
    """Super Gaussian binomial [a over t] with q_i = q^d and p(i) = parity."""
    if t < 0:
        return QScalar.zero()
    num = QScalar.one()
    for s in range(t):
        num = num * (_signed_qpow(d, parity, a - s) - QScalar.q_pow(d * (s - a)))
    den = QScalar.one()
    for s in range(1, t + 1):
        den = den * (_signed_qpow(d, parity, s) - QScalar.q_pow(-d * s))
    out = num / den
    assert out.den.degree() == 0 and out.den[0] == 1, "q-binomial not in Z[q, q^-1]"
    return out


@lru_cache(maxsize=None)
def super_qint(n, d, parity):
    """[n]_i = (((-1)^p q_i)^n - q_i^{-n}) / ((-1)^p q_i - q_i^{-1})."""
    return super_qbinom(n, 1, d, parity)


@lru_cache(maxsize=None)
def super_qfact(n, d, parity):
    out = QScalar.one()
    for s in range(1, n + 1):
        out = out * super_qint(s, d, parity)
    return out


def euler_phi_coeffs(N):
    """Coefficients phi(0..N) of prod_{k>=1} (1 - q^k), truncated at degree N."""
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for k in range(1, N + 1):
        for e in range(N, k - 1, -1):
            coeffs[e] -= coeffs[e - k]
    return coeffs
