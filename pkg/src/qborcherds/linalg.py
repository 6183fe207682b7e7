"""Fraction-free Gauss-Jordan elimination over Z[q].

Matrices of Laurent data are first scaled row by row with powers of q so that
every entry is a polynomial; this does not change column relations.
"""

from flint import fmpz_poly

from .scalar import QScalar

_Z = fmpz_poly([])
_ONE = fmpz_poly([1])


def laurent_rows_to_poly(rows):
    """rows of dict exponent -> int; returns fmpz_poly rows and the row shifts."""
    out, shifts = [], []
    for row in rows:
        lo = min((min(d) for d in row if d), default=0)
        prow = []
        for d in row:
            if not d:
                prow.append(_Z)
                continue
            coeffs = [0] * (max(d) - lo + 1)
            for e, c in d.items():
                coeffs[e - lo] += c
            prow.append(fmpz_poly(coeffs))
        out.append(prow)
        shifts.append(lo)
    return out, shifts


def rref_ff(M, ncols=None):
    """Fraction-free reduced row echelon form.

    Returns (R, pivots, den): every pivot entry of R equals ``den`` and each
    pivot column is zero elsewhere.  Column c of R divided by den expresses
    column c of M in terms of the pivot columns.
    """
    R = [list(row) for row in M]
    m = len(R)
    n = ncols if ncols is not None else (len(R[0]) if R else 0)
    prev = _ONE
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((k for k in range(r, m) if not R[k][c].is_zero()), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        rowr = R[r]
        for k in range(m):
            if k == r:
                continue
            rk = R[k]
            f = rk[c]
            if f.is_zero():
                if prev != _ONE:
                    R[k] = [x if x.is_zero() else (piv * x) / prev for x in rk]
                else:
                    R[k] = [x if x.is_zero() else piv * x for x in rk]
                continue
            new = []
            for j in range(len(rk)):
                a = rk[j]
                b = rowr[j]
                v = piv * a - f * b if not b.is_zero() else piv * a
                if prev != _ONE and not v.is_zero():
                    v = v / prev
                new.append(v)
            R[k] = new
        prev = piv
        pivots.append(c)
        r += 1
    return R, pivots, prev


def poly_to_q(p, shift=0):
    if p.is_zero():
        return QScalar.zero()
    return QScalar(p, _ONE, shift)


def qscalar_matrix_to_poly(rows):
    """Clear denominators row by row of a QScalar matrix; returns fmpz_poly rows."""
    out = []
    for row in rows:
        nz = [x for x in row if not x.is_zero()]
        if not nz:
            out.append([_Z] * len(row))
            continue
        den = _ONE
        for x in nz:
            g = den.gcd(x.den)
            den = den * (x.den / g)
        lo = min(x.val for x in nz)
        prow = []
        for x in row:
            if x.is_zero():
                prow.append(_Z)
                continue
            p = x.num * (den / x.den)
            k = x.val - lo
            if k:
                p = fmpz_poly([0] * k + p.coeffs())
            prow.append(p)
        out.append(prow)
    return out


def nullspace(rows):
    """Basis of the right kernel of a QScalar matrix, as lists of QScalars."""
    if not rows:
        return []
    n = len(rows[0])
    R, piv, den = rref_ff(qscalar_matrix_to_poly(rows), n)
    pset = set(piv)
    basis = []
    for j in range(n):
        if j in pset:
            continue
        v = [QScalar.zero()] * n
        v[j] = poly_to_q(den)
        for k, pc in enumerate(piv):
            v[pc] = -poly_to_q(R[k][j])
        basis.append(v)
    return basis


def rank(rows):
    if not rows:
        return 0
    return len(rref_ff(qscalar_matrix_to_poly(rows), len(rows[0]))[1])


def row_basis(rows):
    """Linearly independent rows spanning the row space (as a sub-list)."""
    if not rows:
        return []
    T = [list(col) for col in zip(*rows)]
    _, piv, _ = rref_ff(qscalar_matrix_to_poly(T), len(rows))
    return [rows[k] for k in piv]


def inverse(rows):
    """Inverse of a square QScalar matrix."""
    n = len(rows)
    P = qscalar_matrix_to_poly(rows)
    aug = [P[k] + [_ONE if j == k else _Z for j in range(n)] for k in range(n)]
    # the row scaling must be carried into the identity block
    scal = []
    for k in range(n):
        nz = [x for x in rows[k] if not x.is_zero()]
        if not nz:
            raise ZeroDivisionError("singular matrix")
        j = next(j for j in range(n) if not rows[k][j].is_zero())
        scal.append(QScalar(P[k][j], _ONE, 0) / rows[k][j])
    R, piv, den = rref_ff(aug, n)
    if len(piv) != n:
        raise ZeroDivisionError("singular matrix")
    d = poly_to_q(den)
    inv = [[QScalar.zero()] * n for _ in range(n)]
    for k in range(n):
        for j in range(n):
            x = R[k][n + j]
            if not x.is_zero():
                # row k of R corresponds to pivot column k
                inv[k][j] = poly_to_q(x) / d * scal[j]
    return inv


def matmul(A, B):
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        r = []
        for j in range(n):
            s = QScalar.zero()
            for k, a in enumerate(row):
                if not a.is_zero():
                    b = B[k][j]
                    if not b.is_zero():
                        s = s + a * b
            r.append(s)
        out.append(r)
    return out


def matvec(A, v):
    out = []
    for row in A:
        s = QScalar.zero()
        for a, b in zip(row, v):
            if not a.is_zero() and not b.is_zero():
                s = s + a * b
        out.append(s)
    return out


def identity(n):
    return [[QScalar.one() if i == j else QScalar.zero() for j in range(n)]
            for i in range(n)]


def is_zero_matrix(A):
    return all(x.is_zero() for row in A for x in row)
