"""Verma modules M(lam) at bounded depth, their maximal submodule and V(lam)."""

from dataclasses import dataclass, field

from .cartan import exdegrees_of_weight, roots_up_to
from .freesuper import FElement, derive_left, derive_right, word_parity
from .linalg import (identity, inverse, matmul, matvec, nullspace,
                     row_basis, rref_ff, qscalar_matrix_to_poly)
from .pairing import gram_block
from .scalar import QScalar


def _sgn(e):
    return -1 if e & 1 else 1


def _zeros(r, c):
    return [[QScalar.zero()] * c for _ in range(r)]


def sub_root(beta, i, l):
    out = list(beta)
    out[i] -= l
    return tuple(out) if min(out) >= 0 else None


def add_root(beta, i, l):
    out = list(beta)
    out[i] += l
    return tuple(out)


class VermaSlice:
    """Weight spaces M(lam)_{lam - beta}, ht beta <= depth, with action matrices.

    The basis of M(lam)_{lam-beta} is x^- v_lam for x running over the pivot
    words of every ExDegree of weight beta.
    """

    def __init__(self, datum, lam, depth):
        self.datum = datum
        self.lam = lam
        self.depth = depth
        self.h_lam = datum.coroot_values(lam)
        self.betas = roots_up_to(datum, depth)
        self.spaces = {}
        self._slot = {}
        for beta in self.betas:
            basis = []
            for nu in exdegrees_of_weight(datum, beta, depth):
                blk = gram_block(datum, nu)
                for s, w in enumerate(blk.pivot_words):
                    self._slot[w] = len(basis)
                    basis.append(w)
            self.spaces[beta] = basis
        self._lower = {}
        self._raise = {}
        self.letters = datum.letters(depth)

    def dim(self, beta):
        return len(self.spaces[beta])

    def pair_h(self, letter, beta):
        """(l alpha_i, lam - beta): K_i^l acts on M_{lam-beta} by q to this power."""
        i, l = letter
        d = self.datum
        h = self.h_lam[i] - sum(d.A[i][j] * beta[j] for j in d.indices)
        return l * d.D[i] * h

    def coords(self, x, beta):
        """Coordinates of x^- v_lam (x in F of weight beta) in the basis of beta."""
        vec = [QScalar.zero()] * self.dim(beta)
        for nu in x.exdegrees():
            blk = gram_block(self.datum, nu)
            for s, c in blk.reduce(x.component(nu)).items():
                vec[self._slot[blk.basis_words[blk.pivots[s]]]] += c
        return vec

    def lowering(self, letter, beta):
        """Matrix of b_il : M_{lam-beta} -> M_{lam-beta-l alpha_i}."""
        key = (letter, beta)
        if key in self._lower:
            return self._lower[key]
        i, l = letter
        tgt = add_root(beta, i, l)
        if sum(tgt) > self.depth:
            raise ValueError("lowering leaves the depth window")
        cols = [self.coords(FElement.word((letter,) + w), tgt) for w in self.spaces[beta]]
        M = [list(r) for r in zip(*cols)] if cols else _zeros(self.dim(tgt), 0)
        self._lower[key] = M
        return M

    def raising(self, letter, beta):
        """Matrix of a_il : M_{lam-beta} -> M_{lam-beta+l alpha_i} via the x^- commutator."""
        key = (letter, beta)
        if key in self._raise:
            return self._raise[key]
        i, l = letter
        tgt = sub_root(beta, i, l)
        d = self.datum
        if tgt is None:
            M = _zeros(0, self.dim(beta))
            self._raise[key] = M
            return M
        pl = d.letter_parity(letter)
        eta = (1 - QScalar.q_pow(2 * l * d.D[i]) * _sgn(pl)).inverse()
        c_left = QScalar.q_pow(self.pair_h(letter, tgt)) * eta
        c_right = QScalar.q_pow(-self.pair_h(letter, (0,) * d.n)) * eta
        cols = []
        for w in self.spaces[beta]:
            x = FElement.word(w)
            px = word_parity(d, w)
            s = _sgn(pl * px + pl)
            v1 = self.coords(derive_left(d, x, i, l), tgt)
            v2 = self.coords(derive_right(d, x, i, l), tgt)
            cols.append([c_left * a - c_right * b * s for a, b in zip(v1, v2)])
        M = [list(r) for r in zip(*cols)] if cols else _zeros(self.dim(tgt), 0)
        self._raise[key] = M
        return M

    def k_scalar(self, letter, beta, sign=1):
        return QScalar.q_pow(sign * self.pair_h(letter, beta))

    def raising_letters(self, beta):
        return [g for g in self.letters if sub_root(beta, *g) is not None]

    def singular_vectors(self, beta):
        """Joint kernel of all a_il on M_{lam-beta}."""
        rows = []
        for g in self.raising_letters(beta):
            rows += self.raising(g, beta)
        if not rows:
            return identity(self.dim(beta))
        return nullspace(rows)


def _span_basis(vectors):
    """An independent subset spanning the same space."""
    return row_basis(vectors) if vectors else []


def _annihilator(basis, dim):
    """Rows Q with kernel exactly span(basis)."""
    if not basis:
        return identity(dim)
    return nullspace(basis)


@dataclass
class QuotientSlice:
    verma: VermaSlice
    J: dict                      # beta -> basis of J(lam)_{lam-beta}
    Q: dict = field(default_factory=dict)   # beta -> projection rows
    L: dict = field(default_factory=dict)   # beta -> lift columns (as matrix dim x k)

    def __post_init__(self):
        for beta in self.verma.betas:
            d = self.verma.dim(beta)
            Q = _annihilator(self.J[beta], d)
            self.Q[beta] = Q
            self.L[beta] = _lift(Q, d)

    @property
    def datum(self):
        return self.verma.datum

    @property
    def depth(self):
        return self.verma.depth

    def dim(self, beta):
        return len(self.Q[beta])

    def dims(self):
        return {beta: self.dim(beta) for beta in self.verma.betas}

    def lowering(self, letter, beta):
        tgt = add_root(beta, *letter)
        return matmul(matmul(self.Q[tgt], self.verma.lowering(letter, beta)), self.L[beta])

    def raising(self, letter, beta):
        tgt = sub_root(beta, *letter)
        if tgt is None:
            return _zeros(0, self.dim(beta))
        return matmul(matmul(self.Q[tgt], self.verma.raising(letter, beta)), self.L[beta])

    def project(self, beta, vec):
        return matvec(self.Q[beta], vec)

    def singular_vectors(self, beta):
        rows = []
        for g in self.verma.raising_letters(beta):
            rows += self.raising(g, beta)
        if not rows:
            return identity(self.dim(beta))
        return nullspace(rows)


def _lift(Q, dim):
    """Columns L with Q L = I, supported on a set of unit vectors."""
    k = len(Q)
    if k == 0:
        return _zeros(dim, 0)
    if k == dim and all(Q[r][c] == (QScalar.one() if r == c else QScalar.zero())
                        for r in range(k) for c in range(dim)):
        return identity(dim)
    _, piv, _ = rref_ff(qscalar_matrix_to_poly(Q), dim)
    sub = [[Q[r][c] for c in piv] for r in range(k)]
    inv = inverse(sub)
    L = _zeros(dim, k)
    for a, c in enumerate(piv):
        for j in range(k):
            L[c][j] = inv[a][j]
    return L


def build_verma(datum, lam, depth):
    return VermaSlice(datum, lam, depth)


def maximal_submodule_sweep(verma, order=None):
    """J(lam) by repeated top-down sweeps: singular vectors modulo the current
    submodule, closed under lowering, until nothing changes."""
    J = {beta: [] for beta in verma.betas}
    betas = [b for b in verma.betas if any(b)]
    if order is not None:
        betas = order(betas)
    changed = True
    while changed:
        changed = False
        for beta in betas:
            dim = verma.dim(beta)
            if dim == 0:
                continue
            rows = []
            for g in verma.raising_letters(beta):
                tgt = sub_root(beta, *g)
                rows += matmul(_annihilator(J[tgt], verma.dim(tgt)), verma.raising(g, beta))
            sing = nullspace(rows) if rows else identity(dim)
            new = _span_basis(J[beta] + sing)
            if len(new) > len(J[beta]):
                J[beta] = new
                changed = True
                _push_down(verma, J, beta)
    return J


def _push_down(verma, J, beta):
    stack = [beta]
    while stack:
        b = stack.pop()
        for g in verma.letters:
            tgt = add_root(b, *g)
            if sum(tgt) > verma.depth:
                continue
            M = verma.lowering(g, b)
            imgs = [matvec(M, v) for v in J[b]]
            imgs = [v for v in imgs if any(not x.is_zero() for x in v)]
            if not imgs:
                continue
            new = _span_basis(J[tgt] + imgs)
            if len(new) > len(J[tgt]):
                J[tgt] = new
                stack.append(tgt)


def maximal_submodule_direct(verma):
    """J_beta = {v : a_il v in J for all (i,l)}, computed upward from the top."""
    T = {}
    J = {}
    for beta in verma.betas:
        dim = verma.dim(beta)
        if not any(beta):
            T[beta] = identity(dim)
            J[beta] = []
            continue
        rows = []
        for g in verma.raising_letters(beta):
            tgt = sub_root(beta, *g)
            if T[tgt]:
                rows += matmul(T[tgt], verma.raising(g, beta))
        rows = row_basis(rows) if rows else []
        T[beta] = rows
        J[beta] = nullspace(rows) if rows else identity(dim)
    return J


def irreducible_quotient(verma, order=None):
    return QuotientSlice(verma, maximal_submodule_sweep(verma, order))


def brute_character(qs):
    """beta -> dim V(lam)_{lam-beta}."""
    return {beta: qs.dim(beta) for beta in qs.verma.betas}


def verma_character(verma):
    return {beta: verma.dim(beta) for beta in verma.betas}


# checks ---------------------------------------------------------------------

def _apply_power(qs, letter, beta, vec, r):
    cur = vec
    b = beta
    for _ in range(r):
        tgt = add_root(b, *letter)
        if sum(tgt) > qs.depth:
            return None, None
        cur = matvec(qs.lowering(letter, b), cur)
        b = tgt
        if all(x.is_zero() for x in cur):
            return cur, b
    return cur, b


def _is_zero(v):
    return all(x.is_zero() for x in v)


def _unit(n, k):
    v = [QScalar.zero()] * n
    v[k] = QScalar.one()
    return v


def check_oint(qs):
    """Integrability checks on V(lam) inside the depth window."""
    d = qs.datum
    vm = qs.verma
    rep = {"c": True, "d": True, "e": True, "f": True, "undetermined": 0, "failures": []}
    for beta in vm.betas:
        n = qs.dim(beta)
        if n == 0:
            continue
        h = [vm.h_lam[i] - sum(d.A[i][j] * beta[j] for j in d.indices) for i in d.indices]
        for i in d.indices:
            if d.is_real(i):
                for k in range(n):
                    v = _unit(n, k)
                    # a-string length s, then b^{h+2s+1} must kill v
                    s, cur, b = 0, v, beta
                    while True:
                        tgt = sub_root(b, i, 1)
                        if tgt is None:
                            break
                        cur = matvec(qs.raising((i, 1), b), cur)
                        b = tgt
                        if _is_zero(cur):
                            break
                        s += 1
                    r = h[i] + 2 * s + 1
                    if r <= 0:
                        rep["c"] = False
                        rep["failures"].append(("c", beta, i))
                        continue
                    out, _ = _apply_power(qs, (i, 1), beta, v, r)
                    if out is None:
                        rep["undetermined"] += 1
                    elif not _is_zero(out):
                        rep["c"] = False
                        rep["failures"].append(("c", beta, i))
                continue
            if h[i] < 0:
                rep["d"] = False
                rep["failures"].append(("d", beta, i))
            for l in range(1, d.max_level(i, vm.depth) + 1):
                if h[i] == 0:
                    tgt = add_root(beta, i, l)
                    if sum(tgt) <= vm.depth and qs.dim(tgt) and not _all_zero(qs.lowering((i, l), beta)):
                        rep["e"] = False
                        rep["failures"].append(("e", beta, (i, l)))
                if h[i] <= -l * d.A[i][i] and sub_root(beta, i, l) is not None:
                    if not _all_zero(qs.raising((i, l), beta)):
                        rep["f"] = False
                        rep["failures"].append(("f", beta, (i, l)))
    rep["ok"] = rep["c"] and rep["d"] and rep["e"] and rep["f"]
    return rep


def _all_zero(M):
    return all(x.is_zero() for row in M for x in row)


def highest_weight_checks(qs):
    """Highest-weight structure checks on V(lam), lam dominant."""
    d = qs.datum
    vm = qs.verma
    zero = (0,) * d.n
    out = {}
    top = [QScalar.one()]
    ok_a = True
    for i in d.real_indices:
        r = vm.h_lam[i] + 1
        if r <= vm.depth:
            res, _ = _apply_power(qs, (i, 1), zero, top, r)
            ok_a &= res is not None and _is_zero(res)
    out["a"] = ok_a
    ok_b = True
    for i in d.indices:
        if d.is_imaginary(i) and vm.h_lam[i] == 0:
            for l in range(1, d.max_level(i, vm.depth) + 1):
                ok_b &= qs.dim(d.unit(i, l)) == 0
    out["b"] = ok_b
    ok_d = ok_e = True
    for beta in vm.betas:
        if qs.dim(beta) == 0:
            continue
        h = [vm.h_lam[i] - sum(d.A[i][j] * beta[j] for j in d.indices) for i in d.indices]
        for i in d.indices:
            if not d.is_imaginary(i):
                continue
            for l in range(1, d.max_level(i, vm.depth) + 1):
                tgt = add_root(beta, i, l)
                if h[i] == 0 and sum(tgt) <= vm.depth:
                    ok_d &= qs.dim(tgt) == 0
                if h[i] <= -l * d.A[i][i] and sub_root(beta, i, l) is not None:
                    ok_e &= _all_zero(qs.raising((i, l), beta))
    out["d"] = ok_d
    out["e"] = ok_e
    return out


def no_singular_below_top(qs):
    for beta in qs.verma.betas:
        if any(beta) and qs.dim(beta) and qs.singular_vectors(beta):
            return False, beta
    return True, None


def commutation_defect(vm, beta, g, h):
    """a_g b_h - (-1)^{p p} b_h a_g - delta (K^l - K^-l)/(1 - s q^{2l}) on M_{lam-beta}."""
    d = vm.datum
    s = _sgn(d.letter_parity(g) * d.letter_parity(h))
    up = add_root(beta, *h)
    if sum(up) > vm.depth:
        return None
    lhs = matmul(vm.raising(g, up), vm.lowering(h, beta))
    mid = sub_root(beta, *g)
    n = vm.dim(beta)
    if mid is not None:
        lo = vm.lowering(h, mid)
        ra = vm.raising(g, beta)
        rhs = matmul(lo, ra)
        lhs = [[a - b * s for a, b in zip(r1, r2)] for r1, r2 in zip(lhs, rhs)]
    if g == h:
        i, l = g
        eta = (1 - QScalar.q_pow(2 * l * d.D[i]) * _sgn(d.letter_parity(g))).inverse()
        c = (vm.k_scalar(g, beta) - vm.k_scalar(g, beta, -1)) * eta
        for k in range(n):
            lhs[k][k] = lhs[k][k] - c
    return lhs
