"""Quasi-R-matrix blocks, the intertwining and inverse checks, Omega and the Casimir."""

from dataclasses import dataclass

from .cartan import e_of, exdegree_height, exdegree_nparts, exdegrees_up_to
from .freesuper import FElement, _add_into, derive_left, derive_right, word_parity
from .linalg import matmul, matvec
from .modules import add_root, sub_root
from .pairing import form, gram_block, normal_form
from .scalar import QScalar
from .ualgebra import UAlgebra, tensor_sub


def _sgn(e):
    return -1 if e & 1 else 1


def theta_sign(datum, nu, height_mode="parts"):
    """(-1)^{ht + e(nu)}; ht counts the parts of nu unless height_mode == "weight"."""
    ht = exdegree_nparts(nu) if height_mode == "parts" else exdegree_height(nu)
    return _sgn(ht + e_of(datum, nu))


@dataclass
class ThetaExpansion:
    datum: object
    height_bound: int
    blocks: dict                  # nu -> matrix C[p][r]: coefficient of b_p^- (x) b_r^+
    height_mode: str = "parts"

    def tensor(self, ua):
        """Theta_{<= bound} as a U (x) U dict."""
        z = ua.zero_k
        out = {}
        for nu, C in self.blocks.items():
            blk = gram_block(self.datum, nu)
            pw = blk.pivot_words
            for p, row in enumerate(C):
                for r, c in enumerate(row):
                    if not c.is_zero():
                        _add_into(out, ((pw[p], z, ()), ((), z, pw[r])), c)
        return out


def compute_theta(datum, height_bound, height_mode="parts"):
    """Theta_nu = (-1)^{ht + e(nu)} sum_b b^- (x) b^{*+}, block by ExDegree."""
    blocks = {}
    for nu in exdegrees_up_to(datum, height_bound):
        blk = gram_block(datum, nu)
        if blk.rank == 0:
            continue
        s = theta_sign(datum, nu, height_mode)
        X = blk.dual_coeffs
        # dual_p = sum_r X[r][p] b_r
        blocks[nu] = [[X[r][p] * s for r in range(blk.rank)] for p in range(blk.rank)]
    return ThetaExpansion(datum, height_bound, blocks, height_mode)


def _height(word):
    return sum(l for _, l in word)


def _window(X, N):
    """Drop terms in H_{N+1}: first factor minus part or second factor plus part above N."""
    return {k: c for k, c in X.items()
            if _height(k[0][0]) <= N and _height(k[1][2]) <= N}


def intertwiner_defect(theta, u, ua=None):
    ua = ua or UAlgebra(theta.datum)
    T = theta.tensor(ua)
    lhs = ua.tensor_mul(ua.coproduct(u), T)
    rhs = ua.tensor_mul(T, ua.coproduct_bar(u))
    return _window(tensor_sub(lhs, rhs), theta.height_bound)


def verify_intertwiner(theta, u, ua=None):
    return not intertwiner_defect(theta, u, ua)


def generators(datum, ua, depth):
    out = []
    for g in datum.letters(depth):
        out.append((f"a[{datum.names[g[0]]},{g[1]}]", ua.a(*g)))
        out.append((f"b[{datum.names[g[0]]},{g[1]}]", ua.b(*g)))
    for i in datum.indices:
        out.append((f"K[{datum.names[i]}]", ua.Ki(i)))
    return out


def verify_inverse(theta):
    """Theta * bar(Theta) and bar(Theta) * Theta equal 1 (x) 1 up to the bound.

    Meaningful when bar preserves the radical, e.g. d_i = p(i) mod 2 for all i."""
    N = theta.height_bound
    # Theta factors never straighten, so words above N can be dropped before reduction
    ua = UAlgebra(theta.datum, max_height=N)
    T = theta.tensor(ua)
    Tb = ua.tensor_bar(T)
    one = ua.tensor_one()
    ok = True
    for X, Y in ((T, Tb), (Tb, T)):
        P = _window(ua.tensor_mul(X, Y), N)
        ok &= not tensor_sub(P, one)
    return ok


# coefficient recursions ------------------------------------------------------

def _coeff_matrix(theta, nu):
    """c_{b,b'} with Theta_nu = sum c_{b,b'} b^- (x) b'^{*+}."""
    C = theta.blocks.get(nu)
    if C is None:
        return None
    blk = gram_block(theta.datum, nu)
    G = [[blk.gram[a][b] for b in blk.pivots] for a in blk.pivots]
    # b_r = sum_q (b_r, b_q) b_q^*
    return matmul(C, G)


def cas_identities(theta, nu, letter):
    """The four coefficient recursions for Theta at nu and the letter (i, l).

    Returns a list of four booleans."""
    d = theta.datum
    nu2 = _sub_exdegree(nu, letter)
    if nu2 is None:
        return None
    blk = gram_block(d, nu)
    blk2 = gram_block(d, nu2)
    c1 = _coeff_matrix(theta, nu)
    c2 = _coeff_matrix(theta, nu2)
    if c1 is None or c2 is None:
        return None
    i, l = letter
    pl = d.letter_parity(letter)
    B = [blk.pivot_element(p) for p in range(blk.rank)]
    Bd = [blk.dual_element(p) for p in range(blk.rank)]
    B2 = [blk2.pivot_element(p) for p in range(blk2.rank)]
    B2d = [blk2.dual_element(p) for p in range(blk2.rank)]
    p1 = word_parity(d, blk.pivot_words[0])
    p2 = word_parity(d, blk2.pivot_words[0])
    res = [True] * 4
    for z in (FElement.word(w) for w in blk.basis_words):
        rz_up = derive_left(d, z, i, l)
        rz_lo = derive_right(d, z, i, l)
        e = [FElement(), FElement(), FElement(), FElement()]
        for a in range(blk.rank):
            for b in range(blk.rank):
                c = c1[a][b]
                if c.is_zero():
                    continue
                e[0] = e[0] + derive_left(d, B[a], i, l).scale(c * form(d, Bd[b], z))
                e[1] = e[1] + derive_right(d, B[a], i, l).scale(
                    c * form(d, Bd[b], z) * _sgn(p1 * pl + pl))
                e[2] = e[2] + derive_right(d, Bd[b], i, l).scale(c * form(d, B[a], z))
                e[3] = e[3] + derive_left(d, Bd[b], i, l).scale(
                    c * form(d, B[a], z) * _sgn(pl * p1 + pl))
        for a in range(blk2.rank):
            for b in range(blk2.rank):
                c = c2[a][b]
                if c.is_zero():
                    continue
                s4 = _sgn(pl * p2)
                e[0] = e[0] + B2[a].scale(c * form(d, B2d[b], rz_up) * s4)
                e[1] = e[1] + B2[a].scale(c * form(d, B2d[b], rz_lo))
                e[2] = e[2] + B2d[b].scale(c * form(d, B2[a], rz_lo) * s4)
                e[3] = e[3] + B2d[b].scale(c * form(d, B2[a], rz_up))
        for k in range(4):
            if not normal_form(d, e[k]).is_zero():
                res[k] = False
    return res


def _sub_exdegree(nu, letter):
    c = dict(nu)
    if c.get(letter, 0) == 0:
        return None
    c[letter] -= 1
    return tuple(sorted((a, m) for a, m in c.items() if m))


# Omega and the Casimir on modules ------------------------------------------------

class OmegaOperator:
    """Omega = sum_nu sign(nu) sum_b S(b^-) b^{*+}, acting on a Verma slice."""

    def __init__(self, verma, height_mode="parts"):
        self.vm = verma
        self.datum = verma.datum
        self.height_mode = height_mode
        self._cache = {}

    def _apply_a_word(self, word, beta, vec):
        """a_{w1} ... a_{wn} acting on vec in M_{lam-beta}: rightmost letter first."""
        cur, b = vec, beta
        for g in reversed(word):
            tgt = sub_root(b, *g)
            if tgt is None:
                return None, None
            cur = matvec(self.vm.raising(g, b), cur)
            b = tgt
        return cur, b

    def _apply_S_bword(self, word, beta, vec):
        """S(b_w) = (-1)^{C(odd,2)} (-1)^n (b_wn K_wn) ... (b_w1 K_w1)."""
        d = self.datum
        odd = sum(1 for g in word if d.letter_parity(g))
        s = _sgn(odd * (odd - 1) // 2 + len(word))
        cur, b = vec, beta
        for g in word:
            k = self.vm.k_scalar(g, b)
            tgt = add_root(b, *g)
            cur = [x * k for x in matvec(self.vm.lowering(g, b), cur)]
            b = tgt
        return [x * s for x in cur], b

    def matrix(self, beta):
        """Omega on M(lam)_{lam-beta} in the pivot-word basis."""
        if beta in self._cache:
            return self._cache[beta]
        n = self.vm.dim(beta)
        cols = []
        nus = [nu for nu in exdegrees_up_to(self.datum, sum(beta))]
        for k in range(n):
            v = [QScalar.zero()] * n
            v[k] = QScalar.one()
            acc = [QScalar.zero()] * n
            for nu in nus:
                blk = gram_block(self.datum, nu)
                if blk.rank == 0:
                    continue
                if any(x < 0 for x in _minus(beta, blk)):
                    continue
                sg = theta_sign(self.datum, nu, self.height_mode)
                X = blk.dual_coeffs
                pw = blk.pivot_words
                for p in range(blk.rank):
                    up = None
                    for r in range(blk.rank):
                        if X[r][p].is_zero():
                            continue
                        w, b2 = self._apply_a_word(pw[r], beta, v)
                        if w is None:
                            continue
                        w = [x * X[r][p] for x in w]
                        up = w if up is None else [x + y for x, y in zip(up, w)]
                    if up is None:
                        continue
                    top = _minus(beta, blk)
                    down, _ = self._apply_S_bword(pw[p], tuple(top), up)
                    acc = [x + y * sg for x, y in zip(acc, down)]
            cols.append(acc)
        M = [list(r) for r in zip(*cols)] if cols else []
        self._cache[beta] = M
        return M


def _minus(beta, blk):
    from .cartan import exdegree_weight
    w = exdegree_weight(blk.datum, blk.degree)
    return [x - y for x, y in zip(beta, w)]


def f_difference(datum, lam, beta):
    """f(lam - beta) - f(lam) = -2(lam, beta) + (beta, beta) - 2(beta, rho)."""
    rho_pair = sum(beta[i] * datum.form_roots(i, i) for i in datum.indices) // 1
    return -2 * datum.form_weight_root(lam, beta) + datum.form(beta, beta) - rho_pair


def f_identity_holds(datum, mu_coroot, i, l):
    """f(mu - l alpha_i) - f(mu) + 2(l alpha_i, mu) == (l^2 - l)(alpha_i, alpha_i)."""
    mu = datum.weight(mu_coroot)
    beta = datum.unit(i, l)
    lhs = f_difference(datum, mu, beta) + 2 * datum.form_weight_root(mu, beta)
    return lhs == (l * l - l) * datum.form_roots(i, i)


def imaginary_exponent(datum, nu):
    return sum(m * l * (l - 1) * datum.form_roots(i, i) for (i, l), m in nu)


def casimir_eigen_check(verma, omega=None):
    """On M(lam): Omega on the nu-part of M_{lam-beta} is q^{f(lam)-f(mu)+sum l(l-1)(a,a)}."""
    omega = omega or OmegaOperator(verma)
    d = verma.datum
    from .cartan import exdegrees_of_weight
    report = {}
    for beta in verma.betas:
        M = omega.matrix(beta)
        n = verma.dim(beta)
        expected = [[QScalar.zero()] * n for _ in range(n)]
        k = 0
        exps = []
        for nu in exdegrees_of_weight(d, beta, verma.depth):
            r = gram_block(d, nu).rank
            e = -f_difference(d, verma.lam, beta) + imaginary_exponent(d, nu)
            for _ in range(r):
                expected[k][k] = QScalar.q_pow(e)
                k += 1
            if r:
                exps.append((nu, imaginary_exponent(d, nu)))
        report[beta] = (M == expected, exps)
    return report


class QuotientOmega:
    """Omega on V(lam) = M(lam)/J(lam), as Q Omega L per weight space."""

    def __init__(self, qs, omega=None):
        self.qs = qs
        self.omega = omega or OmegaOperator(qs.verma)
        self._cache = {}

    def matrix(self, beta):
        if beta not in self._cache:
            qs = self.qs
            self._cache[beta] = matmul(matmul(qs.Q[beta], self.omega.matrix(beta)), qs.L[beta])
        return self._cache[beta]


def _slice_parts(sl):
    vm = getattr(sl, "verma", sl)
    return vm, vm.betas, vm.letters


def omega_commutation_defects(sl, omega=None):
    """K^{-l} a_il Omega - K^l Omega a_il and Omega b_il - b_il K^l Omega K^l per space.

    sl is a Verma slice or a quotient slice; omega must match it."""
    vm, betas, letters = _slice_parts(sl)
    if omega is None:
        omega = OmegaOperator(vm) if sl is vm else QuotientOmega(sl)
    bad = []
    for beta in betas:
        for g in letters:
            tgt = sub_root(beta, *g)
            if tgt is not None:
                A = sl.raising(g, beta)
                l1 = matmul(A, omega.matrix(beta))
                l1 = [[x * vm.k_scalar(g, tgt, -1) for x in row] for row in l1]
                r1 = matmul(omega.matrix(tgt), A)
                r1 = [[x * vm.k_scalar(g, tgt, 1) for x in row] for row in r1]
                if l1 != r1:
                    bad.append(("a", beta, g))
            low = add_root(beta, *g)
            if sum(low) <= vm.depth:
                Bm = sl.lowering(g, beta)
                l2 = matmul(omega.matrix(low), Bm)
                kk = vm.k_scalar(g, beta) ** 2
                r2 = [[x * kk for x in row] for row in matmul(Bm, omega.matrix(beta))]
                if l2 != r2:
                    bad.append(("b", beta, g))
    return bad


def casimir_matrix(sl, omega, beta):
    """c = q^{f(mu) - f(lam)} Omega on the weight space mu = lam - beta."""
    vm = getattr(sl, "verma", sl)
    e = QScalar.q_pow(f_difference(vm.datum, vm.lam, beta))
    return [[x * e for x in row] for row in omega.matrix(beta)]


def casimir_lowering_defects(sl, omega=None):
    """c(b_il m) = q^{l(l-1)(a_i,a_i)} b_il c(m) on every computed weight space."""
    vm, betas, letters = _slice_parts(sl)
    if omega is None:
        omega = OmegaOperator(vm) if sl is vm else QuotientOmega(sl)
    d = vm.datum
    bad = []
    for beta in betas:
        for g in letters:
            low = add_root(beta, *g)
            if sum(low) > vm.depth:
                continue
            i, l = g
            Bm = sl.lowering(g, beta)
            lhs = matmul(casimir_matrix(sl, omega, low), Bm)
            f = QScalar.q_pow((l * l - l) * d.form_roots(i, i))
            rhs = [[x * f for x in row] for row in matmul(Bm, casimir_matrix(sl, omega, beta))]
            if lhs != rhs:
                bad.append((beta, g))
    return bad


def casimir_exponents(sl, omega=None):
    """Per weight space, the exponents e with c acting as q^e, or None if c is not diagonal there."""
    vm, betas, _ = _slice_parts(sl)
    if omega is None:
        omega = OmegaOperator(vm) if sl is vm else QuotientOmega(sl)
    out = {}
    for beta in betas:
        C = casimir_matrix(sl, omega, beta)
        n = len(C)
        if n == 0:
            out[beta] = []
            continue
        diag = all(C[r][c].is_zero() for r in range(n) for c in range(n) if r != c)
        if not diag or not all(C[r][r] == QScalar.q_pow(C[r][r].val) for r in range(n)):
            out[beta] = None
            continue
        out[beta] = sorted({C[r][r].val for r in range(n)})
    return out


def singular_casimir_check(verma, omega=None):
    """Each singular vector v of M(lam) satisfies Omega v = v and the f-identity."""
    omega = omega or OmegaOperator(verma)
    d = verma.datum
    out = []
    from .cartan import exdegrees_of_weight
    for beta in verma.betas:
        if not any(beta):
            continue
        for v in verma.singular_vectors(beta):
            ok_omega = matvec(omega.matrix(beta), v) == v
            # exdegrees carrying the vector
            k = 0
            nus = []
            for nu in exdegrees_of_weight(d, beta, verma.depth):
                r = gram_block(d, nu).rank
                if any(not x.is_zero() for x in v[k:k + r]):
                    nus.append(nu)
                k += r
            ok_f = all(-f_difference(d, verma.lam, beta) + imaginary_exponent(d, nu) == 0
                       for nu in nus)
            out.append((beta, ok_omega, ok_f))
    return out


def perturbed(theta, nu, p, r, delta=1):
    blocks = {k: [row[:] for row in C] for k, C in theta.blocks.items()}
    blocks[nu][p][r] = blocks[nu][p][r] + delta
    return ThetaExpansion(theta.datum, theta.height_bound, blocks, theta.height_mode)


def perturbation_detected(theta, nu, p, r, ua=None, delta=1):
    """True if changing one block entry breaks the intertwiner for some generator."""
    ua = ua or UAlgebra(theta.datum)
    bad = perturbed(theta, nu, p, r, delta)
    return any(not verify_intertwiner(bad, u, ua)
               for _, u in generators(theta.datum, ua, theta.height_bound))
