"""Correction sets E, O, F, the series S_lam and the character formula.

Series are dicts beta -> coefficient standing for sum c_beta e^{anchor - beta},
truncated at a height bound.
"""

from dataclasses import dataclass
from itertools import combinations, product

from .cartan import Weight, height, roots_up_to
from .scalar import euler_phi_coeffs


class OddIsotropicUndefined(RuntimeError):
    pass


@dataclass
class CharacterSeries:
    anchor: Weight
    coeffs: dict
    depth: int

    def coefficient(self, beta):
        return self.coeffs.get(tuple(beta), 0)

    def nonzero(self):
        return {b: c for b, c in self.coeffs.items() if c != 0}

    def table(self, datum):
        """Rows (beta, coefficient) over all beta of height <= depth."""
        return [(b, self.coefficient(b)) for b in sorted_roots(datum, self.depth)]

    def __eq__(self, other):
        return self.depth == other.depth and self.nonzero() == other.nonzero()


def sorted_roots(datum, depth):
    return sorted(roots_up_to(datum, depth), key=lambda b: (sum(b), b))


def series_mul(a, b, depth):
    out = {}
    for x, c in a.items():
        if not c:
            continue
        hx = sum(x)
        for y, d in b.items():
            if not d or hx + sum(y) > depth:
                continue
            z = tuple(p + r for p, r in zip(x, y))
            out[z] = out.get(z, 0) + c * d
    return {k: v for k, v in out.items() if v != 0}


def series_inverse(a, datum, depth):
    """Inverse of a series with constant term +-1."""
    zero = (0,) * datum.n
    c0 = a.get(zero, 0)
    if c0 not in (1, -1):
        raise ZeroDivisionError("constant term of the denominator is not a unit")
    inv = {zero: c0}
    for beta in sorted_roots(datum, depth):
        if not any(beta):
            continue
        s = 0
        for x, c in a.items():
            if not any(x) or not c:
                continue
            y = tuple(p - r for p, r in zip(beta, x))
            if min(y) < 0:
                continue
            s += c * inv.get(y, 0)
        if s:
            inv[beta] = -c0 * s
    return inv


def series_div(a, b, datum, depth):
    return series_mul(a, series_inverse(b, datum, depth), depth)


# correction sets ------------------------------------------------------------

@dataclass
class CorrectionTerm:
    support: dict           # index -> coefficient n_i
    total: tuple            # root vector
    sign: object = 1
    kind: str = "E"


def _orthogonal_subsets(datum, cands):
    """Subsets of candidate indices with (alpha_i, alpha_j) = 0 for distinct members."""
    out = [()]
    for r in range(1, len(cands) + 1):
        for T in combinations(cands, r):
            if all(datum.form_roots(i, j) == 0 for i, j in combinations(T, 2)):
                out.append(T)
    return out


def _enumerate(datum, lam, depth, parity, sign_fn):
    h = datum.coroot_values(lam)
    cands = [i for i in datum.indices
             if datum.is_imaginary(i) and datum.parity[i] == parity and h[i] == 0]
    terms = []
    for T in _orthogonal_subsets(datum, cands):
        if not T:
            terms.append(CorrectionTerm({}, (0,) * datum.n, 1, "E" if parity == 0 else "O"))
            continue
        for ns in product(range(1, depth + 1), repeat=len(T)):
            if sum(ns) > depth:
                continue
            tot = [0] * datum.n
            for i, k in zip(T, ns):
                tot[i] = k
            sign = 1
            for i, k in zip(T, ns):
                sign = sign * sign_fn(i, k)
            terms.append(CorrectionTerm(dict(zip(T, ns)), tuple(tot), sign,
                                        "E" if parity == 0 else "O"))
    return terms


def enumerate_E(datum, lam, depth):
    phi = euler_phi_coeffs(depth)

    def sgn(i, k):
        return phi[k] if datum.is_isotropic(i) else -1

    return [t for t in _enumerate(datum, lam, depth, 0, sgn) if t.sign != 0]


def enumerate_O(datum, lam, depth, odd_hook=None):
    def sgn(i, k):
        if not datum.is_isotropic(i):
            return -1
        if odd_hook is None:
            raise OddIsotropicUndefined(
                f"odd-isotropic coefficient undefined (index {datum.names[i]})")
        return odd_hook(datum, lam, i, k)

    return [t for t in _enumerate(datum, lam, depth, 1, sgn) if t.sign != 0]


def enumerate_F(datum, lam, depth, odd_hook=None):
    E = enumerate_E(datum, lam, depth)
    O = enumerate_O(datum, lam, depth, odd_hook)
    out = []
    for a in E:
        for b in O:
            if height(a.total) + height(b.total) > depth:
                continue
            if datum.form(a.total, b.total) != 0:
                continue
            tot = tuple(x + y for x, y in zip(a.total, b.total))
            out.append(CorrectionTerm({**a.support, **b.support}, tot,
                                      a.sign * b.sign, "F"))
    return out


def build_S(datum, lam, depth, odd_hook=None):
    coeffs = {}
    for t in enumerate_F(datum, lam, depth, odd_hook):
        coeffs[t.total] = coeffs.get(t.total, 0) + t.sign
    return CharacterSeries(datum.zero_weight(), {k: v for k, v in coeffs.items() if v != 0},
                           depth)


def numerator(datum, lam, depth, odd_hook=None):
    """sum_s eps(s) sum_w (-1)^l(w) e^{w(lam+rho-s) - (lam+rho)}, as a series in -Q+."""
    lr = lam + datum.rho()
    lr = Weight(tuple(datum.coroot_values(lr)), (0,) * datum.n)
    out = {}
    for t in enumerate_F(datum, lam, depth, odd_hook):
        mu = lr.shift(t.total)
        for nu, sign, _ in datum.weyl_orbit_bfs(mu, depth - height(t.total)):
            beta = tuple(-x for x in nu.offset)
            out[beta] = out.get(beta, 0) + sign * t.sign
    return {k: v for k, v in out.items() if v != 0}


def denominator(datum, depth, odd_hook=None):
    return numerator(datum, datum.zero_weight(), depth, odd_hook)


def formula_character(datum, lam, depth, odd_hook=None):
    if not datum.is_dominant(lam):
        raise ValueError("weight is not dominant integral")
    N = numerator(datum, lam, depth, odd_hook)
    D = denominator(datum, depth, odd_hook)
    return CharacterSeries(lam, series_div(N, D, datum, depth), depth)


def module_character(datum, lam, depth):
    from .modules import brute_character, build_verma, irreducible_quotient
    qs = irreducible_quotient(build_verma(datum, lam, depth))
    return CharacterSeries(lam, {b: c for b, c in brute_character(qs).items() if c}, depth)


def is_prefix(small, big):
    """Coefficients of the shallower series agree with the deeper one."""
    return all(big.coefficient(b) == c for b, c in small.coeffs.items()) and \
        all(small.coefficient(b) == c for b, c in big.coeffs.items() if sum(b) <= small.depth)
