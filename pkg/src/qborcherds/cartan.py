"""Super Borcherds-Cartan data, weights, reflections and bounded Weyl orbits."""

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from pathlib import Path


class DatumError(ValueError):
    """Malformed or invalid datum; ``path`` names the offending field."""

    def __init__(self, msg, path=""):
        super().__init__(f"{path}: {msg}" if path else msg)
        self.path = path


@dataclass(frozen=True)
class CartanDatum:
    names: tuple
    parity: tuple
    A: tuple
    D: tuple
    bozec_bound: tuple = None  # per index, None means "use depth"
    anchor_weight: tuple = None

    @classmethod
    def make(cls, A, D=None, parity=None, names=None, bozec_bound=None,
             anchor_weight=None):
        n = len(A)
        A = tuple(tuple(int(x) for x in row) for row in A)
        D = tuple(int(d) for d in (D or [1] * n))
        parity = tuple(int(p) for p in (parity or [0] * n))
        names = tuple(str(s) for s in (names or [str(k + 1) for k in range(n)]))
        if bozec_bound is not None:
            bozec_bound = tuple(None if b is None else int(b) for b in bozec_bound)
        if anchor_weight is not None:
            anchor_weight = tuple(int(x) for x in anchor_weight)
        return cls(names, parity, A, D, bozec_bound, anchor_weight)

    # basic data
    @property
    def n(self):
        return len(self.A)

    @property
    def indices(self):
        return range(self.n)

    def is_real(self, i):
        return self.A[i][i] == 2

    def is_imaginary(self, i):
        return self.A[i][i] <= 0

    def is_isotropic(self, i):
        return self.A[i][i] == 0

    def classification(self, i):
        if self.is_real(i):
            return "real"
        return "isotropic" if self.is_isotropic(i) else "imaginary"

    @cached_property
    def real_indices(self):
        return tuple(i for i in self.indices if self.is_real(i))

    @cached_property
    def bar_consistent(self):
        return all(self.D[i] % 2 == self.parity[i] % 2 for i in self.indices)

    # forms
    def form_roots(self, i, j):
        """(alpha_i, alpha_j) = d_i a_ij."""
        return self.D[i] * self.A[i][j]

    @cached_property
    def gram_roots(self):
        return tuple(tuple(self.form_roots(i, j) for j in self.indices)
                     for i in self.indices)

    def form(self, beta, gamma):
        """Symmetric form on the root lattice, arguments as coefficient vectors."""
        G = self.gram_roots
        return sum(beta[i] * G[i][j] * gamma[j]
                   for i in self.indices if beta[i]
                   for j in self.indices if gamma[j])

    def letter_parity(self, letter):
        i, l = letter
        return (l * self.parity[i]) & 1

    def unit(self, i, l=1):
        v = [0] * self.n
        v[i] = l
        return tuple(v)

    def max_level(self, i, depth):
        if self.is_real(i):
            return 1
        if self.bozec_bound and self.bozec_bound[i] is not None:
            return min(self.bozec_bound[i], depth)
        return depth

    def letters(self, depth):
        """Admissible letters (i, l) with l at most the level bound."""
        return [(i, l) for i in self.indices
                for l in range(1, self.max_level(i, depth) + 1)]

    # weights
    def rho(self):
        return Weight(tuple(self.A[i][i] // 2 for i in self.indices),
                      (0,) * self.n)

    def zero_weight(self):
        return Weight((0,) * self.n, (0,) * self.n)

    def weight(self, coroot):
        coroot = tuple(int(x) for x in coroot)
        if len(coroot) != self.n:
            raise DatumError(f"expected {self.n} coroot values, got {len(coroot)}",
                             "weight")
        return Weight(coroot, (0,) * self.n)

    def coroot_values(self, lam):
        """<h_j, lam> for all j."""
        return tuple(lam.anchor[j] + sum(lam.offset[i] * self.A[j][i]
                                         for i in self.indices)
                     for j in self.indices)

    def form_weight_root(self, lam, beta):
        """(lam, beta) = sum_i beta_i d_i <h_i, lam>."""
        h = self.coroot_values(lam)
        return sum(beta[i] * self.D[i] * h[i] for i in self.indices)

    def is_dominant(self, lam):
        """P+ membership."""
        h = self.coroot_values(lam)
        for i in self.indices:
            if h[i] < 0:
                return False
            if self.is_real(i) and self.parity[i] and h[i] % 2:
                return False
        return True

    def reflect(self, i, lam):
        if not self.is_real(i):
            raise ValueError(f"index {self.names[i]} is not real")
        h = self.coroot_values(lam)[i]
        off = list(lam.offset)
        off[i] -= h
        return Weight(lam.anchor, tuple(off))

    def reflect_root(self, i, beta):
        if not self.is_real(i):
            raise ValueError(f"index {self.names[i]} is not real")
        h = sum(self.A[i][j] * beta[j] for j in self.indices)
        out = list(beta)
        out[i] -= h
        return tuple(out)

    def weyl_orbit_bfs(self, lam, depth):
        """Orbit points w(lam) with lam - w(lam) in Q+ of height <= depth.

        Returns a list of (weight, sign, length), breadth first, deduplicated
        by weight; the sign is (-1)^length of the first word reaching it.
        """
        seen = {lam: 0}
        out = [(lam, 1, 0)]
        layer = [lam]
        length = 0
        while layer:
            length += 1
            nxt = []
            for mu in layer:
                for i in self.real_indices:
                    nu = self.reflect(i, mu)
                    if nu in seen:
                        continue
                    diff = tuple(a - b for a, b in zip(lam.offset, nu.offset))
                    if min(diff) < 0 or sum(diff) > depth:
                        continue
                    seen[nu] = length
                    out.append((nu, -1 if length & 1 else 1, length))
                    nxt.append(nu)
            layer = nxt
        return out

    # report
    def validate(self):
        return validate(self)

    def __str__(self):
        return f"CartanDatum(names={list(self.names)}, A={[list(r) for r in self.A]}, " \
               f"D={list(self.D)}, parity={list(self.parity)})"


@dataclass(frozen=True)
class Weight:
    """anchor (coroot values) plus a root-lattice offset."""
    anchor: tuple
    offset: tuple

    def shift(self, beta, sign=-1):
        return Weight(self.anchor, tuple(o + sign * b for o, b in zip(self.offset, beta)))

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.anchor, other.anchor)),
                      tuple(a + b for a, b in zip(self.offset, other.offset)))


@dataclass
class ValidationReport:
    ok: bool
    problems: list = field(default_factory=list)
    classification: list = field(default_factory=list)
    bar_consistent: bool = True

    def __str__(self):
        lines = ["valid" if self.ok else "invalid"]
        lines += [f"  {p}" for p in self.problems]
        lines.append("classification: " + ", ".join(self.classification))
        lines.append("bar-consistent: " + ("yes" if self.bar_consistent else "no"))
        return "\n".join(lines)


def validate(datum):
    probs = []
    n = datum.n
    if any(len(row) != n for row in datum.A):
        raise DatumError("cartan matrix is not square", "cartan")
    if len(datum.D) != n or len(datum.parity) != n:
        raise DatumError("index count does not match matrix size", "indices")
    for i in range(n):
        a = datum.A[i][i]
        if a != 2 and (a > 0 or a % 2):
            probs.append(f"(i) a_{datum.names[i]}{datum.names[i]}={a} not in {{2,0,-2,...}}")
        if datum.D[i] <= 0:
            probs.append(f"(iv) d_{datum.names[i]}={datum.D[i]} not positive")
        if datum.parity[i] not in (0, 1):
            probs.append(f"parity of {datum.names[i]} must be 0 or 1")
    for i in range(n):
        for j in range(n):
            if i != j and datum.A[i][j] > 0:
                probs.append(f"(ii) a_{datum.names[i]}{datum.names[j]}={datum.A[i][j]} > 0")
            if i < j and datum.D[i] * datum.A[i][j] != datum.D[j] * datum.A[j][i]:
                probs.append(f"(iv) DA not symmetric at ({datum.names[i]},{datum.names[j]})")
            if datum.parity[i] == 1 and datum.A[i][j] % 2:
                probs.append(f"(iii) a_{datum.names[i]}{datum.names[j]}={datum.A[i][j]} "
                             f"odd at odd index {datum.names[i]}")
    return ValidationReport(not probs, probs,
                            [datum.classification(i) for i in range(n)],
                            datum.bar_consistent)


# ExDegree helpers: an ExDegree is a sorted tuple of (letter, multiplicity)

def exdegree(word):
    return tuple(sorted(Counter(word).items()))


def exdegree_parts(nu):
    out = []
    for letter, m in nu:
        out += [letter] * m
    return out


def exdegree_add(nu, letter, k=1):
    c = dict(nu)
    c[letter] = c.get(letter, 0) + k
    return tuple(sorted((a, m) for a, m in c.items() if m))


def exdegree_weight(datum, nu):
    v = [0] * datum.n
    for (i, l), m in nu:
        v[i] += l * m
    return tuple(v)


def height(beta):
    return sum(beta)


def exdegree_height(nu):
    return sum(l * m for (_, l), m in nu)


def exdegree_nparts(nu):
    return sum(m for _, m in nu)


def e_of(datum, nu):
    """Number of unordered pairs of odd parts."""
    odd = sum(m for letter, m in nu if datum.letter_parity(letter))
    return odd * (odd - 1) // 2


def c_of(datum, nu):
    parts = exdegree_parts(nu)
    return sum(datum.form(datum.unit(*p), datum.unit(*r))
               for p, r in combinations(parts, 2))


@lru_cache(maxsize=None)
def exdegrees_of_weight(datum, beta, depth=None):
    """All ExDegrees with root-lattice weight beta, level bound from depth."""
    if depth is None:
        depth = sum(beta)
    letters = sorted(datum.letters(depth), reverse=True)
    out = []

    def rec(k, rem, acc):
        if not any(rem):
            out.append(tuple(sorted(acc)))
            return
        if k == len(letters):
            return
        i, l = letters[k]
        mmax = rem[i] // l
        for m in range(mmax, -1, -1):
            r = list(rem)
            r[i] -= m * l
            rec(k + 1, tuple(r), acc + ([((i, l), m)] if m else []))

    rec(0, tuple(beta), [])
    return tuple(sorted(out))


def roots_of_height(datum, h):
    """All beta in Q+ of height h."""
    out = []

    def rec(k, rem, acc):
        if k == datum.n - 1:
            out.append(tuple(acc + [rem]))
            return
        for x in range(rem, -1, -1):
            rec(k + 1, rem - x, acc + [x])

    if datum.n == 0:
        return [()] if h == 0 else []
    rec(0, h, [])
    return sorted(out, reverse=True)


def roots_up_to(datum, depth):
    out = []
    for h in range(depth + 1):
        out += roots_of_height(datum, h)
    return out


def exdegrees_up_to(datum, depth):
    out = []
    for beta in roots_up_to(datum, depth):
        out += exdegrees_of_weight(datum, beta, depth)
    return out


# datum files

def _load_raw(path):
    text = Path(path).read_text()
    if str(path).endswith((".yaml", ".yml")):
        import yaml
        return yaml.safe_load(text)
    return json.loads(text)


def datum_from_dict(raw):
    if not isinstance(raw, dict):
        raise DatumError("datum document must be a mapping")
    if "indices" not in raw:
        raise DatumError("missing field", "indices")
    if "cartan" not in raw:
        raise DatumError("missing field", "cartan")
    idx = raw["indices"]
    if not isinstance(idx, list) or not idx:
        raise DatumError("must be a non-empty list", "indices")
    names, par, D, bb = [], [], [], []
    for k, rec in enumerate(idx):
        p = f"indices[{k}]"
        if not isinstance(rec, dict):
            raise DatumError("must be a record", p)
        for key in ("name", "parity", "d"):
            if key not in rec:
                raise DatumError("missing field", f"{p}.{key}")
        if rec["parity"] not in (0, 1):
            raise DatumError("must be 0 or 1", f"{p}.parity")
        if not isinstance(rec["d"], int) or rec["d"] <= 0:
            raise DatumError("must be a positive integer", f"{p}.d")
        names.append(str(rec["name"]))
        par.append(rec["parity"])
        D.append(rec["d"])
        bb.append(rec.get("bozec_bound"))
    A = raw["cartan"]
    if not isinstance(A, list) or len(A) != len(idx):
        raise DatumError(f"must have {len(idx)} rows", "cartan")
    for r, row in enumerate(A):
        if not isinstance(row, list) or len(row) != len(idx):
            raise DatumError(f"must have {len(idx)} entries", f"cartan[{r}]")
        for c, x in enumerate(row):
            if not isinstance(x, int):
                raise DatumError("must be an integer", f"cartan[{r}][{c}]")
    anchor = raw.get("anchor_weight")
    if anchor is not None and (not isinstance(anchor, list) or len(anchor) != len(idx)):
        raise DatumError(f"must be a list of {len(idx)} integers", "anchor_weight")
    return CartanDatum.make(A, D, par, names,
                            bb if any(b is not None for b in bb) else None, anchor)


def load_datum(path):
    try:
        raw = _load_raw(path)
    except (OSError, ValueError) as exc:
        raise DatumError(str(exc)) from exc
    return datum_from_dict(raw)
