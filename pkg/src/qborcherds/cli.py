"""Command-line driver: qborcherds <command> <datum file> [options]."""

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, TextIO

from .cartan import (DatumError, exdegrees_of_weight,
                     exdegrees_up_to, load_datum, roots_up_to, validate)
from .freesuper import render_word
from .pairing import commuting_element, gram_block, in_radical, serre_element
from .scalar import LaurentPoly

COMMANDS = ("validate", "dim", "gram", "serre-check", "theta", "character",
            "verma", "casimir")
NEEDS_WEIGHT = ("character", "verma", "casimir")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    datum_path: str
    command: str
    depth: int = 4
    weight: Optional[list] = None
    source: Optional[str] = None
    output: Optional[TextIO] = None

    def __post_init__(self):
        if self.output is None:
            self.output = sys.stdout
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.depth < 0:
            raise InputError("depth must be >= 0")
        if self.command in NEEDS_WEIGHT and self.weight is None:
            raise InputError(f"{self.command} needs --weight")


def fmt_root(beta):
    return "(" + ", ".join(str(x) for x in beta) + ")"


def sorted_betas(datum, depth):
    return sorted(roots_up_to(datum, depth), key=lambda b: (sum(b), b))


def fmt_exdegree(datum, nu):
    return " ".join(f"[{datum.names[i]},{l}]^{m}" if m > 1 else f"[{datum.names[i]},{l}]"
                    for (i, l), m in nu) or "1"


def print_table(out, rows):
    for beta, v in rows:
        print(f"{fmt_root(beta)} : {v}", file=out)


def print_matrix(out, rows, cols, M, indent="  "):
    for r, row in zip(rows, M):
        print(f"{indent}{r} | " + " ; ".join(str(x) for x in row), file=out)
    if cols:
        print(f"{indent}columns: " + " ; ".join(cols), file=out)


# commands -----------------------------------------------------------------------

def cmd_validate(d, cfg):
    rep = validate(d)
    print(rep, file=cfg.output)
    return 0 if rep.ok else 1


def u_plus_dim(d, beta, depth):
    return sum(gram_block(d, nu).rank for nu in exdegrees_of_weight(d, beta, depth))


def cmd_dim(d, cfg):
    print_table(cfg.output, [(b, u_plus_dim(d, b, cfg.depth))
                             for b in sorted_betas(d, cfg.depth)])
    return 0


def cmd_gram(d, cfg):
    out = cfg.output
    for nu in exdegrees_up_to(d, cfg.depth):
        if not nu:
            continue
        blk = gram_block(d, nu)
        print(f"nu = {fmt_exdegree(d, nu)}  dim {blk.dim}  rank {blk.rank}", file=out)
        print(f"  norm {blk.norm}", file=out)
        words = [render_word(w, d) for w in blk.basis_words]
        M = [[LaurentPoly(e) for e in row] for row in blk.poly]
        print_matrix(out, words, None, M)
    return 0


def serre_instances(d, depth):
    """(label, element) for every Serre and commuting element within the depth."""
    out = []
    for i in d.real_indices:
        for j in d.indices:
            for k in range(1, d.max_level(j, depth) + 1):
                if (j, k) == (i, 1) or (d.is_real(j) and k != 1):
                    continue
                h = 1 - k * d.A[i][j] + k
                if h > depth:
                    continue
                out.append((f"serre({d.names[i]}; {d.names[j]},{k})", serre_element(d, i, j, k)))
    letters = d.letters(depth)
    for a in letters:
        for b in letters:
            if a >= b or a[1] + b[1] > depth:
                continue
            if d.A[a[0]][b[0]] == 0 and not (d.is_real(a[0]) and a[0] == b[0]):
                out.append((f"commute([{d.names[a[0]]},{a[1]}], [{d.names[b[0]]},{b[1]}])",
                            commuting_element(d, a, b)))
    return out


def cmd_serre(d, cfg):
    bad = 0
    for label, x in serre_instances(d, cfg.depth):
        ok = in_radical(d, x)
        bad += not ok
        print(f"{label} in radical: {'yes' if ok else 'no'}", file=cfg.output)
    return 1 if bad else 0


def cmd_theta(d, cfg):
    from .rtheta import compute_theta
    th = compute_theta(d, cfg.depth)
    for nu, C in th.blocks.items():
        blk = gram_block(d, nu)
        print(f"Theta[{fmt_exdegree(d, nu)}]", file=cfg.output)
        rows = [render_word(w, d, "b") for w in blk.pivot_words]
        cols = [render_word(w, d, "a") for w in blk.pivot_words]
        print_matrix(cfg.output, rows, cols, C)
    return 0


def _weight(d, cfg):
    if len(cfg.weight) != d.n:
        raise InputError(f"--weight needs {d.n} coroot values")
    lam = d.weight(cfg.weight)
    return lam


def cmd_character(d, cfg):
    from .characters import formula_character, module_character
    lam = _weight(d, cfg)
    if not d.is_dominant(lam):
        raise InputError("weight is not dominant integral")
    src = cfg.source or "formula"
    out = cfg.output
    tabs = {}
    if src in ("formula", "both"):
        tabs["formula"] = formula_character(d, lam, cfg.depth).table(d)
    if src in ("module", "both"):
        tabs["module"] = module_character(d, lam, cfg.depth).table(d)
    if src != "both":
        print_table(out, tabs[src])
        return 0
    diff = 0
    for (b, f), (_, m) in zip(tabs["formula"], tabs["module"]):
        mark = "" if f == m else "   <- mismatch"
        diff += f != m
        print(f"{fmt_root(b)} : {f} | {m}{mark}", file=out)
    print("identical" if not diff else f"{diff} mismatches", file=out)
    return 1 if diff else 0


def cmd_verma(d, cfg):
    from .modules import build_verma, irreducible_quotient
    lam = _weight(d, cfg)
    vm = build_verma(d, lam, cfg.depth)
    betas = sorted_betas(d, cfg.depth)
    print("M(lambda)", file=cfg.output)
    print_table(cfg.output, [(b, vm.dim(b)) for b in betas])
    if d.is_dominant(lam):
        qs = irreducible_quotient(vm)
        print("V(lambda)", file=cfg.output)
        print_table(cfg.output, [(b, qs.dim(b)) for b in betas])
    return 0


def cmd_casimir(d, cfg):
    from .modules import build_verma, irreducible_quotient
    from .rtheta import (OmegaOperator, QuotientOmega, casimir_exponents,
                         casimir_lowering_defects, omega_commutation_defects)
    lam = _weight(d, cfg)
    if not d.is_dominant(lam):
        raise InputError("weight is not dominant integral")
    vm = build_verma(d, lam, cfg.depth)
    qs = irreducible_quotient(vm)
    om = QuotientOmega(qs, OmegaOperator(vm))
    exps = casimir_exponents(qs, om)
    for b in sorted_betas(d, cfg.depth):
        e = exps[b]
        txt = "not diagonal" if e is None else (" ".join(str(x) for x in e) or "-")
        print(f"{fmt_root(b)} : {txt}", file=cfg.output)
    bad = omega_commutation_defects(qs, om) + casimir_lowering_defects(qs, om)
    print("commutation identities: " + ("ok" if not bad else f"{len(bad)} failures"),
          file=cfg.output)
    return 1 if bad or any(e is None for e in exps.values()) else 0


HANDLERS = {"validate": cmd_validate, "dim": cmd_dim, "gram": cmd_gram,
            "serre-check": cmd_serre, "theta": cmd_theta, "character": cmd_character,
            "verma": cmd_verma, "casimir": cmd_casimir}


def run(cfg):
    try:
        d = load_datum(cfg.datum_path)
        return HANDLERS[cfg.command](d, cfg)
    except (DatumError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def parse_weight(values):
    if values is None:
        return None
    out = []
    for v in values:
        out += [int(x) for x in v.replace(",", " ").split()]
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="qborcherds",
                                description="Exact computations for quantum Borcherds-Bozec superalgebras.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("datum", help="datum file (JSON or YAML)")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--height", type=int, help="alias of --depth for theta")
    p.add_argument("--weight", nargs="+", help="coroot values, e.g. 2 or 1,0")
    p.add_argument("--source", choices=("formula", "module", "both"))
    return p


def main(argv=None):
    p = build_parser()
    try:
        a = p.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        depth = a.height if a.height is not None else a.depth
        cfg = RunConfig(a.datum, a.command, depth, parse_weight(a.weight), a.source)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
