"""Theta block sizes, intertwiner and inverse checks, and Casimir exponents per datum."""

import argparse

from qborcherds import catalog
from qborcherds.modules import build_verma, irreducible_quotient
from qborcherds.rtheta import (casimir_exponents, compute_theta, generators,
                               verify_intertwiner, verify_inverse)
from qborcherds.ualgebra import UAlgebra


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--data", nargs="*", default=catalog.names())
    args = ap.parse_args()
    cfg = catalog.ExperimentConfig(data=args.data, depth=args.depth)
    for name, d in cfg.items():
        U = UAlgebra(d)
        th = compute_theta(d, cfg.depth)
        sizes = sorted(len(C) for C in th.blocks.values())
        bad = [lab for lab, u in generators(d, U, cfg.depth) if not verify_intertwiner(th, u, U)]
        inv = verify_inverse(th)
        print(f"{name}: {len(th.blocks)} blocks, max size {sizes[-1]}, "
              f"intertwiner {'ok' if not bad else bad}, inverse {'ok' if inv else 'fails'}, "
              f"bar-consistent {name in catalog.BAR_CONSISTENT}")
        lam = catalog.WEIGHTS[name][-1]
        qs = irreducible_quotient(build_verma(d, d.weight(lam), cfg.depth))
        for beta, e in sorted(casimir_exponents(qs).items(), key=lambda x: (sum(x[0]), x[0])):
            print(f"  V{lam} {beta} : {e}")


if __name__ == "__main__":
    main()
