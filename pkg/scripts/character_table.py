"""Compare formula and module characters for every sample weight of the catalog."""

import argparse
import time

from qborcherds import catalog
from qborcherds.characters import formula_character, module_character


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--data", nargs="*", default=catalog.names())
    args = ap.parse_args()
    cfg = catalog.ExperimentConfig(data=args.data, depth=args.depth)
    for name, d in cfg.items():
        for lam in catalog.WEIGHTS[name]:
            w = d.weight(lam)
            t0 = time.perf_counter()
            fc = formula_character(d, w, cfg.depth)
            mc = module_character(d, w, cfg.depth)
            dt = time.perf_counter() - t0
            status = "match" if fc == mc else "MISMATCH"
            print(f"{name} lambda={lam} depth={cfg.depth}: {status} ({dt:.2f}s)")
            for beta, v in fc.table(d):
                print(f"  {beta} : {v}")


if __name__ == "__main__":
    main()
