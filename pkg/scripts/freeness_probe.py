#!/usr/bin/env python3
"""Evaluate every planar tree on (α, ..., α) and report collisions.

    python3 scripts/freeness_probe.py --max-leaves 6 --arities 2 3 4
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from collatz_f.catalogue import ALPHA
from collatz_f.operad import eval_tree, freeness_probe, planar_trees


@dataclass
class Config:
    max_leaves: int = 5
    arities: tuple = (2, 3)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-leaves", type=int, default=Config.max_leaves)
    p.add_argument("--arities", type=int, nargs="+", default=list(Config.arities))
    a = p.parse_args(argv)
    cfg = Config(a.max_leaves, tuple(a.arities))

    t0 = time.time()
    trees, collisions = freeness_probe(cfg.max_leaves, cfg.arities)
    per_size = Counter(t.leaves for t in trees)
    moduli = Counter()
    for n in range(1, cfg.max_leaves + 1):
        for t in planar_trees(n, cfg.arities):
            moduli[n] = max(moduli[n], eval_tree(t, [ALPHA] * n).modulus)
    print("leaves  trees  max modulus")
    for n in sorted(per_size):
        print(f"{n:>6}  {per_size[n]:>5}  {moduli[n]:>11}")
    print(f"{len(trees)} trees, {len(collisions)} collisions, {time.time() - t0:.2f}s")
    for s, t in collisions:
        print(f"  {s} == {t}")
    return 1 if collisions else 0


if __name__ == "__main__":
    raise SystemExit(main())
