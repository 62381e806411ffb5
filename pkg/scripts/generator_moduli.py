#!/usr/bin/env python3
"""Moduli of the generators X_j and their inverses, with the 2^(j+2) bound.

    python3 scripts/generator_moduli.py --max-index 12
"""

import argparse
import time
from dataclasses import dataclass

from collatz_f.thompson import generator, generator_inverse


@dataclass
class Config:
    max_index: int = 10


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-index", type=int, default=Config.max_index)
    cfg = Config(p.parse_args(argv).max_index)

    ok = True
    print(" j  modulus  inverse  bound  divides")
    for j in range(cfg.max_index + 1):
        t0 = time.perf_counter()
        K, Ki = generator(j).modulus, generator_inverse(j).modulus
        bound = 2 ** (j + 2)
        good = bound % K == 0 and bound % Ki == 0
        ok &= good
        print(f"{j:>2}  {K:>7}  {Ki:>7}  {bound:>5}  {'yes' if good else 'NO'}"
              f"  ({time.perf_counter() - t0:.3f}s)")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
