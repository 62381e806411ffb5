#!/usr/bin/env python3
"""Long-running orbit of 8 under ρ, with its λ twin and resumable checkpoints.

    python3 scripts/occ_campaign.py --steps 10000000 --checkpoint occ8.ckpt

Interrupt at any time; rerunning with the same checkpoint resumes.
"""

import argparse
import logging
import time
from dataclasses import dataclass, fields

from collatz_f.orbits import OCCCounterexample, occ_campaign


@dataclass
class Config:
    seed: int = 8
    steps: int = 10 ** 7
    checkpoint: str = "occ8.ckpt"
    every: int = 100_000
    fresh: bool = False


def parse(argv=None) -> Config:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(Config):
        if f.type in (bool, "bool"):
            p.add_argument(f"--{f.name}", action="store_true")
        else:
            p.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    return Config(**vars(p.parse_args(argv)))


def main(argv=None):
    cfg = parse(argv)
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    t0 = time.time()
    try:
        res = occ_campaign(cfg.seed, cfg.steps, checkpoint_path=cfg.checkpoint,
                           checkpoint_every=cfg.every, resume=not cfg.fresh)
    except OCCCounterexample as e:
        print(f"!!! {e} !!!")
        return 1
    st = res.state
    print(f"seed {st.seed}: {res.record.describe()}")
    print(f"  value bits {st.value.bit_length()}, peak bits {st.peak_bits} at step {st.peak_pos}")
    print(f"  {st.min_count} local minima, {st.max_count} local maxima, digest {st.digest[:16]}")
    print(f"  {res.checkpoints_written} checkpoints, {time.time() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
