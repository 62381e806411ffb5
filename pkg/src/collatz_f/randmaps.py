"""Random congruential maps and bijections for property tests and trials."""

from __future__ import annotations

import math
import random

from .congruential import AffinePiece, CongruentialMap, normalize


def random_map(rng: random.Random, max_modulus: int = 6, max_slope: int = 4,
               max_offset: int = 6) -> CongruentialMap:
    """A random map in Conway's form ``f(Km + j) = x_j m + y_j`` (not normalized)."""
    K = rng.randint(1, max_modulus)
    pairs = [(rng.randint(0, max_slope), rng.randint(0, max_offset)) for _ in range(K)]
    return CongruentialMap.from_m_form(K, pairs)


def random_covering(rng: random.Random, parts: int, max_split: int = 3) -> list[tuple[int, int]]:
    """An exact covering system of ℕ with ``parts`` progressions ``(step, offset)``.

    Built by repeatedly splitting a random progression ``s*ℕ + t`` into
    ``{k*s*ℕ + t + i*s : 0 <= i < k}``, so it always tiles ℕ exactly.
    """
    cover = [(1, 0)]
    while len(cover) < parts:
        k = rng.randint(2, min(max_split, parts - len(cover) + 1))
        s, t = cover.pop(rng.randrange(len(cover)))
        cover += [(k * s, t + i * s) for i in range(k)]
    return cover


def random_bijection(rng: random.Random, max_parts: int = 5, max_split: int = 3) -> CongruentialMap:
    """Send the progressions of one random covering onto those of another.

    ``s*m + t ↦ s'*m + t'`` on each matched pair of progressions.
    """
    parts = rng.randint(1, max_parts)
    dom = random_covering(rng, parts, max_split)
    cod = random_covering(rng, parts, max_split)
    rng.shuffle(cod)
    L = math.lcm(*(s for s, _ in dom))
    slots: list[AffinePiece | None] = [None] * L
    for (s, t), (s2, t2) in zip(dom, cod):
        p = AffinePiece.reduced(s2, s * t2 - s2 * t, s)
        for r in range(t, L, s):
            slots[r] = p
    return normalize(CongruentialMap(L, tuple(slots)))
