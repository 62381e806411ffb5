"""Thompson's group F realised by congruential bijections.

Generators: ``X_0 = α`` and ``X_{j+1} = Id ⋆ X_j``.  Words are read as
products of maps, so ``x0 x1' x0`` evaluates to ``X_0 ∘ X_1⁻¹ ∘ X_0`` (the
rightmost letter acts first).  The word problem is decided by normalizing
the evaluated maps.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass

from .catalogue import ALPHA, IDENTITY
from .congruential import (
    CongruentialMap,
    compose,
    compose_all,
    equal,
    find_witness,
    identity,
    inverse,
)
from .operad import star

__all__ = [
    "GroupWord",
    "parse_word",
    "generator",
    "generator_inverse",
    "eval_word",
    "words_equal",
    "check_pentagon",
    "pentagon_sides",
    "relation_witness",
    "check_relations",
    "check_conjugation_recursion",
    "check_brown_conjugation",
    "brown_closure_word",
    "check_brown_closure",
    "random_word",
]


@dataclass(frozen=True)
class GroupWord:
    """A word in the generators ``x_j^{±1}``; ``letters`` holds ``(j, ±1)`` pairs."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(tuple(l) for l in self.letters))
        for j, e in self.letters:
            if j < 0 or e not in (1, -1):
                raise ValueError(f"bad letter ({j}, {e})")

    @classmethod
    def of(cls, *letters: tuple[int, int]) -> "GroupWord":
        return cls(tuple(letters))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((j, -e) for j, e in reversed(self.letters)))

    def shifted(self, by: int = 1) -> "GroupWord":
        """Image under ``f ↦ Id ⋆ f``, which sends ``x_j`` to ``x_{j+1}``."""
        return GroupWord(tuple((j + by, e) for j, e in self.letters))

    def free_reduce(self) -> "GroupWord":
        out: list[tuple[int, int]] = []
        for j, e in self.letters:
            if out and out[-1] == (j, -e):
                out.pop()
            else:
                out.append((j, e))
        return GroupWord(tuple(out))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"x{j}" + ("'" if e < 0 else "") for j, e in self.letters)


_LETTER = re.compile(r"x(\d+)('?)")


def parse_word(text: str) -> GroupWord:
    """Parse ``"x0 x1' x0"``; ``'`` marks an inverse, ``1`` or ``""`` is empty."""
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _LETTER.fullmatch(tok)
        if not m:
            raise ValueError(f"bad letter {tok!r} in word {text!r}")
        letters.append((int(m.group(1)), -1 if m.group(2) else 1))
    return GroupWord(tuple(letters))


class _GeneratorCache:
    def __init__(self):
        self._lock = threading.Lock()
        self._maps: list[CongruentialMap] = [ALPHA]
        self._inverses: dict[int, CongruentialMap] = {}

    def get(self, j: int) -> CongruentialMap:
        if j < len(self._maps):
            return self._maps[j]
        with self._lock:
            while len(self._maps) <= j:
                self._maps.append(star(IDENTITY, self._maps[-1]))
            return self._maps[j]

    def get_inverse(self, j: int) -> CongruentialMap:
        inv = self._inverses.get(j)
        if inv is None:
            g = self.get(j)
            with self._lock:
                inv = self._inverses.get(j)
                if inv is None:
                    inv = self._inverses[j] = inverse(g)
        return inv


_CACHE = _GeneratorCache()


def generator(j: int) -> CongruentialMap:
    if j < 0:
        raise ValueError("generator index must be non-negative")
    return _CACHE.get(j)


def generator_inverse(j: int) -> CongruentialMap:
    if j < 0:
        raise ValueError("generator index must be non-negative")
    return _CACHE.get_inverse(j)


def eval_word(w: GroupWord) -> CongruentialMap:
    result = identity()
    for j, e in w.free_reduce().letters:
        result = compose(result, generator(j) if e > 0 else generator_inverse(j))
    return result


def words_equal(u: GroupWord, v: GroupWord) -> bool:
    return equal(eval_word(u), eval_word(v))


# -- relations -------------------------------------------------------------------


def pentagon_sides(tau: CongruentialMap = ALPHA):
    """``τ∘τ`` and ``(τ⋆Id) ∘ τ ∘ (Id⋆τ)``."""
    return (compose(tau, tau),
            compose_all(star(tau, IDENTITY), tau, star(IDENTITY, tau)))


def check_pentagon(tau: CongruentialMap = ALPHA) -> bool:
    return equal(*pentagon_sides(tau))


def relation_witness(i: int, j: int, k: int | None = None) -> int | None:
    """Check ``X_j = X_i ∘ X_k ∘ X_i⁻¹`` (``k`` defaults to ``j + 1``).

    Returns ``None`` when the identity holds, else the smallest ``n`` at which
    the two sides differ.
    """
    k = j + 1 if k is None else k
    rhs = compose_all(generator(i), generator(k), generator_inverse(i))
    return find_witness(generator(j), rhs)


def check_relations(max_index: int = 6) -> list[tuple[int, int, int]]:
    """All violations ``(i, j, witness)`` for ``0 <= i < j <= max_index``."""
    bad = []
    for j in range(1, max_index + 1):
        for i in range(j):
            w = relation_witness(i, j)
            if w is not None:
                bad.append((i, j, w))
    return bad


def check_conjugation_recursion(f: CongruentialMap) -> bool:
    """``α ∘ (Id⋆(Id⋆f)) ∘ α⁻¹ = Id⋆f``."""
    lhs = compose_all(ALPHA, star(IDENTITY, star(IDENTITY, f)), inverse(ALPHA))
    return equal(lhs, star(IDENTITY, f))


# -- Brown's homomorphism ----------------------------------------------------------


def check_brown_conjugation(a: GroupWord, b: GroupWord, c: GroupWord) -> bool:
    """``μ(μ(a,b),c) = x0 ∘ μ(a,μ(b,c)) ∘ x0⁻¹`` with ``μ = ⋆`` on evaluated words."""
    fa, fb, fc = eval_word(a), eval_word(b), eval_word(c)
    lhs = star(star(fa, fb), fc)
    rhs = compose_all(generator(0), star(fa, star(fb, fc)), generator_inverse(0))
    return equal(lhs, rhs)


def _left_star_letter(j: int) -> GroupWord:
    # X_0 ⋆ Id = x0 x0 x1' x0'  (pentagon rearranged)
    # X_{j+1} ⋆ Id = x0 (Id ⋆ (X_j ⋆ Id)) x0'  (naturality with f = h = Id)
    w = GroupWord(((0, 1), (0, 1), (1, -1), (0, -1)))
    for _ in range(j):
        w = GroupWord(((0, 1),)) * w.shifted() * GroupWord(((0, -1),))
    return w


def brown_closure_word(a: GroupWord, b: GroupWord) -> GroupWord:
    """A word whose evaluation is ``eval(a) ⋆ eval(b)``.

    Uses ``a⋆b = (a⋆Id) ∘ (Id⋆b)``; ``Id⋆`` shifts indices and ``(x_j⋆Id)``
    has the explicit word built by ``_left_star_letter``.  This replaces a
    bounded search with an exact construction, so membership of ``a⋆b`` in
    the group is certified without any length limit.
    """
    left = GroupWord()
    for j, e in a.letters:
        piece = _left_star_letter(j)
        left = left * (piece if e > 0 else piece.inverse())
    return (left * b.shifted()).free_reduce()


def check_brown_closure(a: GroupWord, b: GroupWord) -> bool:
    return equal(eval_word(brown_closure_word(a, b)), star(eval_word(a), eval_word(b)))


def random_word(rng, max_length: int = 6, max_index: int = 2) -> GroupWord:
    n = rng.randint(0, max_length)
    return GroupWord(tuple((rng.randint(0, max_index), rng.choice((1, -1))) for _ in range(n)))

