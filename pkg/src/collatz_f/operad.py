"""Girard's conjunction, its k-ary generalisations, and planar-tree terms.

``star(a, b)`` interleaves ``a`` on the even numbers with ``b`` on the odd
numbers.  ``mu_k(fs)`` does the same for the exact covering system
``{k*ℕ + j}``; ``star`` and ``mu3`` are written out separately from their own
case tables so the general formula can be checked against them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .catalogue import ALPHA
from .congruential import AffinePiece, CongruentialMap, compose, equal, normalize

__all__ = [
    "star",
    "mu3",
    "mu_k",
    "PlanarTree",
    "eval_tree",
    "planar_trees",
    "check_naturality",
    "naturality_sides",
    "rho_component_sides",
    "lambda_component_sides",
    "freeness_probe",
]


def star(a: CongruentialMap, b: CongruentialMap) -> CongruentialMap:
    """``n ↦ 2a(n/2)`` on evens, ``n ↦ 2b((n-1)/2) + 1`` on odds."""
    L = math.lcm(a.modulus, b.modulus)
    pieces = []
    for r in range(2 * L):
        if r % 2 == 0:
            p = a.pieces[(r // 2) % a.modulus]
            pieces.append(AffinePiece.reduced(p.a, 2 * p.b, p.c))
        else:
            p = b.pieces[((r - 1) // 2) % b.modulus]
            pieces.append(AffinePiece.reduced(p.a, 2 * p.b - p.a + p.c, p.c))
    return normalize(CongruentialMap(2 * L, tuple(pieces)))


def mu3(f: CongruentialMap, g: CongruentialMap, h: CongruentialMap) -> CongruentialMap:
    """``3f(n/3)``, ``3g((n-1)/3) + 1``, ``3h((n-2)/3) + 2`` on the classes mod 3."""
    L = math.lcm(f.modulus, g.modulus, h.modulus)
    pieces = []
    for r in range(3 * L):
        i = r % 3
        if i == 0:
            p = f.pieces[(r // 3) % f.modulus]
            pieces.append(AffinePiece.reduced(p.a, 3 * p.b, p.c))
        elif i == 1:
            p = g.pieces[((r - 1) // 3) % g.modulus]
            pieces.append(AffinePiece.reduced(p.a, 3 * p.b - p.a + p.c, p.c))
        else:
            p = h.pieces[((r - 2) // 3) % h.modulus]
            pieces.append(AffinePiece.reduced(p.a, 3 * p.b - 2 * p.a + 2 * p.c, p.c))
    return normalize(CongruentialMap(3 * L, tuple(pieces)))


def mu_k(fs: Sequence[CongruentialMap]) -> CongruentialMap:
    """``n ↦ k*f_i((n - i)/k) + i`` where ``i = n mod k``."""
    k = len(fs)
    if k == 0:
        raise ValueError("mu_k needs at least one map")
    L = math.lcm(*(f.modulus for f in fs))
    pieces = []
    for r in range(k * L):
        i = r % k
        f = fs[i]
        p = f.pieces[((r - i) // k) % f.modulus]
        # k * (a*(n-i)/k + b)/c + i
        pieces.append(AffinePiece.reduced(p.a, k * p.b - p.a * i + p.c * i, p.c))
    return normalize(CongruentialMap(k * L, tuple(pieces)))


# -- naturality -----------------------------------------------------------------


def naturality_sides(f, g, h, assoc=ALPHA):
    """Both sides of ``α ∘ (f⋆(g⋆h)) = ((f⋆g)⋆h) ∘ α``."""
    return (compose(assoc, star(f, star(g, h))),
            compose(star(star(f, g), h), assoc))


def check_naturality(f: CongruentialMap, g: CongruentialMap, h: CongruentialMap) -> bool:
    return equal(*naturality_sides(f, g, h))


def rho_component_sides(f, g, h, rho=None):
    """``ρ ∘ mu3(f,g,h)`` and ``(f⋆(g⋆h)) ∘ ρ``."""
    from .catalogue import RHO

    rho = RHO if rho is None else rho
    return compose(rho, mu3(f, g, h)), compose(star(f, star(g, h)), rho)


def lambda_component_sides(f, g, h, lam=None):
    """``λ ∘ mu3(f,g,h)`` and ``((f⋆g)⋆h) ∘ λ``."""
    from .catalogue import LAMBDA

    lam = LAMBDA if lam is None else lam
    return compose(lam, mu3(f, g, h)), compose(star(star(f, g), h), lam)


# -- planar trees -----------------------------------------------------------------


@dataclass(frozen=True)
class PlanarTree:
    """A rooted planar tree; a leaf has no children.

    A unary node may only appear as a root over a single leaf (the identity
    operation), so it can never occur as a child.
    """

    children: tuple["PlanarTree", ...] = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) == 1 and not self.children[0].is_leaf:
            raise ValueError("unary nodes are only allowed over a single leaf")
        for child in self.children:
            if child.arity == 1:
                raise ValueError("unary nodes cannot be nested inside a tree")

    @classmethod
    def leaf(cls) -> "PlanarTree":
        return cls(())

    @classmethod
    def node(cls, *children: "PlanarTree") -> "PlanarTree":
        return cls(tuple(children))

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def arity(self) -> int:
        return len(self.children)

    @property
    def leaves(self) -> int:
        if self.is_leaf:
            return 1
        return sum(c.leaves for c in self.children)

    def __str__(self):
        if self.is_leaf:
            return "_"
        op = "*" if self.arity == 2 else f"#{self.arity}"
        return "(" + " ".join([op] + [str(c) for c in self.children]) + ")"


def eval_tree(t: PlanarTree, args: Sequence[CongruentialMap]) -> CongruentialMap:
    if t.leaves != len(args):
        raise ValueError(f"tree has {t.leaves} leaves but {len(args)} maps were given")
    it = iter(args)

    def go(node: PlanarTree) -> CongruentialMap:
        if node.is_leaf:
            return next(it)
        return mu_k([go(c) for c in node.children])

    return go(t)


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


@lru_cache(maxsize=None)
def _trees(n: int, arities: tuple[int, ...]) -> tuple[PlanarTree, ...]:
    if n == 1:
        return (PlanarTree.leaf(),)
    out = []
    for k in arities:
        for sizes in _compositions(n, k):
            for kids in itertools.product(*(_trees(s, arities) for s in sizes)):
                out.append(PlanarTree(kids))
    return tuple(out)


def planar_trees(leaves: int, arities: Sequence[int] = (2, 3)) -> list[PlanarTree]:
    """All planar trees with the given leaf count and node arities."""
    if any(k < 2 for k in arities):
        raise ValueError("internal nodes need arity at least 2")
    return list(_trees(leaves, tuple(sorted(set(arities)))))


def freeness_probe(max_leaves: int = 5, arities: Sequence[int] = (2, 3),
                   probe: CongruentialMap = ALPHA):
    """Evaluate every tree with at most ``max_leaves`` leaves on ``(probe, ..., probe)``.

    Returns ``(trees, collisions)`` where ``collisions`` lists pairs of trees
    inducing the same map.  An empty list is a necessary condition for the
    generated sub-operad to be free; it proves nothing more.
    """
    trees = [t for n in range(1, max_leaves + 1) for t in planar_trees(n, arities)]
    seen: dict[CongruentialMap, PlanarTree] = {}
    collisions = []
    for t in trees:
        m = normalize(eval_tree(t, [probe] * t.leaves))
        # outputs are normal forms, so structural equality is extensional
        if m in seen:
            collisions.append((seen[m], t))
        else:
            seen[m] = t
    return trees, collisions
