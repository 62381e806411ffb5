"""Exact congruential maps of the natural numbers.

A congruential map with modulus ``K`` carries one affine piece per residue
class: for ``n ≡ j (mod K)`` it sends ``n`` to ``(a_j*n + b_j) / c_j``.  All
arithmetic is on Python integers, so there is no size limit anywhere.

Composition is right-to-left throughout: ``compose(f, g)(n) == f(g(n))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "AffinePiece",
    "CongruentialMap",
    "BijectionCertificate",
    "Refusal",
    "AgreementSet",
    "InvariantError",
    "NotABijection",
    "identity",
    "compose",
    "compose_all",
    "normalize",
    "equal",
    "find_witness",
    "is_bijection",
    "inverse",
    "solve_agreement",
]

# exact-cover check marks residues in a bytearray up to this size
_DENSE_COVER_LIMIT = 1 << 24


class InvariantError(ValueError):
    """A piece or map violates the integrality / non-negativity invariants."""


class NotABijection(ValueError):
    def __init__(self, refusal: "Refusal"):
        super().__init__(str(refusal))
        self.refusal = refusal


@dataclass(frozen=True)
class AffinePiece:
    """``n ↦ (a*n + b) / c`` with ``gcd(a, b, c) == 1`` and ``c > 0``."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.c <= 0:
            raise InvariantError(f"denominator must be positive, got {self.c}")
        if self.a < 0:
            raise InvariantError(f"slope numerator must be non-negative, got {self.a}")
        if math.gcd(self.a, self.b, self.c) != 1:
            raise InvariantError(f"piece ({self.a}, {self.b}, {self.c}) is not reduced")

    @classmethod
    def reduced(cls, a: int, b: int, c: int) -> "AffinePiece":
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(a, b, c)
        return cls(a // g, b // g, c // g)

    def __call__(self, n: int) -> int:
        return (self.a * n + self.b) // self.c

    def after(self, inner: "AffinePiece") -> "AffinePiece":
        """The affine form of ``self(inner(n))``."""
        return AffinePiece.reduced(
            self.a * inner.a, self.a * inner.b + self.b * inner.c, self.c * inner.c
        )

    @property
    def slope(self) -> Fraction:
        return Fraction(self.a, self.c)

    @property
    def offset(self) -> Fraction:
        return Fraction(self.b, self.c)

    def __str__(self):
        return f"({self.a}n{self.b:+d})/{self.c}"


IDENTITY_PIECE = AffinePiece(1, 0, 1)


@dataclass(frozen=True)
class CongruentialMap:
    """A total map ℕ → ℕ, affine on each residue class modulo ``modulus``.

    Structural equality (``==``) compares representations; use :func:`equal`
    for extensional equality.
    """

    modulus: int
    pieces: tuple[AffinePiece, ...] = field(repr=False)

    def __post_init__(self):
        if not isinstance(self.pieces, tuple):
            object.__setattr__(self, "pieces", tuple(self.pieces))
        K = self.modulus
        if K < 1:
            raise InvariantError(f"modulus must be positive, got {K}")
        if len(self.pieces) != K:
            raise InvariantError(f"expected {K} pieces, got {len(self.pieces)}")
        for j, p in enumerate(self.pieces):
            _check_piece(p, K, j)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_triples(cls, modulus: int, triples: Iterable[Sequence[int]]) -> "CongruentialMap":
        return cls(modulus, tuple(AffinePiece.reduced(*t) for t in triples))

    @classmethod
    def from_m_form(cls, modulus: int, pairs: Iterable[Sequence[int]]) -> "CongruentialMap":
        """Build from Conway's form ``f(K*m + j) = x_j*m + y_j``."""
        K = modulus
        return cls(K, tuple(
            AffinePiece.reduced(x, y * K - x * j, K) for j, (x, y) in enumerate(pairs)
        ))

    @classmethod
    def from_cases(cls, cases: Iterable[tuple[int, int, Sequence[int]]]) -> "CongruentialMap":
        """Build from ``(modulus, residue, (a, b, c))`` cases that partition ℕ.

        This mirrors the way case tables are usually written down, e.g.
        ``[(2, 0, (2, 0, 1)), (4, 1, (1, 1, 1)), (4, 3, (1, -1, 2))]``.
        """
        cases = [(m, r % m, AffinePiece.reduced(*t)) for m, r, t in cases]
        K = math.lcm(*(m for m, _, _ in cases))
        slots: list[AffinePiece | None] = [None] * K
        for m, r, p in cases:
            for j in range(r, K, m):
                if slots[j] is not None:
                    raise InvariantError(f"cases overlap on residue {j} mod {K}")
                slots[j] = p
        missing = [j for j, p in enumerate(slots) if p is None]
        if missing:
            raise InvariantError(f"cases miss residue {missing[0]} mod {K}")
        return normalize(cls(K, slots))

    # -- evaluation -----------------------------------------------------------

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"congruential maps act on ℕ, got {n}")
        p = self.pieces[n % self.modulus]
        return (p.a * n + p.b) // p.c

    def __matmul__(self, other: "CongruentialMap") -> "CongruentialMap":
        return compose(self, other)

    def lift(self, modulus: int) -> "CongruentialMap":
        """The same map written at a multiple of the current modulus."""
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        K = self.modulus
        return CongruentialMap(modulus, tuple(self.pieces[j % K] for j in range(modulus)))

    def m_form(self) -> list[tuple[int, int]]:
        """Conway's ``(x_j, y_j)`` with ``f(K*m + j) = x_j*m + y_j``."""
        K = self.modulus
        return [(p.a * K // p.c, (p.a * j + p.b) // p.c) for j, p in enumerate(self.pieces)]

    def triples(self) -> list[tuple[int, int, int]]:
        return [(p.a, p.b, p.c) for p in self.pieces]

    def __repr__(self):
        body = ", ".join(f"{j}:{p}" for j, p in enumerate(self.pieces[:8]))
        if self.modulus > 8:
            body += ", ..."
        return f"CongruentialMap(K={self.modulus}; {body})"


def _check_piece(p: AffinePiece, K: int, j: int) -> None:
    if (p.a * K) % p.c:
        raise InvariantError(f"residue {j}: {p.c} does not divide {p.a}*{K}")
    top = p.a * j + p.b
    if top % p.c:
        raise InvariantError(f"residue {j}: {p.c} does not divide {p.a}*{j}{p.b:+d}")
    if top < 0:
        raise InvariantError(f"residue {j}: value at n={j} is negative")


def identity() -> CongruentialMap:
    return CongruentialMap(1, (IDENTITY_PIECE,))


# -- algebra ------------------------------------------------------------------


def _min_period(seq: Sequence) -> int:
    """Smallest ``d`` dividing ``len(seq)`` with ``seq[i] == seq[i % d]``."""
    n = len(seq)
    pi = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = pi[k - 1]
        if seq[i] == seq[k]:
            k += 1
        pi[i] = k
    d = n - pi[-1] if n else 1
    return d if n % d == 0 else n


def normalize(f: CongruentialMap) -> CongruentialMap:
    """Canonical representative: the smallest modulus that still describes ``f``.

    Two maps agree on all of ℕ exactly when their normal forms are
    structurally identical.
    """
    d = _min_period(f.pieces)
    if d == f.modulus:
        return f
    return CongruentialMap(d, f.pieces[:d])


def compose(f: CongruentialMap, g: CongruentialMap) -> CongruentialMap:
    """``f ∘ g``, normalized."""
    Kf, Kg = f.modulus, g.modulus
    # refine each class of g until g's image lands in a single class of f
    refine = 1
    for p in g.pieces:
        step = p.a * Kg // p.c
        refine = math.lcm(refine, Kf // math.gcd(step, Kf))
    K = Kg * refine
    memo: dict[tuple[int, int], AffinePiece] = {}
    pieces = []
    for r in range(K):
        jg = r % Kg
        p = g.pieces[jg]
        jf = ((p.a * r + p.b) // p.c) % Kf
        q = memo.get((jf, jg))
        if q is None:
            q = memo[jf, jg] = f.pieces[jf].after(p)
        pieces.append(q)
    return normalize(CongruentialMap(K, tuple(pieces)))


def compose_all(*maps: CongruentialMap) -> CongruentialMap:
    """``maps[0] ∘ maps[1] ∘ ... ∘ maps[-1]``."""
    result = identity()
    for m in maps:
        result = compose(result, m)
    return result


def equal(f: CongruentialMap, g: CongruentialMap) -> bool:
    """Extensional equality on ℕ."""
    f, g = normalize(f), normalize(g)
    if f.modulus != g.modulus:
        return False
    return f.pieces == g.pieces


def find_witness(f: CongruentialMap, g: CongruentialMap) -> int | None:
    """Smallest ``n`` with ``f(n) != g(n)``, or ``None`` if the maps are equal."""
    f, g = normalize(f), normalize(g)
    L = math.lcm(f.modulus, g.modulus)
    best = None
    for r in range(L):
        p, q = f.pieces[r % f.modulus], g.pieces[r % g.modulus]
        if p == q:
            continue
        # two distinct affine forms agree on at most one point
        n = r if p(r) != q(r) else r + L
        if best is None or n < best:
            best = n
        if best < L:
            # every later class starts above best
            if r >= best:
                break
    return best


# -- bijections -----------------------------------------------------------------


@dataclass(frozen=True)
class BijectionCertificate:
    """Image progressions ``{steps[j]*m + offsets[j]}`` tiling ℕ exactly."""

    steps: tuple[int, ...]
    offsets: tuple[int, ...]
    modulus: int  # lcm of the steps

    @property
    def progressions(self) -> list[tuple[int, int]]:
        return list(zip(self.steps, self.offsets))

    def verify(self) -> bool:
        L = self.modulus
        hits = [0] * L
        for s, t in zip(self.steps, self.offsets):
            for r in range(t, L, s):
                hits[r] += 1
        return all(h == 1 for h in hits)


@dataclass(frozen=True)
class Refusal:
    """Why a map is not a bijection of ℕ.

    ``residue`` is the offending piece (if any), ``witness`` a concrete value:
    a collision point for non-injective maps, a missed value otherwise.
    """

    reason: str
    residue: int | None = None
    witness: int | None = None

    def __bool__(self):
        return False

    def __str__(self):
        parts = [self.reason]
        if self.residue is not None:
            parts.append(f"residue {self.residue}")
        if self.witness is not None:
            parts.append(f"witness {self.witness}")
        return "; ".join(parts)


def _crt(t1: int, s1: int, t2: int, s2: int) -> int:
    g = math.gcd(s1, s2)
    l = s1 // g * s2
    k = ((t2 - t1) // g * pow(s1 // g, -1, s2 // g)) % (s2 // g)
    return (t1 + s1 * k) % l


def is_bijection(f: CongruentialMap) -> BijectionCertificate | Refusal:
    K = f.modulus
    steps, offsets = [], []
    for j, p in enumerate(f.pieces):
        if p.a == 0:
            return Refusal("constant piece, not injective", j, j)
        s, t = p.a * K // p.c, (p.a * j + p.b) // p.c
        if t >= s:
            return Refusal("image progression starts above its step", j, t - s)
        steps.append(s)
        offsets.append(t)

    L = math.lcm(*steps)
    if sum(Fraction(1, s) for s in steps) == 1:
        if L <= _DENSE_COVER_LIMIT:
            seen = bytearray(L)
            for s, t in zip(steps, offsets):
                seen[t::s] = b"\x01" * len(range(t, L, s))
            if all(seen):
                return BijectionCertificate(tuple(steps), tuple(offsets), L)
        elif _pairwise_disjoint(steps, offsets) is None:
            return BijectionCertificate(tuple(steps), tuple(offsets), L)

    clash = _pairwise_disjoint(steps, offsets)
    if clash is not None:
        i, j = clash
        x = _crt(offsets[i], steps[i], offsets[j], steps[j])
        return Refusal(f"images of residues {i} and {j} overlap", j, x)
    # disjoint with density below one: some residue mod L is missed
    covered = [False] * L
    for s, t in zip(steps, offsets):
        for r in range(t, L, s):
            covered[r] = True
    gap = covered.index(False)
    return Refusal("image misses a residue class", None, gap)


def _pairwise_disjoint(steps, offsets) -> tuple[int, int] | None:
    for i in range(len(steps)):
        for j in range(i + 1, len(steps)):
            if (offsets[i] - offsets[j]) % math.gcd(steps[i], steps[j]) == 0:
                return i, j
    return None


def inverse(f: CongruentialMap) -> CongruentialMap:
    cert = is_bijection(f)
    if isinstance(cert, Refusal):
        raise NotABijection(cert)
    L = cert.modulus
    slots: list[AffinePiece | None] = [None] * L
    for p, s, t in zip(f.pieces, cert.steps, cert.offsets):
        q = AffinePiece.reduced(p.c, -p.b, p.a)
        slots[t::s] = [q] * len(range(t, L, s))
    return normalize(CongruentialMap(L, tuple(slots)))


# -- agreement sets -------------------------------------------------------------


@dataclass(frozen=True)
class AgreementSet:
    """A finite union of residue classes ``modulus*ℕ + r`` plus isolated points."""

    modulus: int
    residues: tuple[int, ...]
    points: tuple[int, ...]

    def __contains__(self, n: int) -> bool:
        return n in self.points or (n % self.modulus) in self.residues

    @property
    def is_everything(self) -> bool:
        return len(self.residues) == self.modulus

    @property
    def is_finite(self) -> bool:
        return not self.residues

    def __str__(self):
        parts = [f"{self.modulus}N+{r}" for r in self.residues]
        parts += [str(p) for p in self.points]
        return "{" + ", ".join(parts) + "}"


def solve_agreement(f: CongruentialMap, g: CongruentialMap) -> AgreementSet:
    """Exact solution set of ``f(n) == g(n)`` over ℕ."""
    L = math.lcm(f.modulus, g.modulus)
    whole = [False] * L
    points = []
    for r in range(L):
        p, q = f.pieces[r % f.modulus], g.pieces[r % g.modulus]
        # p.a/p.c n + p.b/p.c == q.a/q.c n + q.b/q.c
        coef = p.a * q.c - q.a * p.c
        rhs = q.b * p.c - p.b * q.c
        if coef == 0:
            whole[r] = rhs == 0
        elif rhs % coef == 0:
            n = rhs // coef
            if n >= 0 and n % L == r:
                points.append(n)
    d = _min_period(whole)
    residues = tuple(r for r in range(d) if whole[r])
    return AgreementSet(d, residues, tuple(sorted(points)))
