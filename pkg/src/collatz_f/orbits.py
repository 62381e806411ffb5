"""Big-integer orbits, cycle detection and the long-running OCC campaign."""

from __future__ import annotations

import csv
import hashlib
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .catalogue import ALPHA, LAMBDA, RHO
from .congruential import CongruentialMap, inverse, is_bijection

log = logging.getLogger(__name__)

DEFAULT_VALUE_BOUND = 2 ** 4096
DEFAULT_STEP_BOUND = 10 ** 6
CYCLE_STORE_LIMIT = 10 ** 4

__all__ = [
    "OrbitRecord",
    "orbit",
    "iterate",
    "stats_rows",
    "write_stats_csv",
    "verify_alpha_orbit_structure",
    "verify_succ_naturality",
    "CampaignState",
    "CampaignResult",
    "CheckpointError",
    "OCCCounterexample",
    "occ_campaign",
    "read_checkpoint",
    "write_checkpoint",
]


@dataclass
class OrbitRecord:
    """Trajectory summary of ``seed`` under a map.

    ``outcome`` is ``"cycle"`` (with ``cycle_length`` and ``cycle_entry``, the
    step at which the cycle is first entered) or ``"open"`` (with
    ``bound_hit`` set to ``"step-bound"`` or ``"value-bound"``).  Extrema are
    positions of strict local minima/maxima among interior points of the
    computed trajectory.
    """

    seed: int
    steps: int
    outcome: str
    final_value: int
    cycle_length: int | None = None
    cycle_entry: int | None = None
    bound_hit: str | None = None
    cycle: tuple[int, ...] | None = None
    values: list[int] | None = None
    minima: list[int] = field(default_factory=list)
    maxima: list[int] = field(default_factory=list)

    @property
    def is_cycle(self) -> bool:
        return self.outcome == "cycle"

    def describe(self) -> str:
        if self.is_cycle:
            if self.cycle is not None:
                body = "→".join(str(v) for v in self.cycle + self.cycle[:1])
            else:
                body = f"<{self.cycle_length} values>"
            return f"cycle length {self.cycle_length} entered at step {self.cycle_entry}: {body}"
        return f"open ({self.bound_hit}) after {self.steps} steps"


def _stepper(f: CongruentialMap):
    K = f.modulus
    table = [(p.a, p.b, p.c) for p in f.pieces]

    def step(x: int) -> int:
        a, b, c = table[x % K]
        return (a * x + b) // c

    return step


def iterate(f: CongruentialMap, seed: int) -> Iterator[int]:
    """``seed, f(seed), f(f(seed)), ...`` forever."""
    step = _stepper(f)
    x = seed
    while True:
        yield x
        x = step(x)


def orbit(f: CongruentialMap, seed: int, step_bound: int = DEFAULT_STEP_BOUND,
          value_bound: int | None = DEFAULT_VALUE_BOUND, *, store_values: bool = False,
          track_extrema: bool = True, fast_path: int = 4096) -> OrbitRecord:
    """Iterate ``f`` from ``seed`` until a cycle is found or a bound is hit.

    Cycles are caught three ways: a return to the seed (complete for
    bijections, where every cycle passes through its seed), a dictionary of
    the first ``fast_path`` values, and Brent's algorithm, which needs constant
    memory however large the values grow.  ``value_bound=None`` disables the
    value bound.
    """
    if step_bound < 1:
        raise ValueError("step_bound must be at least 1")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    step = _stepper(f)
    values = [seed] if store_values else None
    seen = {seed: 0} if fast_path > 0 else None
    minima: list[int] = []
    maxima: list[int] = []
    tortoise, power, lam = seed, 1, 0
    prev2, prev1 = None, seed
    x = seed
    found: tuple[int, int] | None = None  # (entry, length)
    bound_hit = "step-bound"
    n = 0
    for n in range(1, step_bound + 1):
        x = step(x)
        lam += 1
        if values is not None:
            values.append(x)
        if track_extrema and prev2 is not None:
            if prev1 < prev2 and prev1 < x:
                minima.append(n - 1)
            elif prev1 > prev2 and prev1 > x:
                maxima.append(n - 1)
        prev2, prev1 = prev1, x

        if x == seed:
            found = (0, n)
            break
        if seen is not None:
            if x in seen:
                found = (seen[x], n - seen[x])
                break
            if len(seen) < fast_path:
                seen[x] = n
        if x == tortoise:
            found = (_cycle_entry(step, seed, lam), lam)
            break
        if lam == power:
            tortoise, power, lam = x, power * 2, 0
        if value_bound is not None and x > value_bound:
            bound_hit = "value-bound"
            break

    if found is None:
        return OrbitRecord(seed, n, "open", x, bound_hit=bound_hit, values=values,
                           minima=minima, maxima=maxima)
    entry, length = found
    cycle = None
    if length <= CYCLE_STORE_LIMIT:
        y = seed
        for _ in range(entry):
            y = step(y)
        cyc = [y]
        for _ in range(length - 1):
            cyc.append(step(cyc[-1]))
        cycle = tuple(cyc)
    return OrbitRecord(seed, n, "cycle", x, cycle_length=length, cycle_entry=entry,
                       cycle=cycle, values=values, minima=minima, maxima=maxima)


def _cycle_entry(step, seed: int, length: int) -> int:
    a = b = seed
    for _ in range(length):
        b = step(b)
    mu = 0
    while a != b:
        a, b, mu = step(a), step(b), mu + 1
    return mu


def stats_rows(f: CongruentialMap, seed: int, steps: int) -> Iterator[tuple[int, int, bool, bool]]:
    """``(step, bit_length, is_local_min, is_local_max)`` for steps ``0..steps``."""
    it = iterate(f, seed)
    prev, cur = None, next(it)
    for n in range(steps + 1):
        nxt = next(it) if n < steps else None
        interior = prev is not None and nxt is not None
        is_min = interior and cur < prev and cur < nxt
        is_max = interior and cur > prev and cur > nxt
        yield n, cur.bit_length(), is_min, is_max
        prev, cur = cur, nxt


def write_stats_csv(f: CongruentialMap, seed: int, steps: int, out) -> None:
    w = csv.writer(out)
    w.writerow(["step", "value_bits", "is_local_min", "is_local_max"])
    for n, bits, lo, hi in stats_rows(f, seed, steps):
        w.writerow([n, bits, int(lo), int(hi)])


# -- step-level lemma checks ------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    checked: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_alpha_orbit_structure(n_max: int, alpha: CongruentialMap = ALPHA) -> CheckReport:
    """Check the pointwise facts behind the α-orbit lemma for ``0 <= n <= n_max``.

    odd n: α⁻¹(n) = 2n+1 (odd, > n); even n > 0: 0 < α⁻¹(n) < n; α⁻¹(0) = 0.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    inv = inverse(alpha)
    report = CheckReport("alpha-orbits", n_max + 1)
    if inv(0) != 0:
        report.failures.append((0, inv(0), "alpha^-1(0) != 0"))
    for n in range(1, n_max + 1):
        v = inv(n)
        if n % 2:
            if v != 2 * n + 1:
                report.failures.append((n, v, "odd: expected 2n+1"))
        elif not 0 < v < n:
            report.failures.append((n, v, "even: expected 0 < value < n"))
    return report


def verify_succ_naturality(k_max: int, n_max: int, rho: CongruentialMap = RHO,
                           lam: CongruentialMap = LAMBDA) -> CheckReport:
    """Check ``λ^k(n) = ρ^k(n+1) - 1`` for ``0 <= k <= k_max``, ``0 <= n <= n_max``."""
    srho, slam = _stepper(rho), _stepper(lam)
    report = CheckReport("succ", (k_max + 1) * (n_max + 1))
    for n in range(n_max + 1):
        x, y = n, n + 1
        for k in range(k_max + 1):
            if x != y - 1:
                report.failures.append((k, n, x, y - 1))
                break
            x, y = slam(x), srho(y)
    return report


# -- OCC campaign ----------------------------------------------------------------

CHECKPOINT_HEADER = "occ-checkpoint v1"


class CheckpointError(ValueError):
    pass


class OCCCounterexample(RuntimeError):
    """Raised when a seed expected to have an infinite orbit returns to itself."""


@dataclass
class CampaignState:
    """Everything needed to resume: ρ-trajectory from ``seed``, λ-twin from ``seed - 1``."""

    seed: int
    step: int = 0
    value: int = 0
    twin_value: int = 0
    prev_value: int | None = None
    min_count: int = 0
    max_count: int = 0
    last_min_pos: int = -1
    last_max_pos: int = -1
    peak_bits: int = 0
    peak_pos: int = 0
    digest: str = hashlib.sha256(b"").hexdigest()

    @classmethod
    def start(cls, seed: int) -> "CampaignState":
        if seed < 1:
            raise ValueError("campaign seed must be positive (the λ-twin starts at seed - 1)")
        return cls(seed=seed, value=seed, twin_value=seed - 1, peak_bits=seed.bit_length())

    def _note_extremum(self, kind: str, pos: int) -> None:
        h = hashlib.sha256(f"{self.digest}:{kind}{pos}".encode())
        self.digest = h.hexdigest()
        if kind == "min":
            self.min_count += 1
            self.last_min_pos = pos
        else:
            self.max_count += 1
            self.last_max_pos = pos


def write_checkpoint(state: CampaignState, path: str | os.PathLike) -> None:
    prev = "-" if state.prev_value is None else str(state.prev_value)
    lines = [
        CHECKPOINT_HEADER,
        "map rho",
        "twin lambda",
        f"seed {state.seed}",
        f"step {state.step}",
        f"value {state.value}",
        f"twin_value {state.twin_value}",
        f"prev_value {prev}",
        f"min_count {state.min_count}",
        f"max_count {state.max_count}",
        f"min_pos {state.last_min_pos}",
        f"max_pos {state.last_max_pos}",
        f"peak_bits {state.peak_bits}",
        f"peak_pos {state.peak_pos}",
        f"extrema_digest {state.digest}",
        "end",
    ]
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)


_INT_KEYS = ("seed", "step", "value", "twin_value", "min_count", "max_count",
             "min_pos", "max_pos", "peak_bits", "peak_pos")


def read_checkpoint(path: str | os.PathLike) -> CampaignState:
    text = Path(path).read_text()
    lines = [l.strip() for l in text.splitlines() if l.strip()]
    if not lines or lines[0] != CHECKPOINT_HEADER:
        raise CheckpointError(f"{path}: missing '{CHECKPOINT_HEADER}' header")
    if lines[-1] != "end":
        raise CheckpointError(f"{path}: truncated checkpoint (no 'end' line)")
    fields: dict[str, str] = {}
    for lineno, line in enumerate(lines[1:-1], start=2):
        key, _, val = line.partition(" ")
        if not val or key in fields:
            raise CheckpointError(f"{path}:{lineno}: malformed or duplicate line {line!r}")
        fields[key] = val.strip()
    if fields.get("map") != "rho" or fields.get("twin") != "lambda":
        raise CheckpointError(f"{path}: incompatible checkpoint (expected map rho, twin lambda)")
    try:
        ints = {k: int(fields[k]) for k in _INT_KEYS}
        prev = None if fields["prev_value"] == "-" else int(fields["prev_value"])
        digest = fields["extrema_digest"]
    except KeyError as e:
        raise CheckpointError(f"{path}: missing field {e.args[0]}") from None
    except ValueError as e:
        raise CheckpointError(f"{path}: bad integer ({e})") from None
    state = CampaignState(
        seed=ints["seed"], step=ints["step"], value=ints["value"],
        twin_value=ints["twin_value"], prev_value=prev,
        min_count=ints["min_count"], max_count=ints["max_count"],
        last_min_pos=ints["min_pos"], last_max_pos=ints["max_pos"],
        peak_bits=ints["peak_bits"], peak_pos=ints["peak_pos"], digest=digest,
    )
    if state.step < 0 or state.value < 0:
        raise CheckpointError(f"{path}: negative step or value")
    if state.twin_value != state.value - 1:
        raise CheckpointError(f"{path}: twin value is not value - 1 (corrupt checkpoint)")
    if (state.step == 0) != (prev is None):
        raise CheckpointError(f"{path}: prev_value inconsistent with step")
    return state


@dataclass
class CampaignResult:
    state: CampaignState
    record: OrbitRecord
    checkpoints_written: int


def occ_campaign(seed: int = 8, step_bound: int = DEFAULT_STEP_BOUND,
                 value_bound: int | None = None,
                 checkpoint_path: str | os.PathLike | None = None,
                 checkpoint_every: int = 100_000, resume: bool = True,
                 expect_infinite: bool | None = None) -> CampaignResult:
    """Run the ρ-orbit of ``seed`` alongside the λ-orbit of ``seed - 1``.

    ρ is a certified bijection, so the orbit is finite exactly when it
    returns to ``seed``; that test is exact at every step.  The twin is
    checked against ``λ^k(seed-1) = ρ^k(seed) - 1`` at every checkpoint.
    ``step_bound`` counts total steps including any resumed prefix.

    If the orbit closes and ``expect_infinite`` holds (default: ``seed == 8``)
    :class:`OCCCounterexample` is raised after the checkpoint is written.
    """
    if expect_infinite is None:
        expect_infinite = seed == 8
    if not is_bijection(RHO):
        raise AssertionError("rho failed its bijection certificate")
    path = Path(checkpoint_path) if checkpoint_path is not None else None
    if path is not None and resume and path.exists():
        state = read_checkpoint(path)
        if state.seed != seed:
            raise CheckpointError(f"{path}: checkpoint is for seed {state.seed}, not {seed}")
        log.info("resuming seed %d at step %d", seed, state.step)
    else:
        state = CampaignState.start(seed)

    srho, slam = _stepper(RHO), _stepper(LAMBDA)
    x, y, prev = state.value, state.twin_value, state.prev_value
    step = state.step
    written = 0
    outcome = "open"
    bound_hit = "step-bound"

    def sync():
        state.step, state.value, state.twin_value, state.prev_value = step, x, y, prev
        if y != x - 1:
            raise AssertionError(f"twin linkage broken at step {step}: {y} != {x} - 1")

    while step < step_bound:
        nxt = srho(x)
        y = slam(y)
        step += 1
        if prev is not None:
            if x < prev and x < nxt:
                state._note_extremum("min", step - 1)
            elif x > prev and x > nxt:
                state._note_extremum("max", step - 1)
        prev, x = x, nxt
        bits = x.bit_length()
        if bits > state.peak_bits:
            state.peak_bits, state.peak_pos = bits, step
        if x == seed:
            outcome = "cycle"
            break
        if value_bound is not None and x > value_bound:
            bound_hit = "value-bound"
            break
        if path is not None and step % checkpoint_every == 0:
            sync()
            write_checkpoint(state, path)
            written += 1

    sync()
    if path is not None:
        write_checkpoint(state, path)
        written += 1

    if outcome == "cycle":
        record = OrbitRecord(seed, step, "cycle", x, cycle_length=step, cycle_entry=0)
        if expect_infinite:
            log.error("!!! seed %d returned to itself after %d steps under rho !!!", seed, step)
            raise OCCCounterexample(f"orbit of {seed} under rho is a cycle of length {step}")
    else:
        record = OrbitRecord(seed, step, "open", x, bound_hit=bound_hit)
    return CampaignResult(state, record, written)
