"""Commuting-diagram checks for graphs labelled by congruential maps.

A path ``e1, e2, ..., ek`` denotes the composite ``ek ∘ ... ∘ e2 ∘ e1``.  A
diagram commutes when, for every ordered pair of nodes, all directed paths
between them (up to a length cap) denote the same map.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from pathlib import Path

from .catalogue import ALPHA, IDENTITY, LAMBDA, RHO
from .congruential import CongruentialMap, compose, compose_all, equal, find_witness, inverse
from .operad import star


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    label: CongruentialMap
    color: str = ""
    name: str = ""

    def __str__(self):
        tag = f" [{self.color}]" if self.color else ""
        return f"{self.src}->{self.dst} {self.name or '<map>'}{tag}"


@dataclass
class DiagramGraph:
    nodes: list[str] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)

    def add_node(self, node: str) -> None:
        if node not in self.nodes:
            self.nodes.append(node)

    def add_edge(self, src: str, dst: str, label: CongruentialMap, color: str = "",
                 name: str = "") -> None:
        for n in (src, dst):
            if n not in self.nodes:
                raise ValueError(f"unknown node {n!r}")
        self.edges.append(Edge(src, dst, label, color, name))

    def out_edges(self, node: str) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.src == node]

    def replace_label(self, index: int, label: CongruentialMap) -> "DiagramGraph":
        edges = list(self.edges)
        edges[index] = replace(edges[index], label=label, name=edges[index].name + "~")
        return DiagramGraph(list(self.nodes), edges)

    def path_map(self, path: tuple[int, ...]) -> CongruentialMap:
        return compose_all(*(self.edges[i].label for i in reversed(path)))

    def describe_path(self, path: tuple[int, ...]) -> str:
        if not path:
            return "<empty>"
        hops = [self.edges[path[0]].src]
        for i in path:
            e = self.edges[i]
            hops.append(f"-{e.name or '?'}-> {e.dst}")
        return " ".join(hops)


def all_paths(d: DiagramGraph, max_len: int) -> dict[tuple[str, str], list[tuple[tuple[int, ...], CongruentialMap]]]:
    """Every directed path of 1..max_len edges, grouped by endpoints, with its composite."""
    out: dict[tuple[str, str], list] = {}

    def walk(start, node, path, composite):
        for i in d.out_edges(node):
            e = d.edges[i]
            p = path + (i,)
            m = compose(e.label, composite)
            out.setdefault((start, e.dst), []).append((p, m))
            if len(p) < max_len:
                walk(start, e.dst, p, m)

    for n in d.nodes:
        walk(n, n, (), IDENTITY)
    return out


@dataclass
class Violation:
    src: str
    dst: str
    path_a: tuple[int, ...]
    path_b: tuple[int, ...]
    witness: int
    value_a: int
    value_b: int


@dataclass
class CommuteReport:
    pairs_checked: int = 0
    paths_checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_csv(self, d: DiagramGraph) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["src", "dst", "path_a", "path_b", "witness", "value_a", "value_b"])
        for v in self.violations:
            w.writerow([v.src, v.dst, d.describe_path(v.path_a), d.describe_path(v.path_b),
                        v.witness, v.value_a, v.value_b])
        return buf.getvalue()

    def to_text(self, d: DiagramGraph) -> str:
        lines = [f"{self.pairs_checked} node pairs, {self.paths_checked} paths checked"]
        for v in self.violations:
            lines.append(f"VIOLATION {v.src} -> {v.dst} at n={v.witness}: "
                         f"{d.describe_path(v.path_a)} gives {v.value_a}, "
                         f"{d.describe_path(v.path_b)} gives {v.value_b}")
        lines.append("commutes" if self.ok else f"{len(self.violations)} violation(s)")
        return "\n".join(lines)


def check_commutes(d: DiagramGraph, max_path_len: int = 6) -> CommuteReport:
    """Compare all parallel paths; record the first disagreeing path per node pair."""
    if max_path_len < 2:
        raise ValueError("max_path_len must be at least 2")
    report = CommuteReport()
    for (src, dst), paths in all_paths(d, max_path_len).items():
        report.pairs_checked += 1
        report.paths_checked += len(paths)
        base_path, base = paths[0]
        for p, m in paths[1:]:
            if not equal(base, m):
                n = find_witness(base, m)
                report.violations.append(Violation(src, dst, base_path, p, n, base(n), m(n)))
                break
    return report


# -- local triangles ---------------------------------------------------------------


@dataclass
class TriangleCheck:
    edge: int
    direct: int
    legs: tuple[int, int]
    commutes: bool
    witness: int | None


def local_triangles(d: DiagramGraph, index: int) -> list[TriangleCheck]:
    """Every triangle containing edge ``index``: a direct edge against a 2-edge path."""
    out = []
    for di, direct in enumerate(d.edges):
        for ai, a in enumerate(d.edges):
            if a.src != direct.src:
                continue
            for bi, b in enumerate(d.edges):
                if b.src != a.dst or b.dst != direct.dst:
                    continue
                if index not in (di, ai, bi) or len({di, ai, bi}) < 3:
                    continue
                lhs = direct.label
                rhs = compose(b.label, a.label)
                w = find_witness(lhs, rhs)
                out.append(TriangleCheck(index, di, (ai, bi), w is None, w))
    return out


def factorization_report(d: DiagramGraph, color: str) -> list[tuple[int, list[TriangleCheck]]]:
    """Local triangles for every edge of ``color`` (e.g. red edges vs green factors)."""
    return [(i, local_triangles(d, i)) for i, e in enumerate(d.edges) if e.color == color]


# -- built-in diagrams ----------------------------------------------------------------


def build_figure1() -> DiagramGraph:
    """MacLane's pentagon for α (red), its λ/ρ factorization (green) and the inner pentagon (blue)."""
    rho_inv = inverse(RHO)
    lam_inv = inverse(LAMBDA)
    d = DiagramGraph()
    for n in ("V0", "V1", "V2", "V3", "V4", "E0", "E1", "E2", "E3", "E4"):
        d.add_node(n)
    red = [
        ("V0", "V1", ALPHA, "α"),
        ("V1", "V2", ALPHA, "α"),
        ("V0", "V4", star(IDENTITY, ALPHA), "Id⋆α"),
        ("V4", "V3", ALPHA, "α"),
        ("V3", "V2", star(ALPHA, IDENTITY), "α⋆Id"),
    ]
    green = [
        ("V0", "E0", rho_inv, "ρ⁻¹"),
        ("E0", "V1", LAMBDA, "λ"),
        ("V1", "E1", rho_inv, "ρ⁻¹"),
        ("E1", "V2", LAMBDA, "λ"),
        ("V0", "E4", star(IDENTITY, rho_inv), "Id⋆ρ⁻¹"),
        ("E4", "V4", star(IDENTITY, LAMBDA), "Id⋆λ"),
        ("V4", "E3", rho_inv, "ρ⁻¹"),
        ("E3", "V3", LAMBDA, "λ"),
        ("V3", "E2", star(rho_inv, IDENTITY), "ρ⁻¹⋆Id"),
        ("E2", "V2", star(LAMBDA, IDENTITY), "λ⋆Id"),
    ]
    # labels read as products of maps, rightmost acting first
    blue = [
        ("E0", "E1", compose(rho_inv, LAMBDA), "ρ⁻¹λ"),
        ("E1", "E2", compose(star(lam_inv, IDENTITY), LAMBDA), "(λ⁻¹⋆Id)λ"),
        ("E3", "E2", compose(star(rho_inv, IDENTITY), LAMBDA), "(ρ⁻¹⋆Id)λ"),
        ("E4", "E3", compose(rho_inv, star(IDENTITY, LAMBDA)), "ρ⁻¹(Id⋆λ)"),
        ("E4", "E0", compose(rho_inv, star(IDENTITY, RHO)), "ρ⁻¹(Id⋆ρ)"),
    ]
    for color, group in (("red", red), ("green", green), ("blue", blue)):
        for src, dst, m, name in group:
            d.add_edge(src, dst, m, color, name)
    return d


K3_MIDDLE, K3_LEFT, K3_RIGHT = "(•••)", "((••)•)", "(•(••))"


def build_k3(with_associator: bool = False) -> DiagramGraph:
    """``((••)•) <-λ- (•••) -ρ-> (•(••))``, optionally closed by α: right -> left."""
    d = DiagramGraph()
    for n in (K3_MIDDLE, K3_LEFT, K3_RIGHT):
        d.add_node(n)
    d.add_edge(K3_MIDDLE, K3_LEFT, LAMBDA, "", "λ")
    d.add_edge(K3_MIDDLE, K3_RIGHT, RHO, "", "ρ")
    if with_associator:
        d.add_edge(K3_RIGHT, K3_LEFT, ALPHA, "", "α")
    return d


# -- text format ----------------------------------------------------------------------


def parse_diagram(text: str, base: Path | None = None) -> DiagramGraph:
    """Parse ``node <id>`` / ``edge <src> <dst> <color> <map-expression>`` lines."""
    from .syntax import parse_map

    d = DiagramGraph()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 4)
        try:
            if parts[0] == "node" and len(parts) == 2:
                d.add_node(parts[1])
            elif parts[0] == "edge" and len(parts) == 5:
                _, src, dst, color, expr = parts
                d.add_edge(src, dst, parse_map(expr, base), color, expr)
            else:
                raise ValueError(f"cannot parse {line!r}")
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}") from None
    return d
