"""Small textual languages used by the CLI and the diagram format.

Map expressions::

    rho                        builtin name (see catalogue.builtin_maps)
    x3, xk:3                   generator X_3 of the F realisation
    inv(rho)                   inverse
    compose(lambda, rho_inv)   right-to-left composite
    star(id, alpha)            Girard's conjunction
    mu(f, g, h)                mu_k with k = number of arguments
    @path/to/map.cmap          a map file (also: any token ending in .cmap)

Tree terms: ``_`` is a leaf, ``(* A B)`` a binary node and ``(#k A1 ... Ak)``
a k-ary node, e.g. ``(* _ (* _ _))`` or ``(#3 _ _ _)``.
"""

from __future__ import annotations

import re
from pathlib import Path

from . import mapfile
from .catalogue import builtin_maps
from .congruential import CongruentialMap, compose_all, inverse
from .operad import PlanarTree, mu_k, star

_TOKEN = re.compile(r"\s*(?:(?P<punct>[(),])|(?P<atom>[^\s(),]+))")
_GEN = re.compile(r"(?:x|xk:)(\d+)")


class SyntaxError_(ValueError):
    """Malformed map expression or tree term."""


def _tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SyntaxError_(f"cannot tokenize {text[pos:]!r}")
        out.append(m.group("punct") or m.group("atom"))
        pos = m.end()
    return out


def resolve_name(name: str, base: Path | None = None) -> CongruentialMap:
    maps = builtin_maps()
    if name in maps:
        return maps[name]
    m = _GEN.fullmatch(name)
    if m:
        from .thompson import generator

        return generator(int(m.group(1)))
    if name.startswith("@") or name.endswith(".cmap") or "/" in name:
        path = Path(name.lstrip("@"))
        if base is not None and not path.is_absolute():
            path = base / path
        try:
            return mapfile.load(path)
        except OSError as e:
            raise SyntaxError_(f"cannot read map file {path}: {e.strerror}") from None
    raise SyntaxError_(f"unknown map {name!r}")


_FUNCS = {"inv", "compose", "star", "mu"}


def parse_map(text: str, base: Path | None = None) -> CongruentialMap:
    toks = _tokens(text)
    if not toks:
        raise SyntaxError_("empty map expression")
    pos = 0

    def expr() -> CongruentialMap:
        nonlocal pos
        if pos >= len(toks):
            raise SyntaxError_(f"unexpected end of {text!r}")
        tok = toks[pos]
        pos += 1
        if tok in "(),":
            raise SyntaxError_(f"unexpected {tok!r} in {text!r}")
        if pos < len(toks) and toks[pos] == "(":
            if tok not in _FUNCS:
                raise SyntaxError_(f"unknown function {tok!r}")
            pos += 1
            args = [expr()]
            while pos < len(toks) and toks[pos] == ",":
                pos += 1
                args.append(expr())
            if pos >= len(toks) or toks[pos] != ")":
                raise SyntaxError_(f"missing ')' in {text!r}")
            pos += 1
            return _apply(tok, args)
        return resolve_name(tok, base)

    result = expr()
    if pos != len(toks):
        raise SyntaxError_(f"trailing input {' '.join(toks[pos:])!r} in {text!r}")
    return result


def _apply(fn: str, args: list[CongruentialMap]) -> CongruentialMap:
    if fn == "inv":
        if len(args) != 1:
            raise SyntaxError_("inv takes one argument")
        return inverse(args[0])
    if fn == "star":
        if len(args) != 2:
            raise SyntaxError_("star takes two arguments")
        return star(*args)
    if fn == "compose":
        return compose_all(*args)
    return mu_k(args)


# -- trees -----------------------------------------------------------------------

_TREE_TOKEN = re.compile(r"\s*(\(|\)|_|\*|#\d+)")


def parse_tree(text: str) -> PlanarTree:
    toks, pos, s = [], 0, text.strip()
    while pos < len(s):
        m = _TREE_TOKEN.match(s, pos)
        if not m:
            raise SyntaxError_(f"bad tree syntax at {s[pos:]!r}")
        toks.append(m.group(1))
        pos = m.end()
    i = 0

    def node() -> PlanarTree:
        nonlocal i
        if i >= len(toks):
            raise SyntaxError_(f"unexpected end of tree {text!r}")
        tok = toks[i]
        i += 1
        if tok == "_":
            return PlanarTree.leaf()
        if tok != "(":
            raise SyntaxError_(f"unexpected {tok!r} in tree {text!r}")
        op = toks[i] if i < len(toks) else ""
        i += 1
        if op == "*":
            k = 2
        elif op.startswith("#"):
            k = int(op[1:])
        else:
            raise SyntaxError_(f"expected '*' or '#k' after '(' in {text!r}")
        kids = [node() for _ in range(k)]
        if i >= len(toks) or toks[i] != ")":
            raise SyntaxError_(f"node declared arity {k} but ')' not found in {text!r}")
        i += 1
        try:
            return PlanarTree(tuple(kids))
        except ValueError as e:
            raise SyntaxError_(str(e)) from None

    t = node()
    if i != len(toks):
        raise SyntaxError_(f"trailing input in tree {text!r}")
    return t
