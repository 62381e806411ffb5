"""Canonical text format for congruential maps.

::

    congruential v1
    modulus 3
    piece 0: 2 0 3
    piece 1: 4 -1 3
    piece 2: 4 1 3

One ``piece`` line per residue, decimal integers, ``#`` starts a comment.
"""

from __future__ import annotations

import re

from .congruential import AffinePiece, CongruentialMap, InvariantError, _check_piece

HEADER = "congruential v1"

_PIECE = re.compile(r"piece\s+(\d+)\s*:\s*(-?\d+)\s+(-?\d+)\s+(-?\d+)")
_MODULUS = re.compile(r"modulus\s+(\d+)")


class MapParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def dumps(f: CongruentialMap) -> str:
    lines = [HEADER, f"modulus {f.modulus}"]
    lines += [f"piece {j}: {p.a} {p.b} {p.c}" for j, p in enumerate(f.pieces)]
    return "\n".join(lines) + "\n"


def loads(text: str) -> CongruentialMap:
    header_seen = False
    modulus = None
    modulus_line = 0
    pieces: dict[int, AffinePiece] = {}
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        last = lineno
        if not header_seen:
            if line != HEADER:
                raise MapParseError(lineno, f"expected header {HEADER!r}, got {line!r}")
            header_seen = True
            continue
        if modulus is None:
            m = _MODULUS.fullmatch(line)
            if not m:
                raise MapParseError(lineno, f"expected 'modulus K', got {line!r}")
            modulus, modulus_line = int(m.group(1)), lineno
            if modulus < 1:
                raise MapParseError(lineno, "modulus must be positive")
            continue
        m = _PIECE.fullmatch(line)
        if not m:
            raise MapParseError(lineno, f"expected 'piece j: a b c', got {line!r}")
        j, a, b, c = (int(g) for g in m.groups())
        if j >= modulus:
            raise MapParseError(lineno, f"residue {j} out of range for modulus {modulus}")
        if j in pieces:
            raise MapParseError(lineno, f"duplicate residue {j}")
        try:
            p = AffinePiece(a, b, c)
            # checked per line so errors point at the offending piece
            _check_piece(p, modulus, j)
        except InvariantError as e:
            raise MapParseError(lineno, str(e)) from None
        pieces[j] = p
    if not header_seen:
        raise MapParseError(max(last, 1), "empty input")
    if modulus is None:
        raise MapParseError(last, "missing 'modulus' line")
    missing = [j for j in range(modulus) if j not in pieces]
    if missing:
        raise MapParseError(modulus_line, f"missing piece for residue {missing[0]}")
    return CongruentialMap(modulus, tuple(pieces[j] for j in range(modulus)))


def load(path) -> CongruentialMap:
    with open(path) as fh:
        return loads(fh.read())


def dump(f: CongruentialMap, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(f))
