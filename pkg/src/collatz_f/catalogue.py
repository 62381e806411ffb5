"""Named maps, transcribed case by case from their displayed formulas.

Each map is built with :meth:`CongruentialMap.from_cases`, which refuses case
tables that overlap or leave a gap.  Nothing here is derived from anything
else, so these serve as fixed reference values for the derived constructions.
"""

from __future__ import annotations

from .congruential import CongruentialMap, identity

# original Collatz bijection
RHO = CongruentialMap.from_cases([
    (3, 0, (2, 0, 3)),
    (3, 1, (4, -1, 3)),
    (3, 2, (4, 1, 3)),
])

RHO_INV = CongruentialMap.from_cases([
    (2, 0, (3, 0, 2)),
    (4, 1, (3, 1, 4)),
    (4, 3, (3, -1, 4)),
])

# reduced Collatz bijection, n ↦ rho(n+1) - 1
LAMBDA = CongruentialMap.from_cases([
    (3, 0, (4, 0, 3)),
    (3, 1, (4, 2, 3)),
    (3, 2, (2, -1, 3)),
])

LAMBDA_INV = CongruentialMap.from_cases([
    (4, 0, (3, 0, 4)),
    (4, 2, (3, -2, 4)),
    (2, 1, (3, 1, 2)),
])

ALPHA = CongruentialMap.from_cases([
    (2, 0, (2, 0, 1)),
    (4, 1, (1, 1, 1)),
    (4, 3, (1, -1, 2)),
])

ALPHA_INV = CongruentialMap.from_cases([
    (4, 0, (1, 0, 2)),
    (4, 2, (1, -1, 1)),
    (2, 1, (2, 1, 1)),
])

# second generator of the congruential realisation of F
ID_STAR_ALPHA = CongruentialMap.from_cases([
    (2, 0, (1, 0, 1)),
    (4, 1, (2, -1, 1)),
    (8, 3, (1, 2, 1)),
    (8, 7, (1, -1, 2)),
])

IDENTITY = identity()


def builtin_maps() -> dict[str, CongruentialMap]:
    """Names accepted by the CLI and the diagram format (generators excluded)."""
    from .operad import star

    return {
        "id": IDENTITY,
        "rho": RHO,
        "rho_inv": RHO_INV,
        "lambda": LAMBDA,
        "lambda_inv": LAMBDA_INV,
        "alpha": ALPHA,
        "alpha_inv": ALPHA_INV,
        "id_star_alpha": ID_STAR_ALPHA,
        "alpha_star_id": star(ALPHA, IDENTITY),
    }


def naturality_catalogue() -> dict[str, CongruentialMap]:
    """The six maps used for exhaustive naturality checks."""
    from .operad import star

    return {
        "id": IDENTITY,
        "rho": RHO,
        "lambda": LAMBDA,
        "alpha": ALPHA,
        "id*alpha": star(IDENTITY, ALPHA),
        "alpha*id": star(ALPHA, IDENTITY),
    }
