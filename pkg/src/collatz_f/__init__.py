"""Congruential bijections of ℕ: Collatz bijections, Girard's conjunction and Thompson's group F."""

from .congruential import (
    AffinePiece,
    AgreementSet,
    BijectionCertificate,
    CongruentialMap,
    InvariantError,
    NotABijection,
    Refusal,
    compose,
    compose_all,
    equal,
    find_witness,
    identity,
    inverse,
    is_bijection,
    normalize,
    solve_agreement,
)
from .catalogue import ALPHA, ALPHA_INV, ID_STAR_ALPHA, IDENTITY, LAMBDA, LAMBDA_INV, RHO, RHO_INV
from .operad import PlanarTree, check_naturality, eval_tree, mu3, mu_k, star

__version__ = "0.1.0"
