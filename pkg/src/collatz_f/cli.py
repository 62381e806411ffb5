"""Command-line interface.

Exit status: 0 on success (or a verified check), 1 when a check fails, 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time

from . import mapfile
from .catalogue import ALPHA, naturality_catalogue
from .congruential import (
    CongruentialMap,
    InvariantError,
    NotABijection,
    compose_all,
    equal,
    find_witness,
    inverse,
    is_bijection,
    normalize,
    solve_agreement,
)
from .operad import (
    check_naturality,
    eval_tree,
    freeness_probe,
    lambda_component_sides,
    mu_k,
    naturality_sides,
    rho_component_sides,
    star,
)
from .syntax import SyntaxError_, parse_map, parse_tree

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, default=str))
    else:
        print(text)


def _map(text: str) -> CongruentialMap:
    try:
        return parse_map(text)
    except mapfile.MapParseError as e:
        raise UsageError(f"{text}: {e}") from None
    except (SyntaxError_, InvariantError) as e:
        raise UsageError(str(e)) from None


def _map_payload(f: CongruentialMap) -> dict:
    return {"modulus": f.modulus, "pieces": f.triples()}


def _print_map(args, f: CongruentialMap) -> int:
    _emit(args, _map_payload(f), mapfile.dumps(f).rstrip("\n"))
    return EXIT_OK


# -- map algebra ----------------------------------------------------------------------


def cmd_eval(args) -> int:
    f = _map(args.map)
    results = [(n, f(n)) for n in args.n]
    _emit(args, {"values": {str(n): v for n, v in results}},
          "\n".join(str(v) for _, v in results))
    return EXIT_OK


def cmd_compose(args) -> int:
    return _print_map(args, compose_all(*(_map(m) for m in args.map)))


def cmd_invert(args) -> int:
    f = _map(args.map)
    try:
        g = inverse(f)
    except NotABijection as e:
        _emit(args, {"bijection": False, "reason": str(e.refusal)}, f"not a bijection: {e.refusal}")
        return EXIT_FAIL
    return _print_map(args, g)


def cmd_normalize(args) -> int:
    return _print_map(args, normalize(_map(args.map)))


def cmd_export(args) -> int:
    f = _map(args.map)
    if args.out:
        mapfile.dump(f, args.out)
        return EXIT_OK
    sys.stdout.write(mapfile.dumps(f))
    return EXIT_OK


def cmd_import(args) -> int:
    try:
        if args.file == "-":
            f = mapfile.loads(sys.stdin.read())
        else:
            f = mapfile.load(args.file)
    except OSError as e:
        raise UsageError(f"{args.file}: {e.strerror}") from None
    except mapfile.MapParseError as e:
        raise UsageError(f"{args.file}: {e}") from None
    return _print_map(args, normalize(f))


def cmd_certify(args) -> int:
    cert = is_bijection(_map(args.map))
    if not cert:
        _emit(args, {"bijection": False, "reason": str(cert)}, f"not a bijection: {cert}")
        return EXIT_FAIL
    progs = ", ".join(f"{s}N+{t}" for s, t in cert.progressions)
    _emit(args, {"bijection": True, "progressions": cert.progressions},
          f"bijection; image progressions {{{progs}}}")
    return EXIT_OK


def cmd_equal(args) -> int:
    f, g = _map(args.map[0]), _map(args.map[1])
    n = find_witness(f, g)
    if n is None:
        _emit(args, {"equal": True}, "true")
        return EXIT_OK
    _emit(args, {"equal": False, "witness": n, "values": [f(n), g(n)]},
          f"false: witness n={n}, {f(n)} != {g(n)}")
    return EXIT_FAIL


def cmd_solve_agree(args) -> int:
    s = solve_agreement(_map(args.map[0]), _map(args.map[1]))
    _emit(args, {"modulus": s.modulus, "residues": s.residues, "points": s.points}, str(s))
    return EXIT_OK


def cmd_star(args) -> int:
    return _print_map(args, star(_map(args.map[0]), _map(args.map[1])))


def cmd_mu(args) -> int:
    maps = [_map(m) for m in args.map]
    if len(maps) != args.k:
        raise UsageError(f"--k {args.k} needs exactly {args.k} --map arguments, got {len(maps)}")
    return _print_map(args, mu_k(maps))


def cmd_tree_eval(args) -> int:
    try:
        t = parse_tree(args.tree)
    except SyntaxError_ as e:
        raise UsageError(str(e)) from None
    maps = [_map(m) for m in args.map]
    if t.leaves != len(maps):
        raise UsageError(f"tree has {t.leaves} leaves but {len(maps)} maps were given")
    return _print_map(args, eval_tree(t, maps))


def _word(text: str):
    from .thompson import parse_word

    try:
        return parse_word(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_word_eval(args) -> int:
    from .thompson import eval_word

    return _print_map(args, eval_word(_word(args.word)))


def cmd_word_equal(args) -> int:
    from .thompson import eval_word

    f, g = eval_word(_word(args.word[0])), eval_word(_word(args.word[1]))
    n = find_witness(f, g)
    if n is None:
        _emit(args, {"equal": True}, "true")
        return EXIT_OK
    _emit(args, {"equal": False, "witness": n, "values": [f(n), g(n)]},
          f"false: witness n={n}, {f(n)} != {g(n)}")
    return EXIT_FAIL


# -- verification suites --------------------------------------------------------------


def _verdict(args, name: str, ok: bool, detail: str, extra: dict | None = None) -> int:
    payload = {"check": name, "ok": ok, **(extra or {})}
    _emit(args, payload, f"{name}: {'verified' if ok else 'FAILED'}" + (f" ({detail})" if detail else ""))
    return EXIT_OK if ok else EXIT_FAIL


def verify_pentagon(args) -> int:
    from .thompson import pentagon_sides

    lhs, rhs = pentagon_sides(ALPHA)
    n = find_witness(lhs, rhs)
    return _verdict(args, "pentagon", n is None,
                    "" if n is None else f"witness n={n}", {"witness": n})


def verify_relations(args) -> int:
    from .thompson import check_relations

    bad = check_relations(args.max_index)
    detail = (f"X_j = X_i X_(j+1) X_i^-1 for 0 <= i < j <= {args.max_index}" if not bad else
              "; ".join(f"i={i} j={j} witness n={w}" for i, j, w in bad))
    return _verdict(args, "relations", not bad, detail, {"violations": bad})


def verify_naturality(args) -> int:
    from .randmaps import random_bijection

    cat = naturality_catalogue()
    failures = []
    for a, f in cat.items():
        for b, g in cat.items():
            for c, h in cat.items():
                if not check_naturality(f, g, h):
                    failures.append(f"({a},{b},{c})")
    rng = random.Random(args.seed)
    for t in range(args.trials):
        f, g, h = (random_bijection(rng) for _ in range(3))
        lhs, rhs = naturality_sides(f, g, h)
        n = find_witness(lhs, rhs)
        if n is not None:
            failures.append(f"random trial {t} witness n={n}")
    detail = f"{len(cat) ** 3} catalogue triples + {args.trials} random triples"
    if failures:
        detail = "; ".join(failures[:5])
    return _verdict(args, "naturality", not failures, detail, {"failures": failures})


def verify_components(args) -> int:
    cat = naturality_catalogue()
    failures = []
    for a, f in cat.items():
        for b, g in cat.items():
            for c, h in cat.items():
                for label, sides in (("rho", rho_component_sides), ("lambda", lambda_component_sides)):
                    lhs, rhs = sides(f, g, h)
                    if not equal(lhs, rhs):
                        failures.append(f"{label}:({a},{b},{c})")
    return _verdict(args, "mu3-components", not failures,
                    "; ".join(failures[:5]), {"failures": failures})


def verify_figure1(args) -> int:
    from .diagrams import build_figure1, check_commutes

    d = build_figure1()
    report = check_commutes(d, args.max_path_len)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(report.to_csv(d))
    if not args.json:
        print(report.to_text(d))
    return _verdict(args, "figure1", report.ok, "",
                    {"pairs": report.pairs_checked, "paths": report.paths_checked,
                     "violations": len(report.violations)})


def verify_diagram(args) -> int:
    from pathlib import Path

    from .diagrams import check_commutes, parse_diagram

    try:
        text = Path(args.file).read_text()
    except OSError as e:
        raise UsageError(f"{args.file}: {e.strerror}") from None
    try:
        d = parse_diagram(text, Path(args.file).parent)
    except ValueError as e:
        raise UsageError(f"{args.file}: {e}") from None
    report = check_commutes(d, args.max_path_len)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(report.to_csv(d))
    if not args.json:
        print(report.to_text(d))
    witnesses = [v.witness for v in report.violations]
    return _verdict(args, "diagram", report.ok, "", {"pairs": report.pairs_checked,
                                                     "violations": len(witnesses),
                                                     "witnesses": witnesses})


def verify_k3(args) -> int:
    from .diagrams import build_k3, check_commutes

    d = build_k3(with_associator=True)
    report = check_commutes(d, 2)
    return _verdict(args, "k3", report.ok, "λ = α∘ρ" if report.ok else report.to_text(d))


def verify_alpha_orbits(args) -> int:
    from .orbits import verify_alpha_orbit_structure

    r = verify_alpha_orbit_structure(args.n_max)
    detail = f"n <= {args.n_max}" if r.ok else f"first counterexample {r.failures[0]}"
    return _verdict(args, "alpha-orbits", r.ok, detail, {"failures": r.failures[:10]})


def verify_succ(args) -> int:
    from .orbits import verify_succ_naturality

    r = verify_succ_naturality(args.k_max, args.n_max)
    detail = (f"k <= {args.k_max}, n <= {args.n_max}" if r.ok else
              f"first mismatch (k, n, lambda^k(n), rho^k(n+1)-1) = {r.failures[0]}")
    return _verdict(args, "succ", r.ok, detail, {"failures": r.failures[:10]})


def verify_freeness(args) -> int:
    trees, collisions = freeness_probe(args.max_leaves)
    detail = (f"{len(trees)} trees pairwise distinct on (α,...,α)" if not collisions else
              "; ".join(f"{a} == {b}" for a, b in collisions[:5]))
    return _verdict(args, "freeness", not collisions, detail,
                    {"trees": len(trees), "collisions": [(str(a), str(b)) for a, b in collisions]})


def verify_brown(args) -> int:
    from .thompson import check_brown_closure, check_brown_conjugation, random_word

    rng = random.Random(args.seed)
    failures = []
    for t in range(args.trials):
        a, b, c = (random_word(rng) for _ in range(3))
        if not check_brown_conjugation(a, b, c):
            failures.append(f"conjugation ({a} | {b} | {c})")
        if not check_brown_closure(a, b):
            failures.append(f"closure ({a} | {b})")
    return _verdict(args, "brown", not failures,
                    f"{args.trials} random word triples" if not failures else "; ".join(failures[:5]))


# -- orbits -----------------------------------------------------------------------


def cmd_orbit(args) -> int:
    from .orbits import DEFAULT_VALUE_BOUND, orbit, write_stats_csv

    f = _map(args.map)
    bound = None if args.no_value_bound else (args.value_bound or DEFAULT_VALUE_BOUND)
    rec = orbit(f, args.seed, args.steps, bound)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            write_stats_csv(f, args.seed, rec.steps, fh)
    payload = {"seed": rec.seed, "steps": rec.steps, "outcome": rec.outcome,
               "cycle_length": rec.cycle_length, "cycle_entry": rec.cycle_entry,
               "cycle": list(rec.cycle) if rec.cycle else None, "bound_hit": rec.bound_hit,
               "final_value_bits": rec.final_value.bit_length(),
               "local_minima": len(rec.minima), "local_maxima": len(rec.maxima)}
    _emit(args, payload, rec.describe())
    return EXIT_OK


def cmd_campaign(args) -> int:
    from .orbits import CheckpointError, OCCCounterexample, occ_campaign

    t0 = time.time()
    try:
        res = occ_campaign(seed=args.seed, step_bound=args.steps, checkpoint_path=args.checkpoint,
                           checkpoint_every=args.every, resume=not args.fresh)
    except CheckpointError as e:
        raise UsageError(str(e)) from None
    except OCCCounterexample as e:
        _emit(args, {"counterexample": str(e)}, f"!!! {e} !!!")
        return EXIT_FAIL
    st = res.state
    payload = {"seed": st.seed, "step": st.step, "outcome": res.record.outcome,
               "value_bits": st.value.bit_length(), "local_minima": st.min_count,
               "local_maxima": st.max_count, "peak_bits": st.peak_bits,
               "extrema_digest": st.digest, "checkpoints": res.checkpoints_written,
               "seconds": round(time.time() - t0, 3)}
    _emit(args, payload, f"seed {st.seed}: {res.record.describe()}; value has "
                         f"{st.value.bit_length()} bits; {st.min_count} minima, "
                         f"{st.max_count} maxima; twin λ-orbit of {st.seed - 1} agrees")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _path_len(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"max path length must be at least 2, got {text}")
    return v


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="collatz-f", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help, description=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("eval", cmd_eval, "evaluate a map at one or more points")
    sp.add_argument("--map", required=True)
    sp.add_argument("--n", type=_natural, action="append", required=True)

    sp = add("compose", cmd_compose, "compose maps right-to-left (first --map is outermost)")
    sp.add_argument("--map", action="append", required=True)

    for name, func, help in (("invert", cmd_invert, "inverse of a bijection"),
                             ("normalize", cmd_normalize, "canonical form of a map"),
                             ("certify", cmd_certify, "bijection certificate or refusal")):
        add(name, func, help).add_argument("--map", required=True)

    sp = add("export", cmd_export, "write a map in the canonical text format")
    sp.add_argument("--map", required=True)
    sp.add_argument("--out")

    sp = add("import", cmd_import, "read and validate a map file ('-' for stdin)")
    sp.add_argument("--file", required=True)

    for name, func, help in (("equal", cmd_equal, "decide equality of two maps"),
                             ("solve-agree", cmd_solve_agree, "solve f(n) = g(n) over N"),
                             ("star", cmd_star, "Girard's conjunction of two maps")):
        add(name, func, help).add_argument("--map", action="append", required=True,
                                           help="give exactly twice")

    sp = add("mu", cmd_mu, "k-ary conjunction mu_k")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--map", action="append", required=True)

    sp = add("tree-eval", cmd_tree_eval, "evaluate a planar-tree term, e.g. '(* _ (* _ _))'")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--map", action="append", default=[])

    sp = add("word-eval", cmd_word_eval, "evaluate a word such as \"x0 x1' x0\"")
    sp.add_argument("--word", required=True)

    sp = add("word-equal", cmd_word_equal, "decide equality of two words in F")
    sp.add_argument("--word", action="append", required=True)

    vp = sub.add_parser("verify", help="run a verification suite")
    vsub = vp.add_subparsers(dest="suite", required=True)

    def vadd(name, func, help):
        sp = vsub.add_parser(name, parents=[common], help=help, description=help)
        sp.set_defaults(func=func)
        return sp

    vadd("pentagon", verify_pentagon, "α∘α = (α⋆Id)∘α∘(Id⋆α)")
    vadd("relations", verify_relations, "X_j = X_i X_(j+1) X_i^-1").add_argument(
        "--max-index", type=_positive, default=6)
    sp = vadd("naturality", verify_naturality, "naturality of α on the catalogue and random bijections")
    sp.add_argument("--trials", type=_natural, default=100)
    sp.add_argument("--seed", type=int, default=0)
    vadd("components", verify_components, "ρ- and λ-components for mu3 on the catalogue")
    sp = vadd("figure1", verify_figure1, "the commuting pentagram")
    sp.add_argument("--max-path-len", type=_path_len, default=6)
    sp.add_argument("--csv", help="write violations as CSV")
    sp = vadd("diagram", verify_diagram, "commutativity of a diagram file (node/edge lines)")
    sp.add_argument("--file", required=True)
    sp.add_argument("--max-path-len", type=_path_len, default=6)
    sp.add_argument("--csv", help="write violations as CSV")
    vadd("k3", verify_k3, "λ = α∘ρ on the K3 fixture")
    vadd("alpha-orbits", verify_alpha_orbits, "step-level α⁻¹ facts").add_argument(
        "--n-max", type=_positive, default=10 ** 5)
    sp = vadd("succ", verify_succ, "λ^k(n) = ρ^k(n+1) - 1")
    sp.add_argument("--k-max", type=_natural, default=100)
    sp.add_argument("--n-max", type=_natural, default=1000)
    vadd("freeness", verify_freeness, "planar trees give pairwise distinct maps on (α,...,α)").add_argument(
        "--max-leaves", type=_positive, default=5)
    sp = vadd("brown", verify_brown, "Brown's conjugation identity and closure under ⋆")
    sp.add_argument("--trials", type=_natural, default=50)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("orbit", cmd_orbit, "orbit of a seed with cycle detection")
    sp.add_argument("--map", required=True)
    sp.add_argument("--seed", type=_natural, required=True)
    sp.add_argument("--steps", type=_positive, default=10 ** 6)
    sp.add_argument("--value-bound", type=_positive)
    sp.add_argument("--no-value-bound", action="store_true")
    sp.add_argument("--csv", help="write step,value_bits,is_local_min,is_local_max")

    sp = add("campaign", cmd_campaign, "resumable ρ-orbit run with its λ twin")
    sp.add_argument("--checkpoint", required=True)
    sp.add_argument("--seed", type=_positive, default=8)
    sp.add_argument("--steps", type=_positive, default=10 ** 6)
    sp.add_argument("--every", type=_positive, default=100_000)
    sp.add_argument("--fresh", action="store_true", help="ignore an existing checkpoint")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    for attr in ("map", "word"):
        if args.command in ("equal", "solve-agree", "star", "word-equal") and \
                isinstance(getattr(args, attr, None), list) and len(getattr(args, attr)) != 2:
            print(f"error: {args.command} needs exactly two --{attr} arguments", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NotABijection as e:
        # inv(...) inside a map expression
        print(f"not a bijection: {e.refusal}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
