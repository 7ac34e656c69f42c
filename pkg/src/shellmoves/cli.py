"""Command-line front end.

Subcommands: invariants, normalize, equiv, realize, fuzz, witness, replay,
fmt.  Exit codes: 0 success (equiv: equivalent; witness: found), 1 negative
result or failed realization, 2 internal invariant violation, 64 usage
error, 65 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import parse_poly
from .diagram import GaussDiagram, parse_gauss_code, serialize, swap_components
from .errors import (
    ComponentCountMismatch,
    ConstraintViolated,
    GaussCodeError,
    NegativeLambda,
    NotRealizable,
    ShellmovesError,
    UnsupportedComponentCount,
    WrongComponentCount,
)
from .equiv import bfs_witness, realize_knot, realize_link, s_equivalent
from .errors import BudgetExceeded, StaleSite
from .invariants import KnotProfile, LinkProfile, profile
from .moves import apply_move, random_walk, site_from_text, site_to_text
from .normal_form import build_knot_form, build_link_form, canonical_form

USAGE_ERROR = 64
DATA_ERROR = 65
INVARIANT_VIOLATION = 2


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise GaussCodeError(f"cannot read {path}: {e}") from None


def _load(path: str) -> GaussDiagram:
    return parse_gauss_code(_read(path))


def _fmt_table(t: dict[int, int]) -> str:
    return "{" + ", ".join(f"{n}:{v}" for n, v in sorted(t.items())) + "}"


def _print_profile(pr, out) -> None:
    if isinstance(pr, KnotProfile):
        print("mu: 1", file=out)
        print(f"W: {pr.writhe}", file=out)
        print(f"J: {_fmt_table(pr.n_writhes)}", file=out)
        print(f"odd_writhe: {pr.odd_writhe}", file=out)
        return
    print("mu: 2", file=out)
    print(f"lk: ({pr.lk12}, {pr.lk21})", file=out)
    print(f"lambda: {pr.lam}", file=out)
    print(f"J1: {_fmt_table(pr.jn1)}", file=out)
    print(f"J2: {_fmt_table(pr.jn2)}", file=out)
    if pr.shell_sum is not None:
        print(f"shell_sum: {pr.shell_sum}", file=out)
    print(f"F: {pr.linking_class}", file=out)
    if pr.f_prime is not None:
        print(f"F_derivative: {pr.f_prime}", file=out)


def _profile_json(pr) -> dict:
    if isinstance(pr, KnotProfile):
        return {"mu": 1, "W": str(pr.writhe),
                "J": {str(n): v for n, v in sorted(pr.n_writhes.items())},
                "odd_writhe": pr.odd_writhe}
    return {"mu": 2, "lk12": pr.lk12, "lk21": pr.lk21, "lambda": pr.lam,
            "J1": {str(n): v for n, v in sorted(pr.jn1.items())},
            "J2": {str(n): v for n, v in sorted(pr.jn2.items())},
            "shell_sum": pr.shell_sum,
            "F": [str(pr.linking_class.f), str(pr.linking_class.g)],
            "F_modulus": pr.linking_class.s,
            "F_derivative": pr.f_prime}


def _cmd_invariants(args, out) -> int:
    pr = profile(_load(args.file))
    if args.json:
        print(json.dumps(_profile_json(pr), sort_keys=True), file=out)
    else:
        _print_profile(pr, out)
    return 0


def _cmd_normalize(args, out) -> int:
    G = _load(args.file)
    pr = profile(G)
    if isinstance(pr, LinkProfile) and pr.lam < 0:
        print("note: components swapped (lambda < 0)", file=out)
        G = swap_components(G)
        pr = profile(G)
    sf = canonical_form(pr)
    if isinstance(pr, KnotProfile):
        print(f"a: {_fmt_table(sf.a)}", file=out)
        rebuilt = build_knot_form(sf.a)
    else:
        print(f"a: {_fmt_table(sf.a)}", file=out)
        print(f"b: {_fmt_table(sf.b)}", file=out)
        if sf.lam == 0:
            print(f"c: {_fmt_table(sf.c)}", file=out)
            print(f"d: {_fmt_table(sf.d)}", file=out)
        else:
            print(f"c: {list(sf.c_vector())}", file=out)
            print(f"d: {list(sf.d_vector())}", file=out)
        print(f"p: {sf.p}", file=out)
        rebuilt = build_link_form(sf)
    print(serialize(rebuilt), end="", file=out)
    return 0


def _cmd_equiv(args, out) -> int:
    verdict = s_equivalent(_load(args.a), _load(args.b))
    print(verdict.reason, file=out)
    return 0 if verdict.equivalent else 1


def _parse_pairs(body: str, what: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for tok in body.split():
        n, sep, v = tok.partition(":")
        if not sep:
            raise GaussCodeError(f"{what}: expected n:coeff pairs, got {tok!r}")
        try:
            out[int(n)] = int(v)
        except ValueError:
            raise GaussCodeError(f"{what}: bad pair {tok!r}") from None
    return out


def _parse_vector(body: str, what: str) -> list[int]:
    try:
        return [int(t) for t in body.split()]
    except ValueError:
        raise GaussCodeError(f"{what}: expected integers") from None


def _cmd_realize(args, out) -> int:
    fields: dict[str, str] = {}
    for raw in _read(args.spec).splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, body = line.partition(":")
        if not sep:
            raise GaussCodeError(f"bad target line {line!r}")
        fields[key.strip()] = body.strip()
    mu = fields.get("mu")
    if mu == "1":
        if "w" not in fields:
            raise GaussCodeError("knot target needs a 'w:' polynomial line")
        try:
            f = parse_poly(fields["w"])
        except ValueError as e:
            raise GaussCodeError(str(e)) from None
        G = realize_knot(f)
    elif mu == "2":
        try:
            lam = int(fields.get("lambda", ""))
        except ValueError:
            raise GaussCodeError("link target needs an integer 'lambda:' line") \
                from None
        a = _parse_pairs(fields.get("a", ""), "a")
        b = _parse_pairs(fields.get("b", ""), "b")
        if lam == 0:
            c = _parse_pairs(fields.get("c", ""), "c")
            d = _parse_pairs(fields.get("d", ""), "d")
        else:
            cv = _parse_vector(fields.get("c", ""), "c")
            dv = _parse_vector(fields.get("d", ""), "d")
            c = {m: v for m, v in enumerate(cv)}
            d = {m: v for m, v in enumerate(dv)}
        ss = fields.get("shell_sum")
        target_ss = int(ss) if ss else None
        G = realize_link(lam, a, b, c, d, target_ss)
    else:
        raise GaussCodeError("target block needs 'mu: 1' or 'mu: 2'")
    print(serialize(G), end="", file=out)
    return 0


def _cmd_fuzz(args, out) -> int:
    G = _load(args.file)
    before = profile(G)
    H, trace = random_walk(G, args.steps, args.seed, args.cap)
    if profile(H) != before:
        print(f"invariant violation after {len(trace)} moves (seed {args.seed})",
              file=out)
        for site in trace:
            print(site_to_text(site), file=out)
        return INVARIANT_VIOLATION
    print(f"ok: profile preserved over {len(trace)} moves (seed {args.seed})",
          file=out)
    return 0


def _cmd_witness(args, out) -> int:
    A, B = _load(args.a), _load(args.b)
    try:
        trace = bfs_witness(A, B, args.depth, args.cap, args.budget)
    except BudgetExceeded:
        print("none within bounds (budget exhausted)", file=out)
        return 1
    if trace is None:
        print("none within bounds", file=out)
        return 1
    for site in trace:
        print(site_to_text(site), file=out)
    return 0


def _cmd_replay(args, out) -> int:
    G = _load(args.file)
    for lineno, raw in enumerate(_read(args.trace).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            site = site_from_text(line)
            G = apply_move(G, site)
        except (ValueError, StaleSite) as e:
            raise GaussCodeError(f"trace line {lineno}: {e}") from None
    print(serialize(G), end="", file=out)
    return 0


def _cmd_fmt(args, out) -> int:
    print(serialize(_load(args.file)), end="", file=out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="shellmoves",
        description="Gauss-diagram invariants, shell moves and normal forms")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="print the invariant profile")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_cmd_invariants)

    p = sub.add_parser("normalize", help="canonical snail form + rebuilt code")
    p.add_argument("file")
    p.set_defaults(run=_cmd_normalize)

    p = sub.add_parser("equiv", help="decide shell-move equivalence")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(run=_cmd_equiv)

    p = sub.add_parser("realize", help="build a diagram hitting target invariants")
    p.add_argument("--spec", required=True, dest="spec",
                   help="target block file")
    p.set_defaults(run=_cmd_realize)

    p = sub.add_parser("fuzz", help="random walk; assert profile preservation")
    p.add_argument("file")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.set_defaults(run=_cmd_fuzz)

    p = sub.add_parser("witness", help="bounded search for a move sequence")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--cap", type=int, default=8)
    p.add_argument("--budget", type=int, default=20000)
    p.set_defaults(run=_cmd_witness)

    p = sub.add_parser("replay", help="re-apply a recorded move trace")
    p.add_argument("file")
    p.add_argument("trace")
    p.set_defaults(run=_cmd_replay)

    p = sub.add_parser("fmt", help="canonicalize Gauss-code whitespace")
    p.add_argument("file")
    p.set_defaults(run=_cmd_fmt)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else USAGE_ERROR
    try:
        return args.run(args, out)
    except GaussCodeError as e:
        print(f"error: {e}", file=sys.stderr)
        return DATA_ERROR
    except (NotRealizable, ConstraintViolated, NegativeLambda) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ComponentCountMismatch, WrongComponentCount,
            UnsupportedComponentCount, ShellmovesError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
