"""Command-line front end: build, verify, tabulate and dump.

Every subcommand emits a report {meta, results, pass}.  Exit status is 0
when all checks pass, 1 when a check fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import pickle
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .lie import SliceData, build_all, c0_constant
from .rootsys import build_root_system

CACHE_ENV = "MINWALG_CACHE_DIR"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parsing

def parse_rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rationals from {text!r}") from exc


def parse_range(text: str) -> list[int]:
    """'0..2' -> [0, 1, 2]; '3' -> [3]; '0,2' -> [0, 2]."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}") from exc


def to_jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k if isinstance(k, str) else _key(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "details") and hasattr(x, "passed"):
        return {"passed": x.passed, "details": to_jsonable(x.details)}
    return x


def _key(k) -> str:
    if isinstance(k, tuple):
        return "(" + ",".join(_key(v) for v in k) + ")"
    return str(k)


# ---------------------------------------------------------------- building

def load_slice(type_letter: str, rank: int, cache_dir: str | None) -> SliceData:
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    if not cache_dir:
        return build_all(type_letter, rank)
    path = Path(cache_dir) / f"{type_letter}{rank}-v{__version__}.pkl"
    if path.exists():
        with path.open("rb") as fh:
            return pickle.load(fh)
    sd = build_all(type_letter, rank)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with tmp.open("wb") as fh:
        pickle.dump(sd, fh)
    tmp.replace(path)
    return sd


def _presentation(sd):
    from .walg import build_presentation

    return build_presentation(sd)


def _oracle(sd):
    from .ug import build_oracle

    return build_oracle(sd)


def _lam_c(args, sd) -> tuple[list, Fraction]:
    from .repn import highest_weight_for

    if args.mu is not None:
        mu = parse_rationals(args.mu)
        if len(mu) != sd.rs.rank:
            raise UsageError(f"--mu needs {sd.rs.rank} entries")
        return highest_weight_for(sd, mu, args.sign)
    if args.lam is None or args.c is None:
        raise UsageError("give either --mu or both --lambda and --c")
    lam = parse_rationals(args.lam)
    if len(lam) != len(sd.hes):
        raise UsageError(f"--lambda needs {len(sd.hes)} values (one per h_e basis vector)")
    return lam, Fraction(args.c)


# ---------------------------------------------------------------- subcommands

def cmd_dump_structure(args, sd):
    rs = sd.rs
    la = sd.parent
    e, h, f = sd.e, sd.h, sd.f
    triple_ok = (sd.bracket(e, f) == {h: 1} and sd.bracket(h, e) == {e: 2} and sd.bracket(h, f) == {f: -2})
    res = {
        "type": rs.name,
        "dim": sd.dim,
        "positive_roots": [list(a) for a in rs.positive_roots],
        "beta": list(rs.beta),
        "cartan_matrix": rs.cartan_matrix,
        "s": sd.s,
        "basis": [{"label": sd.labels[a], "grading": sd.degree(a), "kazhdan": sd.kdeg(a)} for a in range(sd.dim)],
        "z_chi0": [sd.labels[a] for a in sd.zchi0],
        "z_chi1": [sd.labels[a] for a in sd.zchi1],
        "gammas": [list(g) for g in sd.gammas],
        "triple_ok": triple_ok,
    }
    if args.full:
        res["brackets"] = {
            f"[{sd.labels[a]},{sd.labels[b]}]": {sd.labels[k]: v for k, v in sd.bracket(a, b).items()}
            for a in range(sd.dim) for b in range(a + 1, sd.dim) if sd.bracket(a, b)
        }
        res["chevalley_dim"] = la.dim
    return res, triple_ok


def cmd_verify_relations(args, sd):
    from .walg import verify_presentation

    pd = _presentation(sd)
    rep = verify_presentation(pd, _oracle(sd), max_deg=args.max_degree, samples=args.samples, seed=args.seed)
    res = {"generators": pd.labels, "report": rep}
    if pd.n1 == 0:
        res["note"] = "no odd generators: H is the polynomial algebra on Theta(z_chi(0)) and C"
    return res, bool(rep)


def cmd_oracle_check(args, sd):
    from .ug import standard_theta_basis
    from .linalg import Echelon

    o = _oracle(sd)
    non_invariant = [sd.labels[a] for a in sd.zchi0 + sd.zchi1 if not o.is_invariant(o.theta(a).rep)]
    cas = o.casimir_image()
    cas_ok = o.is_invariant(cas) and cas == o.casimir_closed_form()
    tb = standard_theta_basis(o)
    monos = tb.monomials(args.max_degree)
    ech = Echelon()
    for m in monos:
        ech.add(tb.image(m))
    res = {
        "thetas": len(sd.zchi0) + len(sd.zchi1),
        "non_invariant": non_invariant,
        "casimir_matches_closed_form": cas_ok,
        "pbw_monomials": len(monos),
        "pbw_rank": len(ech),
    }
    return res, not non_invariant and cas_ok and len(ech) == len(monos)


def cmd_c0(args, sd):
    table = c0_constant(sd)
    res = {"c0_table": table}
    ok = True
    if not args.table_only:
        pd = _presentation(sd)
        if pd.n1:
            from .walg import solve_c0

            solved = solve_c0(pd, _oracle(sd))
            res["c0_solved"] = solved
            ok = solved == table
    return res, ok


def cmd_abelianize(args, sd):
    from .walg import abelianization

    ab = abelianization(_presentation(sd))
    return ab, True


def _verma_report(sq):
    vm = sq.vm
    top = vm.top_h0_weight()
    return {
        "lambda": vm.lam,
        "c": vm.c,
        "weights": [top - k for k in range(len(sq.dims))],
        "verma_dims": sq.verma_dims,
        "dims": sq.dims,
        "stabilized": sq.stabilized,
        "dim": sq.dim,
        "primitive_vectors": sq.primitive_counts,
    }


def cmd_verma(args, sd):
    from .repn import simple_quotient

    lam, c = _lam_c(args, sd)
    sq = simple_quotient(_presentation(sd), lam, c, args.depth)
    return _verma_report(sq), True


def cmd_simple_dim(args, sd):
    from .repn import dim_formula, simple_quotient

    lam, c = _lam_c(args, sd)
    expected = None
    depth = args.depth
    if args.mu is not None and sd.rs.type_letter in "CG":
        expected = dim_formula(sd.rs, parse_rationals(args.mu), args.sign)
        if args.depth_given is None:
            depth = max(int(expected) + 4, 10)
    sq = simple_quotient(_presentation(sd), lam, c, depth)
    res = _verma_report(sq)
    res["expected"] = expected
    ok = sq.stabilized and (expected is None or sq.dim == expected)
    return res, ok


def cmd_dims_table(args, sd):
    from itertools import product

    from .repn import dim_formula, highest_weight_for, simple_quotient

    rs = sd.rs
    if rs.type_letter not in "CG":
        raise UsageError("dims-table supports types C and G")
    ranges = [parse_rationals(",".join(map(str, parse_range(args.a))))]
    if rs.rank >= 2:
        ranges.append([Fraction(x) for x in parse_range(args.b)])
    signs = [1, -1] if (rs.type_letter == "G" and args.both_signs) else [args.sign]
    pd = _presentation(sd) if args.verify else None
    rows, ok = [], True
    for sign in signs:
        for coords in product(*ranges):
            mu = list(coords) + [Fraction(0)] * (rs.rank - len(coords))
            d = dim_formula(rs, mu, sign)
            row = {"mu": mu, "sign": sign, "dim": d}
            if pd is not None:
                lam, c = highest_weight_for(sd, mu, sign)
                sq = simple_quotient(pd, lam, c, max(int(d) + 4, args.depth))
                row["computed"] = sq.dim
                ok = ok and sq.dim == d
            rows.append(row)
    return {"rows": rows}, ok


def cmd_whittaker_check(args, sd):
    from .repn import whittaker_check

    lam, c = _lam_c(args, sd)
    rep = whittaker_check(sd, _oracle(sd), lam, c)
    return rep, rep["pass"]


def cmd_contraction_check(args, sd):
    from .ug import contraction_check

    rep = contraction_check(_oracle(sd))
    return rep, rep["pass"]


COMMANDS = {
    "dump-structure": (cmd_dump_structure, "root system, grading and working basis"),
    "verify-relations": (cmd_verify_relations, "check the presentation against the enveloping-algebra oracle"),
    "oracle-check": (cmd_oracle_check, "invariance of every Theta, Casimir image, PBW independence"),
    "c0": (cmd_c0, "the constant of the quadratic relation"),
    "abelianize": (cmd_abelianize, "relations of the commutative quotient"),
    "verma": (cmd_verma, "Verma module and simple quotient dimensions by depth"),
    "simple-dim": (cmd_simple_dim, "dimension of the simple highest-weight quotient"),
    "dims-table": (cmd_dims_table, "dimension formula over a grid of dominant weights"),
    "whittaker-check": (cmd_whittaker_check, "highest-weight identities of the induced module"),
    "contraction-check": (cmd_contraction_check, "commutators of Theta generators vs. the bracket of z_chi"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minwalg", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--type", required=True, help="Cartan type letter A-G")
        s.add_argument("--rank", required=True, type=int)
        s.add_argument("--max-degree", type=int, default=6)
        s.add_argument("--depth", type=int, default=None)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--samples", type=int, default=20)
        s.add_argument("--json", action="store_true", help="shorthand for --output json")
        s.add_argument("--output", choices=["human", "json", "csv"], default="human")
        s.add_argument("--out-file", default=None, help="write the report here instead of stdout")
        s.add_argument("--cache-dir", default=None, help=f"pickle cache for structure data (or ${CACHE_ENV})")
        s.add_argument("--lambda", dest="lam", default=None, help="values on the h_e basis, comma separated")
        s.add_argument("--c", default=None, help="eigenvalue of C")
        s.add_argument("--mu", default=None, help="dominant weight in fundamental coordinates")
        s.add_argument("--sign", type=int, choices=[1, -1], default=1, help="G2 family")
        s.add_argument("--a", default="0..2", help="range for the first coordinate of mu")
        s.add_argument("--b", default="0..2", help="range for the second coordinate of mu")
        s.add_argument("--both-signs", action="store_true")
        s.add_argument("--verify", action="store_true", help="dims-table: also compute via Verma modules")
        s.add_argument("--table-only", action="store_true", help="c0: skip the oracle solve")
        s.add_argument("--full", action="store_true", help="dump-structure: include brackets")
    return p


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_jsonable(report), indent=2, sort_keys=False)
    results = to_jsonable(report["results"])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        rows = results.get("rows") if isinstance(results, dict) else None
        if rows:
            keys = list(rows[0])
            w.writerow(keys)
            for r in rows:
                w.writerow([json.dumps(r[k]) if isinstance(r[k], (list, dict)) else r[k] for k in keys])
        else:
            w.writerow(["key", "value"])
            for k, v in results.items():
                w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
        return buf.getvalue()
    meta = report["meta"]
    lines = [f"{meta['command']} {meta['type']}{meta['rank']}: {'PASS' if report['pass'] else 'FAIL'}"]
    for k, v in results.items():
        text = json.dumps(v) if isinstance(v, (list, dict)) else str(v)
        if len(text) > 200:
            text = text[:197] + "..."
        lines.append(f"  {k}: {text}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = "json" if args.json else args.output
    args.depth_given = args.depth
    if args.depth is None:
        args.depth = 10
    try:
        if args.max_degree < 4:
            raise UsageError("--max-degree must be at least 4")
        try:
            build_root_system(args.type.upper(), args.rank)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        sd = load_slice(args.type.upper(), args.rank, args.cache_dir)
        func = COMMANDS[args.command][0]
        results, ok = func(args, sd)
    except UsageError as exc:
        print(f"minwalg: error: {exc}", file=sys.stderr)
        return 2
    report = {
        "meta": {
            "command": args.command,
            "type": args.type.upper(),
            "rank": args.rank,
            "version": __version__,
            "seed": args.seed,
        },
        "results": results,
        "pass": bool(ok),
    }
    text = _render(report, fmt)
    if args.out_file:
        Path(args.out_file).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
