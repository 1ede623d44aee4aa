"""``trip``: command-line front end.

Every report is JSON on stdout (or ``--out``) and carries the full run
configuration under ``"config"``; rerunning with that configuration gives the
same bytes.  Exit status: 0 when every check passes, 1 on a failed check,
2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Callable

from . import __version__
from .algebra import TripTriple
from .e13e_analyzer import predict_and_verify
from .e23e_analyzer import e23e_bound_check, word_experiment
from .eee_certifier import certify_eee
from .equivalence import class_of, enumerate_classes
from .language_analysis import (
    WindowError,
    enumerate_bispecial,
    expand_language_sample,
    verify_difference_identities,
    word_profile,
)
from .render import render_e13e_regions_svg, render_gauss_fan_svg, render_partition_svg
from .reproduction import (
    VARIANTS,
    class_verdict_suite,
    class_violation,
    hidden_r2_experiment,
    reproduce_counterexample_tables,
    search_high_complexity,
)
from .substitutions import CodingSeq, expand
from .trip_dynamics import Point3, code_point, hidden_r2_orbit

GRAMMAR = {
    "map": 'a triple "(s,t0,t1)" of e, 12, 13, 23, 123, 132, e.g. "(e,13,e)"',
    "farey": "a string over 0/1, e.g. 0110",
    "gauss": "comma-separated non-negative integers, e.g. 0,2,1,0,3",
    "point": "three non-negative rationals summing to 1, e.g. 1/6,1/3,1/2",
}
CLASS_KIND = {"3n class": "eee", "2n+1 class": "cassaigne", "degenerate": "degenerate"}


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- parsing

def _parse(kind: str, text: str, fn: Callable):
    try:
        return fn(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --{kind} {text!r}: {exc}; expected {GRAMMAR[kind]}") from None


def parse_map(text: str) -> TripTriple:
    return _parse("map", text, TripTriple.parse)


def parse_gauss(text: str) -> CodingSeq:
    def go(s: str) -> CodingSeq:
        parts = [p for p in s.replace(" ", "").replace("…", "").replace("...", "").split(",") if p]
        if not parts:
            raise ValueError("empty coding")
        return CodingSeq.gauss([int(p) for p in parts])
    return _parse("gauss", text, go)


def parse_farey(text: str) -> CodingSeq:
    return _parse("farey", text, lambda s: CodingSeq.farey(s.strip()))


def _coding(args) -> CodingSeq:
    if args.farey and args.gauss:
        raise UsageError("give --farey or --gauss, not both")
    if args.farey:
        return parse_farey(args.farey)
    if args.gauss:
        return parse_gauss(args.gauss)
    raise UsageError("a coding is required: --farey BITS or --gauss k0,k1,...")


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TRIP_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"TRIP_SEED must be an integer, got {env!r}") from None


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    cfg["seed"] = _seed(args)
    cfg["version"] = __version__
    return cfg


# ---------------------------------------------------------------- commands
# each returns (report dict, ok, csv rows or None, svg text or None)

def cmd_code_point(args):
    t = parse_map(args.map)
    p = _parse("point", args.point, Point3.parse)
    f, g = code_point(p, t, args.steps)
    rep = {"map": str(t), "point": [str(c) for c in p.coords()], "steps": args.steps,
           "farey": "".join(map(str, f.symbols)), "gauss": g.ks, "gauss_truncated": g.truncated}
    return rep, True, None, None


def cmd_word(args):
    t, seq = parse_map(args.map), _coding(args)
    w = expand(seq, t, args.letter, args.variant)
    rep = {"map": str(t), "coding": seq.to_json(), "letter": args.letter, "length": len(w),
           "word": w if len(w) <= args.max_print else w[: args.max_print] + "..."}
    return rep, True, None, None


def cmd_complexity(args):
    t, seq = parse_map(args.map), _coding(args)
    if args.finite:
        w = expand(seq, t, "1", args.variant)
        p = word_profile(w, min(args.n_max, len(w)))
        rep = {"map": str(t), "coding": seq.to_json(), "source": "finite word", "word_length": len(w)}
    else:
        L = expand_language_sample(seq, t, args.variant, max_factor_len=args.n_max + 2, period=args.period)
        p = L.profile[: min(args.n_max, L.reliable_window) + 1]
        rep = {"map": str(t), "coding": seq.to_json(), "source": "language sample",
               "window": L.reliable_window}
        if args.identities:
            ident = verify_difference_identities(L, min(args.n_max, L.reliable_window - 2))
            rep["identities"] = {"ok": ident.ok, "failures": ident.failures[:5]}
    rep["complexity"] = [{"n": n, "p": v} for n, v in enumerate(p)]
    ok = rep.get("identities", {}).get("ok", True)
    rows = [["n", "p"]] + [[n, v] for n, v in enumerate(p)]
    return rep, ok, rows, None


def cmd_bispecial(args):
    t, seq = parse_map(args.map), _coding(args)
    L = expand_language_sample(seq, t, args.variant, max_factor_len=args.n_max + 2, period=args.period)
    top = min(args.n_max, L.reliable_window - 2)
    found = enumerate_bispecial(L, top)
    rep = {"map": str(t), "coding": seq.to_json(), "window": L.reliable_window, "len_max": top,
           "bispecial": [{"word": w, "length": len(w), "multiplicity": m, "diagram": d.to_json()["rows"]}
                         for w, d, m in found]}
    rows = [["word", "length", "multiplicity"]] + [[w, len(w), m] for w, _, m in found]
    return rep, True, rows, None


def cmd_certify(args):
    t, seq = parse_map(args.map), _coding(args)
    verdict = class_of(t).verdict
    if str(t) == "(e,e,e)":
        if seq.kind != "gauss":
            raise UsageError("certify (e,e,e) takes --gauss")
        rep = certify_eee(seq, args.n_max)
        return rep.to_json() | {"map": str(t), "verdict": verdict}, rep.ok, None, None
    kind = CLASS_KIND.get(verdict)
    if kind is None:
        raise UsageError(f"{t} lies in the {verdict!r} class; certify handles the 3n, 2n+1 "
                         "and degenerate classes (see analyze-e13e and check-e23e)")
    L = expand_language_sample(seq, t, args.variant, max_factor_len=args.n_max + 2, period=args.period)
    if L.reliable_window < args.n_max:
        raise WindowError(f"reliable window {L.reliable_window} < n_max {args.n_max}; lengthen the coding")
    bad = class_violation(L, kind, args.n_max)
    rep = {"map": str(t), "verdict": verdict, "coding": seq.to_json(), "window": L.reliable_window,
           "complexity": [{"n": n, "p": v} for n, v in enumerate(L.profile[: args.n_max + 1])],
           "violation": bad, "ok": bad is None}
    return rep, bad is None, None, None


def cmd_analyze_e13e(args):
    seq = parse_gauss(args.gauss) if args.gauss else None
    if seq is None:
        raise UsageError("analyze-e13e takes --gauss")
    L = expand_language_sample(seq, parse_map("(e,13,e)"), max_factor_len=args.n_max + 2, period=args.period)
    rep = predict_and_verify(seq, args.n_max, sample=L)
    return rep.to_json() | {"period": args.period}, rep.ok, None, None


def cmd_check_e23e(args):
    if args.gauss:
        rep = e23e_bound_check(parse_gauss(args.gauss), args.n_max, census_len=args.census,
                               period=args.period)
        return rep.to_json(), rep.ok, None, None
    exp = word_experiment(args.trials, args.min_len, args.n_max, _seed(args))
    return exp.to_json(), exp.ok, None, None


def cmd_classes(args):
    if args.verify:
        rep = class_verdict_suite(args.n_max, args.trials, _seed(args), args.jobs)
        return rep.to_json(), rep.ok, None, None
    classes = enumerate_classes()
    rep = {"count": len(classes), "total_maps": sum(c.size for c in classes),
           "classes": [c.to_json() for c in classes]}
    rows = [["representative", "size", "starred", "verdict"]] + [
        [str(c.representative), c.size, c.starred, c.verdict] for c in classes]
    return rep, True, rows, None


def cmd_reproduce_tables(args):
    variants = [args.variant] if args.variant else list(VARIANTS)
    reps = [reproduce_counterexample_tables(v) for v in variants]
    rows = reps[0].to_csv_rows()[:1] + [r for rep in reps for r in rep.to_csv_rows()[1:]]
    out = {"tables": [r.to_json() for r in reps]}
    return out, all(r.ok for r in reps), rows, None


def cmd_search(args):
    t = parse_map(args.map)
    hit = search_high_complexity(t, args.variant, args.max_bits, args.budget)
    rep = {"map": str(t), "variant": args.variant, "max_bits": args.max_bits, "budget": args.budget,
           "witness": None if hit is None else {"bits": hit[0], "n": hit[1], "p": hit[2]}}
    return rep, True, None, None


def cmd_hidden_r2(args):
    if args.point:
        try:
            x, y, z = (int(v) for v in args.point.split(","))
        except ValueError:
            raise UsageError(f"bad --point {args.point!r}; expected three positive integers x,y,z") from None
        outcome, steps = hidden_r2_orbit(x, y, z, args.max_steps)
        return {"point": [x, y, z], "outcome": outcome, "steps": steps}, True, None, None
    stats = hidden_r2_experiment(args.trials, args.sum_bound, _seed(args), args.max_steps)
    rep = stats.to_json() | {"threshold": args.threshold}
    ok = stats.fraction("ReachedYgtZ") >= args.threshold
    rows = [["steps", "count"]] + [[int(k), v] for k, v in stats.histogram.items()]
    return rep, ok, rows, None


def cmd_render(args):
    if args.kind == "e13e-regions":
        svg = render_e13e_regions_svg()
    else:
        t = parse_map(args.map)
        if args.kind == "gauss-fan":
            svg = render_gauss_fan_svg(t, args.depth)
        else:
            if args.depth > 12:
                raise UsageError("--depth must be at most 12")
            svg = render_partition_svg(t, args.depth)
    return {"kind": args.kind, "bytes": len(svg)}, True, None, svg


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trip", description="TRIP maps, their S-adic languages and complexity checks.")
    ap.add_argument("--version", action="version", version=f"trip {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str, *, coding=False, map_=False, nmax=None, variant=False, period=False):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        if map_:
            p.add_argument("--map", default="(e,e,e)", help=GRAMMAR["map"])
        if variant:
            p.add_argument("--variant", choices=VARIANTS, default="canonical13")
        if coding:
            p.add_argument("--farey", help=GRAMMAR["farey"])
            p.add_argument("--gauss", help=GRAMMAR["gauss"])
        if period:
            p.add_argument("--period", type=int, default=None,
                           help="repeat the last P coding entries forever")
        if nmax is not None:
            p.add_argument("--n-max", type=int, default=nmax)
        p.add_argument("--seed", type=int, default=None, help="master seed (fallback: $TRIP_SEED, then 0)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--csv", action="store_true", help="CSV instead of JSON where supported")
        return p

    p = add("code-point", cmd_code_point, "Farey and Gauss codings of a point", map_=True)
    p.add_argument("--point", required=True, help=GRAMMAR["point"])
    p.add_argument("--steps", type=int, default=20)

    p = add("word", cmd_word, "expand a letter under a coding", map_=True, coding=True, variant=True)
    p.add_argument("--letter", choices=("1", "2", "3"), default="1")
    p.add_argument("--max-print", type=int, default=10_000)

    p = add("complexity", cmd_complexity, "complexity profile", map_=True, coding=True, variant=True,
            nmax=50, period=True)
    p.add_argument("--finite", action="store_true", help="profile of the finite word expanded from 1")
    p.add_argument("--identities", action="store_true", help="also check the difference identities")

    add("bispecial", cmd_bispecial, "bispecial factors with extension diagrams", map_=True, coding=True,
        variant=True, nmax=20, period=True)
    add("certify", cmd_certify, "certify the class complexity of a coding", map_=True, coding=True,
        variant=True, nmax=150, period=True)
    p = add("analyze-e13e", cmd_analyze_e13e, "(e,13,e) right special chains and complexity form",
            nmax=100, period=True)
    p.add_argument("--gauss", help=GRAMMAR["gauss"])
    p = add("check-e23e", cmd_check_e23e, "(e,23,e) 3n bound on one coding or on random words",
            nmax=200, period=True)
    p.add_argument("--gauss", help=GRAMMAR["gauss"] + " (read as pairs)")
    p.add_argument("--census", type=int, default=0, help="compare extension tables up to this length")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--min-len", type=int, default=5000)
    p = add("classes", cmd_classes, "the 21 equivalence classes, optionally verified on samples", nmax=200)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p = add("reproduce-tables", cmd_reproduce_tables, "recompute the >3n counterexample tables")
    p.add_argument("--variant", choices=VARIANTS, default=None, help="default: both")
    p = add("search", cmd_search, "breadth-first search for p_w(n) > 3n", map_=True, variant=True)
    p.add_argument("--max-bits", type=int, default=11)
    p.add_argument("--budget", type=int, default=1 << 14)
    p = add("hidden-r2", cmd_hidden_r2, "hidden-R^2 orbit sampling")
    p.add_argument("--trials", type=int, default=100_000, help="number of sampled points")
    p.add_argument("--sum-bound", type=int, default=2**31)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--threshold", type=float, default=0.999)
    p.add_argument("--point", help="iterate one integer point x,y,z instead")
    p = add("render", cmd_render, "SVG drawing of a partition", map_=True)
    p.add_argument("--kind", choices=("partition", "gauss-fan", "e13e-regions"), default="partition")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--svg", action="store_true", help="emit the SVG (default for render)")
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _config(args)
        report, ok, rows, svg = args.func(args)
    except UsageError as exc:
        ap.error(str(exc))
    except (WindowError, ValueError) as exc:
        ap.exit(2, f"trip {args.command}: {exc}\n")
    if svg is not None:
        _emit(svg, args.out)
    elif args.csv and rows is not None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        _emit(buf.getvalue(), args.out)
    else:
        doc = {"config": cfg, "report": report, "ok": bool(ok)}
        _emit(json.dumps(doc, indent=2, default=str) + "\n", args.out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
