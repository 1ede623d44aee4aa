"""Golden tables, class verdicts, the hidden-R^2 sampling run and the >3n search.

Every experiment takes a master seed; trial ``i`` draws from its own
generator seeded by ``(seed, i)`` so results do not depend on ``--jobs``.
"""
from __future__ import annotations

import csv
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

import numpy as np

from . import kernels
from .algebra import T, TripTriple
from .language_analysis import expand_language_sample, word_complexity
from .substitutions import VARIANTS, CodingSeq, expand, random_farey_coding, random_gauss_coding
from .trip_dynamics import EXHAUSTED, HIT_ZERO, REACHED

OUTCOMES = (REACHED, HIT_ZERO, EXHAUSTED)
DEGENERATE = ("(e,12,e)", "(e,12,13)", "(e,132,e)")
CASSAIGNE = ("(e,23,23)", "(12,132,132)")
EEE_CLASS = ("(e,e,e)",)


# ------------------------------------------------------------------ trials

def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def parallel_map(fn: Callable, args: list, jobs: int = 1) -> list:
    """[fn(a) for a in args], across ``jobs`` processes when jobs > 1; order is kept."""
    if jobs <= 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, args, chunksize=max(1, len(args) // (4 * jobs))))


# ----------------------------------------------------------- golden tables

@dataclass(frozen=True)
class TableRow:
    triple: TripTriple
    farey_bits: str
    n: int
    p_expected: int

    def __post_init__(self):
        if set(self.farey_bits) - {"0", "1"}:
            raise ValueError(f"bits must be over 0/1, got {self.farey_bits!r}")
        if self.p_expected <= 3 * self.n:
            raise ValueError(f"row {self} is not a >3n witness")

    def word(self, variant: str) -> str:
        return expand(CodingSeq.farey(self.farey_bits), self.triple, "1", variant)


def load_table(variant: str) -> list[TableRow]:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    text = resources.files("trip").joinpath("data").joinpath(f"{variant}.csv").read_text()
    return [TableRow(T(r["triple"]), r["farey_bits"], int(r["n"]), int(r["p"]))
            for r in csv.DictReader(text.splitlines())]


@dataclass
class TableReport:
    variant: str
    rows: list[dict]

    @property
    def passed(self) -> int:
        return sum(r["ok"] for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.rows)

    def to_json(self) -> dict:
        return {"variant": self.variant, "passed": self.passed, "total": len(self.rows),
                "rows": self.rows, "ok": self.ok}

    def to_csv_rows(self) -> list[list]:
        return [["triple", "farey_bits", "n", "p_expected", "p_computed", "ok"]] + [
            [r["triple"], r["farey_bits"], r["n"], r["p_expected"], r["p_computed"], r["ok"]]
            for r in self.rows]


def reproduce_counterexample_tables(variant: str = "canonical13") -> TableReport:
    out = []
    for row in load_table(variant):
        w = row.word(variant)
        p = word_complexity(w, row.n)
        rec = {"triple": str(row.triple), "farey_bits": row.farey_bits, "n": row.n,
               "p_expected": row.p_expected, "p_computed": p, "ok": p == row.p_expected}
        if not rec["ok"]:
            rec["word"] = w
        out.append(rec)
    return TableReport(variant, out)


# ------------------------------------------------------------------- search

def _witness(w: str, n_cap: int) -> tuple[int, int] | None:
    for n in range(1, min(n_cap, len(w)) + 1):
        p = word_complexity(w, n)
        if p > 3 * n:
            return n, p
    return None


def search_high_complexity(t: TripTriple, variant: str = "canonical13", max_bits: int = 11,
                           budget: int = 1 << 14, n_cap: int = 12) -> tuple[str, int, int] | None:
    """First (bits, n, p) with p_w(n) > 3n, bit strings by length then lexicographically."""
    seen = 0
    for m in range(1, max_bits + 1):
        for tup in itertools.product("01", repeat=m):
            if seen >= budget:
                return None
            seen += 1
            bits = "".join(tup)
            hit = _witness(expand(CodingSeq.farey(bits), t, "1", variant), n_cap)
            if hit:
                return bits, hit[0], hit[1]
    return None


# ---------------------------------------------------------- class verdicts

CLASS_KINDS = ("degenerate", "cassaigne", "eee")


def class_violation(L, kind: str, n_max: int) -> dict | None:
    """First violation of the class profile on lengths 1..n_max, or None."""
    p = L.profile
    if kind == "degenerate":
        if p[1] != 3:
            return {"n": 1, "p": p[1]}
        for n in range(2, n_max + 1):
            if p[n] != n + 1:
                return {"n": n, "p": p[n]}
            two = [u for u in L.factors(n) if "2" in u]
            if two:
                return {"n": n, "factor_with_2": two[0]}
        return None
    # upper bound a*n + b over the common lower bound 2n+1
    if kind not in CLASS_KINDS:
        raise ValueError(f"kind must be one of {CLASS_KINDS}")
    a, b = (2, 1) if kind == "cassaigne" else (3, 0)
    return next(({"n": n, "p": p[n]} for n in range(1, n_max + 1)
                 if not 2 * n + 1 <= p[n] <= a * n + b), None)


def _class_trial(triple: str, kind: str, n_max: int, seed: int, index: int) -> dict:
    rng = trial_rng(seed, index)
    t = T(triple)
    if kind == "eee":
        seq = random_gauss_coding(60, rng)
    else:
        seq = random_farey_coding(400, rng)
    L = expand_language_sample(seq, t, max_factor_len=n_max + 2)
    rec = {"triple": triple, "trial": index, "window": L.reliable_window, "coding_head": list(seq.entries[:16])}
    if L.reliable_window < n_max:
        rec.update(ok=False, violation=f"window {L.reliable_window} < {n_max}")
        return rec
    bad = class_violation(L, kind, n_max)
    rec["ok"] = bad is None
    rec["p"] = {str(n): L.profile[n] for n in (1, 2, 5, 10, n_max)}
    if bad:
        rec["violation"] = bad
    return rec


def _class_job(args) -> dict:
    return _class_trial(*args)


@dataclass
class VerdictReport:
    n_max: int
    trials: int
    seed: int
    results: dict[str, list[dict]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r["ok"] for rs in self.results.values() for r in rs)

    def to_json(self) -> dict:
        return {"n_max": self.n_max, "trials": self.trials, "seed": self.seed,
                "classes": {t: {"passed": sum(r["ok"] for r in rs), "total": len(rs),
                                "violations": [r for r in rs if not r["ok"]][:5],
                                "sample": rs[0] if rs else None}
                            for t, rs in self.results.items()},
                "ok": self.ok}


def class_verdict_suite(n_max: int = 200, trials: int = 10, seed: int = 0, jobs: int = 1,
                        triples: dict[str, str] | None = None) -> VerdictReport:
    """Degenerate: p(1)=3, p(n)=n+1 and no 2 past length 1; Cassaigne: 2n+1; (e,e,e): [2n+1, 3n]."""
    if triples is None:
        triples = {t: "degenerate" for t in DEGENERATE}
        triples.update({t: "cassaigne" for t in CASSAIGNE})
        triples.update({t: "eee" for t in EEE_CLASS})
    rep = VerdictReport(n_max, trials, seed)
    jobs_list = [(t, kind, n_max, seed, i) for t, kind in triples.items() for i in range(trials)]
    for rec in parallel_map(_class_job, jobs_list, jobs):
        rep.results.setdefault(rec["triple"], []).append(rec)
    return rep


# ---------------------------------------------------------- hidden R^2 run

@dataclass
class HiddenR2Stats:
    num_points: int
    sum_bound: int
    seed: int
    max_steps: int
    counts: dict[str, int]
    histogram: dict[str, int]
    mean_steps: float
    max_observed: int

    def fraction(self, outcome: str) -> float:
        return self.counts[outcome] / self.num_points

    def to_json(self) -> dict:
        return {"num_points": self.num_points, "sum_bound": self.sum_bound, "seed": self.seed,
                "max_steps": self.max_steps, "counts": self.counts,
                "fractions": {k: self.fraction(k) for k in OUTCOMES},
                "step_histogram": self.histogram, "mean_steps": self.mean_steps,
                "max_steps_observed": self.max_observed}


def sample_points(num_points: int, sum_bound: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform positive integer triples with x + y + z <= sum_bound, by rejection."""
    out = np.empty((0, 3), dtype=np.int64)
    while out.shape[0] < num_points:
        need = num_points - out.shape[0]
        cand = rng.integers(1, sum_bound - 1, size=(max(64, 7 * need), 3), dtype=np.int64)
        cand = cand[cand.sum(axis=1) <= sum_bound]
        out = np.concatenate([out, cand[:need]])
    return out


def hidden_r2_experiment(num_points: int = 100_000, sum_bound: int = 2**31, seed: int = 0,
                         max_steps: int = 10_000) -> HiddenR2Stats:
    if sum_bound < 3 or sum_bound >= 2**62:
        raise ValueError("sum_bound must lie in [3, 2^62)")
    pts = sample_points(num_points, sum_bound, np.random.default_rng(seed))
    outcome, steps = kernels.hidden_r2_batch(pts[:, 0], pts[:, 1], pts[:, 2], max_steps)
    counts = {name: int(np.count_nonzero(outcome == code)) for code, name in enumerate(OUTCOMES)}
    values, freq = np.unique(steps[outcome == 0], return_counts=True)
    hist = {str(int(v)): int(f) for v, f in zip(values, freq)}
    mean = float(steps[outcome == 0].mean()) if counts[REACHED] else 0.0
    return HiddenR2Stats(num_points, sum_bound, seed, max_steps, counts, hist, mean,
                         int(steps.max()) if num_points else 0)
