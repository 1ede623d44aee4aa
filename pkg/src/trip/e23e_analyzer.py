"""(e,23,e) languages through pairs of Gauss substitutions: antecedents,
extension images and the empirical 3n bound."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import T
from .language_analysis import (
    ExtensionDiagram,
    LanguageSample,
    enumerate_bispecial,
    expand_language_sample,
    extension_diagram,
    word_profile,
)
from .substitutions import CodingSeq, Substitution, expansion_images, gauss_substitution, random_gauss_coding

E23E = T("(e,23,e)")


@lru_cache(maxsize=None)
def sigma(j: int, k: int) -> Substitution:
    """G_j o G_k: 1 -> 1^(j+1) 3, 2 -> 2^(k+1) 1^j 3, 3 -> 2^k 1^j 3."""
    return gauss_substitution(E23E, j) * gauss_substitution(E23E, k)


def _pairs(coding) -> tuple[tuple[tuple[int, int], ...], bool]:
    """(pairs, dropped) from a double or Gauss coding or a list of pairs."""
    if isinstance(coding, CodingSeq):
        if coding.kind == "double":
            return coding.entries, False
        if coding.kind == "gauss":
            seq, dropped = coding.pairs()
            return seq.entries, dropped
        raise ValueError("a Gauss or double-Gauss coding is required")
    return tuple((int(j), int(k)) for j, k in coding), False


@dataclass(frozen=True)
class DoubleGaussAntecedent:
    a: str
    v: str
    b: str
    j0: int
    k0: int

    def reconstruct(self) -> str:
        return self.a + sigma(self.j0, self.k0)(self.v) + self.b


def _a_forms(j0: int, k0: int) -> set[str]:
    return {"1" * p + "3" for p in range(j0 + 2)} | {"2" * p + "1" * j0 + "3" for p in range(1, k0 + 2)}


def _b_forms(j0: int, k0: int) -> set[str]:
    out = {"1" * p for p in range(j0 + 2)} | {"2" * p for p in range(1, k0 + 2)}
    out |= {"2" * k0 + "1" * p for p in range(1, j0 + 1)}
    out |= {"2" * (k0 + 1) + "1" * p for p in range(1, j0 + 1)}
    return out


def double_gauss_antecedent(w: str, j0: int, k0: int) -> DoubleGaussAntecedent:
    """a runs through the first 3, b follows the last 3, the middle de-substitutes."""
    first, last = w.find("3"), w.rfind("3")
    if first < 0:
        raise ValueError(f"{w!r} has no 3; its antecedent is undefined")
    a, mid, b = w[: first + 1], w[first + 1 : last + 1], w[last + 1 :]
    if a not in _a_forms(j0, k0):
        raise ValueError(f"{w!r}: prefix {a!r} is not a suffix of an image, not a factor")
    if b not in _b_forms(j0, k0):
        raise ValueError(f"{w!r}: suffix {b!r} is not a proper prefix of an image, not a factor")
    s = sigma(j0, k0)
    decode = {s.image(c): c for c in "123"}
    v, cur = [], ""
    for c in mid:
        cur += c
        if c == "3":
            if cur not in decode:
                raise ValueError(f"{w!r}: block {cur!r} is not an image of a letter, not a factor")
            v.append(decode[cur])
            cur = ""
    return DoubleGaussAntecedent(a, "".join(v), b, j0, k0)


# ------------------------------------------------------------- alpha tables

def alpha_left(a: str, j0: int, k0: int) -> dict[str, str]:
    if a == "1" * j0 + "3":
        return {"1": "1", "2": "2", "3": "3" if k0 == 0 else "2"}
    if k0 >= 1 and a == "2" * k0 + "1" * j0 + "3":
        return {"1": "", "2": "2", "3": "3"}
    raise ValueError(f"a must be 1^{j0}3 or 2^{k0}1^{j0}3, got {a!r}")


def alpha_right(b: str, j0: int, k0: int) -> dict[str, str]:
    if b == "":
        if k0 >= 1:
            return {"1": "1", "2": "2", "3": "2"}
        return {"1": "1", "2": "2", "3": "3" if j0 == 0 else "1"}
    if k0 >= 1 and b == "2" * k0:
        return {"1": "", "2": "2", "3": "3" if j0 == 0 else "1"}
    if j0 >= 1 and k0 == 0 and b == "1" * j0:
        return {"1": "1", "2": "", "3": "3"}
    raise ValueError(f"b must be empty, 1^{j0} or 2^{k0} (as allowed), got {b!r}")


def e23e_extension_image(Ev: ExtensionDiagram, a: str, b: str, j0: int, k0: int) -> ExtensionDiagram:
    al, ar = alpha_left(a, j0, k0), alpha_right(b, j0, k0)
    w = a + sigma(j0, k0)(Ev.word) + b
    return ExtensionDiagram(w, frozenset((al[c], ar[d]) for c, d in Ev.cells if al[c] and ar[d]))


def allowed_ab(j0: int, k0: int) -> list[tuple[str, str]]:
    """Every (a, b) the alpha tables accept."""
    a_opts = ["1" * j0 + "3"] + (["2" * k0 + "1" * j0 + "3"] if k0 >= 1 else [])
    b_opts = [""] + (["2" * k0] if k0 >= 1 else []) + (["1" * j0] if j0 >= 1 and k0 == 0 else [])
    return [(a, b) for a in a_opts for b in b_opts]


# ------------------------------------------------------------- experiments

@dataclass
class E23eReport:
    pairs: tuple
    n_max: int
    window: int
    profile: list[int]
    dropped_entry: bool
    multi_image_cases: list[dict] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, list] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs], "n_max": self.n_max, "window": self.window,
                "dropped_entry": self.dropped_entry,
                "complexity": [{"n": n, "p": p} for n, p in enumerate(self.profile)],
                "multi_image_cases": self.multi_image_cases,
                "checks": dict(self.checks), "witnesses": self.witnesses, "ok": self.ok}


def extended_image_census(L: LanguageSample, L1: LanguageSample, j0: int, k0: int, len_max: int):
    """For bispecial v of L1: the bispecial extended images in L and whether the tables predict them.

    Returns (cases with two or more images, mismatches between predicted and brute-force diagrams)."""
    cases, mismatches = [], []
    limit = L.reliable_window - 2
    for v, dv, _ in enumerate_bispecial(L1, min(len_max, L1.reliable_window - 2)):
        images = []
        for a, b in allowed_ab(j0, k0):
            pred = e23e_extension_image(dv, a, b, j0, k0)
            w = pred.word
            if len(w) > limit or w not in L:
                continue
            real = extension_diagram(L, w)
            if real != pred:
                mismatches.append({"v": v, "w": w, "a": a, "b": b})
            if real.is_bispecial:
                images.append(w)
        if len(images) >= 2:
            cases.append({"v": v, "left": len(dv.left), "right": len(dv.right), "images": images,
                          "j0": j0, "k0": k0})
    return cases, mismatches


def e23e_bound_check(coding, n_max: int = 200, census_len: int = 0, period: int | None = None) -> E23eReport:
    """p(n) <= 3n and p(n) - p(n-1) <= 3 for 2 <= n <= n_max; ``period`` repeats the last pairs."""
    pairs, dropped = _pairs(coding)
    seq = CodingSeq.double(pairs)
    L = expand_language_sample(seq, E23E, max_factor_len=n_max, period=period)
    if L.reliable_window < n_max:
        raise ValueError(f"reliable window {L.reliable_window} too small for n_max={n_max}; lengthen the coding")
    p = L.profile[: n_max + 1]
    rep = E23eReport(pairs, n_max, L.reliable_window, p, dropped)
    bad = [(n, p[n], p[n] - p[n - 1]) for n in range(2, n_max + 1) if p[n] > 3 * n or p[n] - p[n - 1] > 3]
    rep.checks["bound"] = not bad
    rep.witnesses["bound"] = [{"n": n, "p": pn, "delta": d, "factors": sorted(L.factors(n))[:20]}
                              for n, pn, d in bad[:3]]
    if census_len:
        L1 = expand_language_sample(seq.shift(1), E23E, max_factor_len=census_len + 2,
                                    period=None if period is None else min(period, len(pairs) - 1) or None)
        j0, k0 = pairs[0]
        cases, mismatches = extended_image_census(L, L1, j0, k0, census_len)
        rep.multi_image_cases = cases
        rep.checks["extension_tables"] = not mismatches
        rep.witnesses["extension_tables"] = mismatches[:5]
    return rep


def random_pairs(length: int, rng: random.Random, cap: int = 8) -> tuple[tuple[int, int], ...]:
    ks = random_gauss_coding(2 * length, rng, cap).entries
    return tuple(zip(ks[0::2], ks[1::2]))


def build_word(pairs, min_len: int) -> str:
    """sigma_0 o ... o sigma_m (1) for the first m that reaches min_len."""
    seq = CodingSeq.double(pairs)
    subs = seq.substitutions(E23E)
    for depth in range(1, len(subs) + 1):
        w = expansion_images(seq, E23E, depth, subs=subs)[0]
        if len(w) >= min_len:
            return w
    raise ValueError("coding too short to reach the requested word length")


@dataclass
class WordExperiment:
    words: int
    min_len: int
    n_max: int
    seed: int
    violations: list[dict]
    max_ratio: float

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"words": self.words, "min_len": self.min_len, "n_max": self.n_max, "seed": self.seed,
                "violations": self.violations, "max_p_over_n": self.max_ratio, "ok": self.ok}


def word_experiment(num_words: int = 100, min_len: int = 5000, n_max: int = 200, seed: int = 0) -> WordExperiment:
    """Random double-Gauss words: p_w(n) <= 3n and p_w(n) - p_w(n-1) <= 3 for 2 <= n <= n_max."""
    rng = random.Random(seed)
    violations, ratio = [], 0.0
    for i in range(num_words):
        pairs = random_pairs(64, rng)
        w = build_word(pairs, min_len)
        p = word_profile(w, n_max)
        for n in range(2, n_max + 1):
            ratio = max(ratio, p[n] / n)
            if p[n] > 3 * n or p[n] - p[n - 1] > 3:
                violations.append({"word": i, "pairs": [list(x) for x in pairs[:8]], "n": n, "p": p[n]})
                break
    return WordExperiment(num_words, min_len, n_max, seed, violations, ratio)
