"""Right special factors of (e,13,e) languages and their three complexity regimes."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import T
from .language_analysis import LanguageSample, expand_language_sample, special_factors
from .substitutions import CodingSeq, Substitution, gauss_substitution

E13E = T("(e,13,e)")


@lru_cache(maxsize=None)
def G(k: int) -> Substitution:
    """1 -> 1^(k+1) 3, 2 -> 1^k 3, 3 -> 2."""
    return gauss_substitution(E13E, k)


def _ks(coding) -> tuple[int, ...]:
    if isinstance(coding, CodingSeq):
        if coding.kind != "gauss":
            raise ValueError("a Gauss coding is required")
        return coding.entries
    return tuple(int(k) for k in coding)


# ---------------------------------------------------------------- conditions

@dataclass(frozen=True)
class ConditionReport:
    holds_I: bool
    holds_II: bool
    last_violation_even: int | None
    last_violation_odd: int | None
    horizon: int

    def to_json(self) -> dict:
        return {"I": self.holds_I, "II": self.holds_II, "horizon": self.horizon,
                "last_violation_even": self.last_violation_even,
                "last_violation_odd": self.last_violation_odd}


def classify_conditions(coding) -> ConditionReport:
    """(I): every even-index k is 0; (II): every odd-index k is 0, on the prefix.

    (I') and (II') can only be reported as consistent at the horizon, with the
    index of the last violation."""
    ks = _ks(coding)
    even = [i for i in range(0, len(ks), 2) if ks[i] > 0]
    odd = [i for i in range(1, len(ks), 2) if ks[i] > 0]
    return ConditionReport(not even, not odd, even[-1] if even else None, odd[-1] if odd else None,
                           len(ks))


def e13e_two_letter_status(coding) -> dict[str, bool | None]:
    """Membership of each 2-word; None where the prefix cannot decide."""
    ks = _ks(coding)
    if not ks:
        raise ValueError("coding is empty")
    cond = classify_conditions(ks)
    status = {w: False for w in ("11", "12", "13", "21", "22", "23", "31", "32", "33")}
    status["13"] = status["32"] = True
    status["11"] = ks[0] >= 1
    status["23"] = ks[0] == 0
    status["21"] = None if cond.holds_I else True
    status["31"] = None if cond.holds_II else True
    return status


def e13e_two_letter_table(coding) -> frozenset:
    """2-words known to lie in the language from the prefix alone."""
    return frozenset(w for w, s in e13e_two_letter_status(coding).items() if s)


# -------------------------------------------------------------------- chains

@dataclass
class RightSpecialChains:
    """v_m and w_m, each kept as its last ``cap`` letters plus exact lengths."""

    v_list: list[str]
    w_list: list[str]
    v_limit_finite: bool
    w_limit_finite: bool
    v_lengths: list[int] = field(default_factory=list)
    w_lengths: list[int] = field(default_factory=list)
    cap: int | None = None

    @property
    def v(self) -> str:
        return self.v_list[-1]

    @property
    def w(self) -> str:
        return self.w_list[-1]

    def to_json(self) -> dict:
        return {"v": self.v_list, "w": self.w_list, "v_lengths": self.v_lengths,
                "w_lengths": self.w_lengths, "suffix_cap": self.cap,
                "v_finite_at_horizon": self.v_limit_finite, "w_finite_at_horizon": self.w_limit_finite}


def _counts(w: str) -> tuple[int, int, int]:
    return (w.count("1"), w.count("2"), w.count("3"))


def _image(k: int, word: str, counts, tail: str, cap: int | None):
    """(G_k(word) tail) truncated to its last cap letters, with exact letter counts.

    Every image is nonempty, so the last cap letters only need the last cap of word."""
    img = G(k)(word) + tail
    cols = [_counts(G(k).image(c)) for c in "123"]
    new = [sum(counts[j] * cols[j][i] for j in range(3)) for i in range(3)]
    t = _counts(tail)
    new = (new[0] + t[0], new[1] + t[1], new[2] + t[2])
    return (img[-cap:] if cap and len(img) > cap else img), new


def _chains(ks: tuple[int, ...], M: int, cap: int | None = None):
    """v[(o, m)], w[(o, m)] = (suffix, counts) for the language shifted by o."""
    n = len(ks)
    v = {(o, 0): ("", (0, 0, 0)) for o in range(n + 1)}
    w = dict(v)
    for m in range(1, M + 1):
        for o in range(n):
            if (o + 1, m - 1) in w:
                v[(o, m)] = _image(ks[o], *w[(o + 1, m - 1)], "1" * ks[o], cap)
        for o in range(n):
            if (o + 1, m) in v:
                w[(o, m)] = _image(ks[o], *v[(o + 1, m)], "", cap)
    return v, w


def right_special_chains(coding, M: int, cap: int | None = None) -> RightSpecialChains:
    """v_m = G_k0(w_(m-1) of the shift) 1^k0 and w_m = G_k0(v_m of the shift).

    With ``cap`` only the last cap letters of each word are kept, which
    answers every question about factors of length <= cap; lengths stay exact."""
    ks = _ks(coding)
    if len(ks) < 2 * M:
        raise ValueError(f"coding exhausted: {len(ks)} entries cannot reach chain depth {M}")
    v, w = _chains(ks, M, cap)
    vl = [v[(0, m)][0] for m in range(M + 1)]
    wl = [w[(0, m)][0] for m in range(M + 1)]
    vlen = [sum(v[(0, m)][1]) for m in range(M + 1)]
    wlen = [sum(w[(0, m)][1]) for m in range(M + 1)]

    def tail(x: str) -> str:
        return x[-cap:] if cap else x

    for m in range(M):
        # two-step forms of the recursion
        if (2, m) in v:
            assert vl[m + 1] == tail(G(ks[0])(G(ks[1])(v[(2, m)][0])) + "1" * ks[0])
        if (2, m) in w:
            assert wl[m + 1] == tail(G(ks[0])(G(ks[1])(w[(2, m)][0])) + ("1" * (ks[0] + 1) + "3") * ks[1])
        assert vl[m + 1].endswith(vl[m]) and wl[m + 1].endswith(wl[m])
    cond = classify_conditions(ks)
    # bounded at the horizon: the condition holds, or the last step left the length unchanged
    v_fin = cond.holds_I or (M >= 2 and vlen[-1] == vlen[-2])
    w_fin = cond.holds_II or (M >= 2 and wlen[-1] == wlen[-2])
    return RightSpecialChains(vl, wl, v_fin, w_fin, vlen, wlen, cap)


# ------------------------------------------------------------------ verifier

def predicted_profile(v_len: int, w_len: int, n_max: int) -> list[int]:
    """p(0) = 1 and p(n) = 3 + min(n-1,|v|) + min(n-1,|w|) for n >= 1."""
    return [1] + [3 + min(n - 1, v_len) + min(n - 1, w_len) for n in range(1, n_max + 1)]


def fit_closed_form(profile: list[int]) -> dict:
    """Match p(n) for n >= 1 against 2n+1, min(2n+1, n+c) or min(2n+1, n+c1, c2)."""
    n_max = len(profile) - 1
    diffs = [profile[n + 1] - profile[n] for n in range(1, n_max)]
    if all(d == 2 for d in diffs):
        form, consts = "2n+1", {}
    elif 0 in diffs:
        c2 = max(profile[1:])
        ones = [n for n in range(1, n_max) if diffs[n - 1] == 1]
        c1 = profile[ones[0]] - ones[0] if ones else c2
        form, consts = "min(2n+1,n+c1,c2)", {"c1": c1, "c2": c2}
    else:
        n1 = next(n for n in range(1, n_max) if diffs[n - 1] == 1)
        form, consts = "min(2n+1,n+c)", {"c": profile[n1] - n1}
    cand = []
    for n in range(1, n_max + 1):
        vals = [2 * n + 1] + [n + consts[k] for k in ("c", "c1") if k in consts]
        if "c2" in consts:
            vals.append(consts["c2"])
        cand.append(min(vals))
    residuals = [profile[n] - cand[n - 1] for n in range(1, n_max + 1)]
    return {"form": form, "constants": consts, "residuals": residuals,
            "exact": all(r == 0 for r in residuals)}


@dataclass
class E13eReport:
    ks: tuple[int, ...]
    n_max: int
    window: int
    profile: list[int]
    conditions: ConditionReport
    chains: RightSpecialChains
    fit: dict
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, list] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"ks": list(self.ks), "n_max": self.n_max, "window": self.window,
                "conditions": self.conditions.to_json(), "chains": self.chains.to_json(),
                "complexity": [{"n": n, "p": p} for n, p in enumerate(self.profile)],
                "fit": self.fit, "checks": dict(self.checks), "witnesses": self.witnesses, "ok": self.ok}


def predict_and_verify(coding, n_max: int = 100, sample: LanguageSample | None = None) -> E13eReport:
    ks = _ks(coding)
    L = sample or expand_language_sample(CodingSeq.gauss(ks), E13E, max_factor_len=n_max + 2)
    if L.reliable_window < n_max + 1:
        raise ValueError(f"reliable window {L.reliable_window} too small for n_max={n_max}; lengthen the coding")
    p = L.profile[: n_max + 1]
    M = len(ks) // 2
    chains = right_special_chains(ks, M, cap=n_max + 2)
    v, w = chains.v, chains.w
    rep = E13eReport(ks, n_max, L.reliable_window, p, classify_conditions(ks), chains, fit_closed_form(p))

    # chains longer than the window are as good as infinite here
    pred = predicted_profile(min(chains.v_lengths[-1], n_max), min(chains.w_lengths[-1], n_max), n_max)
    bad = [(n, p[n], pred[n]) for n in range(n_max + 1) if p[n] != pred[n]]
    rep.checks["formula"], rep.witnesses["formula"] = not bad, bad[:5]

    stray, wrong_type = [], []
    for n in range(1, n_max):
        right, _ = special_factors(L, n)
        for u in right:
            ext = "".join(sorted(b for b in "123" if u + b in L.factors_by_length[n + 1]))
            if not (v.endswith(u) or w.endswith(u)):
                stray.append(u)
            if ext != ("12" if u[-1] == "3" else "13"):
                wrong_type.append((u, ext))
    rep.checks["suffix_complete"], rep.witnesses["suffix_complete"] = not stray, stray[:5]
    rep.checks["types"], rep.witnesses["types"] = not wrong_type, wrong_type[:5]

    two = L.factors(2)
    status = e13e_two_letter_status(ks)
    bad2 = [u for u, s in status.items() if s is not None and (u in two) != s]
    rep.checks["two_letters"], rep.witnesses["two_letters"] = not bad2, bad2
    rep.checks["fit"] = rep.fit["exact"]
    lv, lw = chains.v_lengths[-1], chains.w_lengths[-1]
    rep.fit["chain_constants"] = {"c1": 2 + min(lv, lw), "c2": 3 + lv + lw} if max(lv, lw) < n_max else (
        {"c": 2 + min(lv, lw)} if min(lv, lw) < n_max else {})
    return rep
