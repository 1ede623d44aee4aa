"""Factor sets, complexity, extension diagrams and bispecial factors.

A :class:`FactorIndex` sorts all positions of a text by their first ``cap``
characters (prefix doubling over packed 2-bit windows) and reads the
complexity function off the capped LCP array.  Separators (``#``) split the
text into independent words.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import Perm3, TripTriple
from .substitutions import CodingSeq, trip_substitution

SEP = "#"
_CODE = np.zeros(256, dtype=np.uint8)
_CODE[ord("1")], _CODE[ord("2")], _CODE[ord("3")] = 1, 2, 3


class WindowError(ValueError):
    """A query needs factors longer than the certified window."""


def _dense_rank(key: np.ndarray) -> np.ndarray:
    _, inv = np.unique(key, return_inverse=True)
    return inv.astype(np.int64).reshape(-1) + 1


class FactorIndex:
    """Distinct factors of length <= cap of the words of ``text`` split at '#'."""

    def __init__(self, text: str, cap: int):
        self.text = text
        self.cap = int(cap)
        codes = _CODE[np.frombuffer(text.encode("ascii"), dtype=np.uint8)]
        n = codes.shape[0]
        is_sep = codes == 0
        # distance from each position to the next separator or the end
        idx = np.arange(n, dtype=np.int64)
        nxt = np.where(is_sep, idx, n)
        nxt = np.minimum.accumulate(nxt[::-1])[::-1]
        vl = nxt - idx
        starts = np.flatnonzero(~is_sep)

        packed = kernels.pack_windows(codes)
        rank = np.zeros(n + 1, dtype=np.int64)
        rank[:n] = _dense_rank(packed)
        h = kernels.CHARS_PER_WORD
        while h < self.cap:
            nxt_rank = np.zeros(n, dtype=np.int64)
            nxt_rank[: max(n - h, 0)] = rank[h:n]
            rmax = int(rank.max()) + 1
            rank[:n] = _dense_rank(rank[:n] * rmax + nxt_rank)
            h *= 2
        order = starts[np.argsort(rank[starts], kind="stable")]
        lcp = kernels.capped_lcp(packed, order, self.cap)
        vlo = np.minimum(vl[order], self.cap)
        lcpv = lcp.copy()
        if order.size > 1:
            lcpv[1:] = np.minimum(lcp[1:], np.minimum(vlo[1:], vlo[:-1]))
        lcpv[:1] = 0
        self.order, self.vl, self.lcpv = order, vlo, lcpv
        ge_vl = np.cumsum(np.bincount(vlo, minlength=self.cap + 1)[::-1])[::-1]
        ge_lcp = np.cumsum(np.bincount(lcpv, minlength=self.cap + 1)[::-1])[::-1]
        prof = ge_vl - ge_lcp
        prof[0] = 1
        self.profile = prof[: self.cap + 1].astype(np.int64)

    def factor_sets(self, n_max: int) -> list[set[str]]:
        """[L_0, ..., L_{n_max}] as sets of strings."""
        n_max = min(int(n_max), self.cap)
        sets: list[set[str]] = [set() for _ in range(n_max + 1)]
        sets[0].add("")
        hi = np.minimum(self.vl, n_max)
        rows = np.flatnonzero(self.lcpv < hi)
        text = self.text
        for r in rows.tolist():
            s = int(self.order[r])
            word = text[s : s + int(hi[r])]
            for m in range(int(self.lcpv[r]) + 1, int(hi[r]) + 1):
                sets[m].add(word[:m])
        return sets


def reliable_prefix(p_new: np.ndarray, p_old: np.ndarray, limit: int) -> int:
    """Largest n <= limit with p_new[j] == p_old[j] > 0 for all 1 <= j <= n."""
    n = 0
    for j in range(1, min(limit, len(p_new) - 1, len(p_old) - 1) + 1):
        if p_new[j] != p_old[j] or p_new[j] == 0:
            break
        n = j
    return n


@dataclass
class LanguageSample:
    """Factor sets L_0..L_window, all exact for lengths <= reliable_window."""

    factors_by_length: list[set[str]]
    reliable_window: int
    profile: list[int]
    provenance: dict = field(default_factory=dict)
    flagged: bool = False

    # -- constructors -----------------------------------------------------------
    @classmethod
    def from_words(cls, words: Iterable[str], window: int, provenance: dict | None = None) -> "LanguageSample":
        """Factors of explicit words; the caller vouches for the window."""
        idx = FactorIndex(SEP.join(words), window)
        sets = idx.factor_sets(window)
        return cls(sets, window, [int(v) for v in idx.profile[: window + 1]], dict(provenance or {}))

    @classmethod
    def from_sets(cls, sets: Sequence[set[str]], window: int, provenance: dict | None = None) -> "LanguageSample":
        sets = [set(s) for s in sets[: window + 1]]
        return cls(sets, window, [len(s) for s in sets], dict(provenance or {}))

    # -- queries -------------------------------------------------------------------
    def __contains__(self, w: str) -> bool:
        if len(w) > self.reliable_window:
            raise WindowError(f"|w| = {len(w)} beyond window {self.reliable_window}")
        return w in self.factors_by_length[len(w)]

    def factors(self, n: int) -> set[str]:
        if n > self.reliable_window:
            raise WindowError(f"length {n} beyond window {self.reliable_window}")
        return self.factors_by_length[n]

    def map_words(self, f) -> "LanguageSample":
        sets = [{f(w) for w in s} for s in self.factors_by_length]
        return LanguageSample(sets, self.reliable_window, [len(s) for s in sets], dict(self.provenance), self.flagged)


def _factors_upto(w: str, r: int, out: set) -> None:
    n = len(w)
    for i in range(n):
        for m in range(1, min(r, n - i) + 1):
            out.add(w[i : i + m])


def universal_factors(t: TripTriple, r: int, variant: str = "canonical13") -> frozenset:
    """Words of length <= r in some language of the map, over all codings.

    Smallest set containing the letters and closed under taking factors of
    length <= r of S_0(u), S_1(u)."""
    key = (str(t), r, variant)
    if key not in _UNIVERSAL:
        subs = [trip_substitution(i, t, variant) for i in (0, 1)]
        x = set("123")
        while True:
            y = set(x)
            for s in subs:
                for u in x:
                    _factors_upto(s(u), r, y)
            if y == x:
                break
            x = y
        _UNIVERSAL[key] = frozenset(x)
    return _UNIVERSAL[key]


_UNIVERSAL: dict = {}


def _pull_back(subs, lo: int, hi: int, start: set, r: int) -> set:
    """Words of length <= r of the level-lo language, given a level-hi set."""
    x = set(start)
    for j in range(hi - 1, lo - 1, -1):
        y = set("123")
        s = subs[j]
        for u in x:
            _factors_upto(s(u), r, y)
        x = y
    return x


def _apply_images(images: tuple[str, str, str], u: str) -> str:
    return u.translate({ord(c): w for c, w in zip("123", images)})


def expand_language_sample(
    seq: CodingSeq,
    t: TripTriple,
    variant: str = "canonical13",
    max_factor_len: int = 50,
    max_text: int = 4_000_000,
    horizon: int = 12,
    block_lengths: Sequence[int] = (2, 3, 4, 6, 8),
    period: int | None = None,
) -> LanguageSample:
    """Language sample of the coding with a certified reliable window.

    Write W_D for s_0 o ... o s_{D-1}.  Every factor of the language is a
    factor of W_D(u) for u in the level-D language.  If every word v of
    length r-1 of that language has |W_D(v)| >= n - 1, a factor of length n
    sits inside W_D(u) for a word u of length r.  The level-D words of
    length <= r are bracketed between a lower set (pulled back from the
    letters at level D + horizon) and an upper set (pulled back from all
    words any coding can produce).  Factors of the two texts agree up to
    the reliable window, which is therefore exact whatever the coding does
    after its last entry.

    With ``period`` = P the last P entries of the coding repeat forever.  The level-D language is
    then the least set containing the letters and closed under pulling back
    through one period, so the two brackets coincide and the window is
    limited only by the cap and the image-length bound.
    """
    if len(seq) == 0:
        raise ValueError("coding sequence is empty")
    subs = seq.substitutions(t, variant)
    periodic = period is not None
    if periodic:
        if not 1 <= period <= len(subs):
            raise ValueError("period must be between 1 and the coding length")
        pre = len(subs) - period
        subs = subs[:pre] + subs[pre:] * max(2, -(-256 // period) + 1)
    cap = int(max_factor_len)
    n_subs = len(subs) - (period if periodic else 0)
    levels = [("1", "2", "3")]

    def images_at(d: int):
        while len(levels) <= d:
            prev = levels[-1]
            s = subs[len(levels) - 1]
            levels.append(tuple(_apply_images(prev, s.images[j]) for j in range(3)))
        return levels[d]

    lengths = [(1, 1, 1)]

    def lengths_at(d: int):
        while len(lengths) <= d:
            prev = lengths[-1]
            s = subs[len(lengths) - 1]
            lengths.append(tuple(sum(prev[int(c) - 1] for c in s.images[j]) for j in range(3)))
        return lengths[d]

    def word_len(lens, u: str) -> int:
        return sum(lens[int(c) - 1] for c in u)

    fixed: dict = {}

    def fixed_set(d: int, r: int, limit: int | None = None) -> frozenset | None:
        """Exact level-d words of length <= r when the coding is periodic."""
        if d < pre:
            top = fixed_set(pre, r, limit)
            return None if top is None else frozenset(_pull_back(subs, d, pre, top, r))
        key = ((d - pre) % period, r)
        if key not in fixed:
            x = set("123")
            while True:
                nxt = _pull_back(subs, d, d + period, x, r) | x
                if nxt == x:
                    break
                if limit is not None and len(nxt) > limit:
                    return None
                x = nxt
            fixed[key] = frozenset(x)
        return fixed[key]

    plans = []
    for r in block_lengths:
        univ = universal_factors(t, r, variant) if not periodic else None
        chosen = None
        for d in range(n_subs + 1):
            if periodic:
                univ = fixed_set(d, r)
            univ_short = [v for v in univ if len(v) == r - 1]
            lens = lengths_at(d)
            if sum(word_len(lens, u) + 1 for u in univ) > max_text:
                break
            chosen = (d, min(word_len(lens, v) for v in univ_short) + 1)
            if chosen[1] >= cap:
                break
        if chosen is not None:
            plans.append((r, univ) + chosen)
    # blocks that reach the cap first (shortest r), then the rest by bound
    plans.sort(key=lambda p: (p[3] < cap, -min(p[3], cap), p[0]))

    best = None
    for r, univ, chosen, _ in plans:
        d = chosen
        imgs = images_at(d)
        if periodic:
            upper = lower = set(fixed_set(d, r))
        for h in () if periodic else (horizon, 2 * horizon, 4 * horizon):
            top = min(n_subs, d + h)
            upper = _pull_back(subs, d, top, univ, r)
            lower = _pull_back(subs, d, top, set("123"), r)
            if upper == lower or top == n_subs:
                break
        bound = min(len(_apply_images(imgs, v)) for v in upper if len(v) == r - 1) + 1
        cap_here = min(cap, bound)
        texts = {}
        for name, words in (("upper", upper), ("lower", lower)):
            texts[name] = SEP.join(_apply_images(imgs, u) for u in sorted(words))
        up = FactorIndex(texts["upper"], cap_here)
        if upper == lower:
            win, idx = cap_here, up
        else:
            lo = FactorIndex(texts["lower"], cap_here)
            win = reliable_prefix(up.profile, lo.profile, cap_here)
            idx = lo
        if best is None or win > best[0]:
            best = (win, idx, d, r, upper == lower)
        if win >= cap:
            break
    if periodic and (best is None or best[0] < cap):
        # images of some words do not grow (eventually periodic languages);
        # such languages are small, so close the factor set directly
        direct = fixed_set(0, cap, limit=200_000)
        if direct is not None:
            sets = [{""}] + [set() for _ in range(cap)]
            for u in direct:
                sets[len(u)].add(u)
            prov = {"triple": str(t), "variant": variant, "coding": seq.to_json(), "depth": 0,
                    "block_length": cap, "bracket_closed": True, "period": period}
            return LanguageSample(sets, cap, [len(x) for x in sets], prov, False)
    if best is None:
        win, sets, profile, d, r, closed = 0, [{""}], [1], 0, 0, False
    else:
        win, idx, d, r, closed = best
        sets = idx.factor_sets(win)
        profile = [int(v) for v in idx.profile[: win + 1]]
    prov = {"triple": str(t), "variant": variant, "coding": seq.to_json(), "depth": d,
            "block_length": r, "bracket_closed": closed, "period": period}
    return LanguageSample(sets, win, profile, prov, win < cap)


# --------------------------------------------------------------- complexity

def complexity_profile(L: LanguageSample, n_max: int) -> list[int]:
    if n_max > L.reliable_window:
        raise WindowError(f"n_max = {n_max} beyond window {L.reliable_window}")
    return L.profile[: n_max + 1]


def word_complexity(w: str, n: int) -> int:
    """Number of distinct length-n factors of a single finite word."""
    return len({w[i : i + n] for i in range(len(w) - n + 1)})


def word_profile(w: str, n_max: int) -> list[int]:
    idx = FactorIndex(w, n_max)
    return [int(v) for v in idx.profile[: n_max + 1]]


# ------------------------------------------------------ extension diagrams

@dataclass(frozen=True)
class ExtensionDiagram:
    word: str
    cells: frozenset  # of (a, b) with a, b in "123"

    @property
    def left(self) -> frozenset:
        return frozenset(a for a, _ in self.cells)

    @property
    def right(self) -> frozenset:
        return frozenset(b for _, b in self.cells)

    def rows(self) -> dict[str, frozenset]:
        out: dict[str, set] = defaultdict(set)
        for a, b in self.cells:
            out[a].add(b)
        return {a: frozenset(v) for a, v in sorted(out.items())}

    @property
    def multiplicity(self) -> int:
        return bilateral_multiplicity(self)

    @property
    def is_bispecial(self) -> bool:
        return len(self.left) >= 2 and len(self.right) >= 2

    @classmethod
    def from_rows(cls, word: str, rows: dict) -> "ExtensionDiagram":
        return cls(word, frozenset((str(a), str(b)) for a, bs in rows.items() for b in str(bs)))

    def ascii(self) -> str:
        lines = ["    1 2 3"]
        for a in "123":
            lines.append(f" {a}  " + " ".join("x" if (a, b) in self.cells else "." for b in "123"))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"word": self.word, "rows": {a: "".join(sorted(bs)) for a, bs in self.rows().items()},
                "m": self.multiplicity}


def bilateral_multiplicity(d: ExtensionDiagram) -> int:
    return len(d.cells) - len(d.left) - len(d.right) + 1


def extension_diagram(L: LanguageSample, w: str) -> ExtensionDiagram:
    if len(w) + 2 > L.reliable_window:
        raise WindowError(f"|w|+2 = {len(w) + 2} beyond window {L.reliable_window}")
    if w not in L.factors_by_length[len(w)]:
        raise ValueError(f"{w!r} is not a factor")
    big = L.factors_by_length[len(w) + 2]
    return ExtensionDiagram(w, frozenset((a, b) for a in "123" for b in "123" if a + w + b in big))


def special_factors(L: LanguageSample, n: int) -> tuple[dict[str, int], dict[str, int]]:
    """(right, left): length-n factors with >= 2 right / left extensions and their counts."""
    if n + 1 > L.reliable_window:
        raise WindowError(f"length {n + 1} beyond window {L.reliable_window}")
    nxt = L.factors_by_length[n + 1]
    right = Counter(u[:-1] for u in nxt)
    left = Counter(u[1:] for u in nxt)
    return ({w: c for w, c in right.items() if c >= 2}, {w: c for w, c in left.items() if c >= 2})


def enumerate_bispecial(L: LanguageSample, len_max: int) -> list[tuple[str, ExtensionDiagram, int]]:
    if len_max + 2 > L.reliable_window:
        raise WindowError(f"len_max+2 = {len_max + 2} beyond window {L.reliable_window}")
    out = []
    for n in range(len_max + 1):
        right, left = special_factors(L, n)
        for w in sorted(set(right) & set(left)):
            d = extension_diagram(L, w)
            out.append((w, d, d.multiplicity))
    return out


@dataclass
class IdentityReport:
    ok: bool
    rows: list[dict]
    failures: list[dict]


def verify_difference_identities(L: LanguageSample, n_max: int) -> IdentityReport:
    """Check both difference identities, restricted to special factors.

    Over all of L_n the sums are bookkeeping identities for any factorial
    set; restricted to special (resp. bispecial) factors they need every
    factor to extend on both sides, which is what this checks.
    """
    if n_max + 2 > L.reliable_window:
        raise WindowError(f"n_max+2 = {n_max + 2} beyond window {L.reliable_window}")
    p = L.profile
    rows, failures = [], []
    for n in range(n_max + 1):
        right, left = special_factors(L, n)
        nxt = L.factors_by_length[n + 1]
        cur = L.factors_by_length[n]
        dead_r = [w for w in cur if not any(w + b in nxt for b in "123")]
        dead_l = [w for w in cur if not any(a + w in nxt for a in "123")]
        sum_r = sum(c - 1 for c in right.values())
        sum_l = sum(c - 1 for c in left.values())
        m_sum = 0
        for w in set(right) & set(left):
            m_sum += extension_diagram(L, w).multiplicity
        d1 = p[n + 1] - p[n]
        d2 = p[n + 2] - 2 * p[n + 1] + p[n]
        row = {"n": n, "p": p[n], "d1": d1, "right_sum": sum_r, "left_sum": sum_l,
               "d2": d2, "bispecial_m_sum": m_sum}
        rows.append(row)
        if dead_r or dead_l or d1 != sum_r or d1 != sum_l or d2 != m_sum:
            failures.append({**row, "not_right_extendable": sorted(dead_r)[:5],
                             "not_left_extendable": sorted(dead_l)[:5]})
    return IdentityReport(not failures, rows, failures)


# ------------------------------------------------------------ word operations

def relabel(L: LanguageSample, rho: Perm3) -> LanguageSample:
    return L.map_words(rho.apply_word)


def reverse_word(w: str) -> str:
    return w[::-1]


def reverse_language(L: LanguageSample) -> LanguageSample:
    return L.map_words(reverse_word)
