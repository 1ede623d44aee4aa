"""Bispecial factors of (e,e,e) languages: antecedents, extension images,
ages, the non-neutral chain and a certificate for 2n+1 <= p(n) <= 3n."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .algebra import T, matvec
from .language_analysis import (
    ExtensionDiagram,
    LanguageSample,
    enumerate_bispecial,
    expand_language_sample,
    extension_diagram,
)
from .substitutions import CodingSeq, Substitution, abelianize_substitution, abelianize_word, gauss_substitution

EEE = T("(e,e,e)")

_TWO_WORDS = {
    (False, False): frozenset({"13", "21", "31", "32", "33"}),
    (False, True): frozenset({"13", "21", "22", "32", "33"}),
    (True, False): frozenset({"11", "13", "21", "31", "32"}),
    (True, True): frozenset({"11", "13", "21", "22", "31", "32"}),
}


def allowed_two_words(k0: int, k1: int) -> frozenset:
    if k0 < 0 or k1 < 0:
        raise ValueError("k values must be nonnegative")
    return _TWO_WORDS[(k0 > 0, k1 > 0)]


@lru_cache(maxsize=None)
def G(k: int) -> Substitution:
    """1 -> 2, 2 -> 1^k 3, 3 -> 1^(k+1) 3."""
    return gauss_substitution(EEE, k)


def _ks(gauss_ks) -> tuple[int, ...]:
    if isinstance(gauss_ks, CodingSeq):
        if gauss_ks.kind != "gauss":
            raise ValueError("a Gauss coding is required")
        return gauss_ks.entries
    return tuple(int(k) for k in gauss_ks)


# ------------------------------------------------------------------ antecedent

@dataclass(frozen=True)
class Antecedent:
    a: str
    v: str
    b: str
    k0: int

    def reconstruct(self) -> str:
        return self.a + G(self.k0)(self.v) + self.b


def eee_antecedent(w: str, k0: int) -> Antecedent:
    """Cut after every 2 or 3; inner blocks are images of letters under G_k0.

    The first block becomes a when it is 1^k0 3 or a proper suffix of an image.
    """
    if "2" not in w and "3" not in w:
        raise ValueError(f"{w!r} has no 2 or 3; its antecedent is undefined")
    blocks, cur = [], ""
    for c in w:
        cur += c
        if c in "23":
            blocks.append(cur)
            cur = ""
    b = cur
    if len(b) > k0 + 1:
        raise ValueError(f"{w!r}: trailing run of 1s longer than {k0 + 1}, not a factor")
    decode = {"2": "1", "1" * k0 + "3": "2", "1" * (k0 + 1) + "3": "3"}
    first = blocks[0]
    if first == "1" * k0 + "3":
        a, rest = first, blocks[1:]
    elif first in decode:
        a, rest = "", blocks
    elif first.endswith("3") and set(first[:-1]) <= {"1"} and len(first) - 1 < k0:
        a, rest = first, blocks[1:]
    else:
        raise ValueError(f"{w!r}: block {first!r} is not a suffix of an image, not a factor")
    v = []
    for blk in rest:
        if blk not in decode:
            raise ValueError(f"{w!r}: block {blk!r} is not an image of a letter, not a factor")
        v.append(decode[blk])
    return Antecedent(a, "".join(v), b, k0)


# ---------------------------------------------------------- extension images

ALPHA_L = {
    "empty": {"1": "2", "2": "3", "3": "3"},
    "prefix": {"1": "", "2": "3", "3": "1"},
}
ALPHA_R = {
    ("k0=0", "empty"): {"1": "2", "2": "3", "3": "1"},
    ("k0>0", "empty"): {"1": "2", "2": "1", "3": "1"},
    ("k0>0", "ones"): {"1": "", "2": "3", "3": "1"},
}


def alpha_left(a: str, k0: int) -> dict[str, str]:
    if a == "":
        return ALPHA_L["empty"]
    if a == "1" * k0 + "3":
        return ALPHA_L["prefix"]
    raise ValueError(f"a must be empty or 1^{k0}3, got {a!r}")


def alpha_right(b: str, k0: int) -> dict[str, str]:
    if b == "":
        return ALPHA_R[("k0=0" if k0 == 0 else "k0>0", "empty")]
    if k0 >= 1 and b == "1" * k0:
        return ALPHA_R[("k0>0", "ones")]
    raise ValueError(f"b must be empty or 1^{k0}, got {b!r}")


def eee_extension_image(Ev: ExtensionDiagram, a: str, b: str, k0: int) -> ExtensionDiagram:
    al, ar = alpha_left(a, k0), alpha_right(b, k0)
    w = a + G(k0)(Ev.word) + b
    if "2" not in w and "3" not in w:
        raise ValueError("the image must contain a 2 or a 3")
    cells = frozenset((al[c], ar[d]) for c, d in Ev.cells if al[c] and ar[d])
    return ExtensionDiagram(w, cells)


def extended_images(Ev: ExtensionDiagram, k0: int) -> list[tuple[str, str]]:
    """The (a, b) choices giving bispecial extended images; the b = empty one first."""
    left, right = Ev.left, Ev.right
    if left == frozenset("13"):
        a = ""
    elif left == frozenset("23"):
        a = "1" * k0 + "3"
    else:
        raise ValueError(f"left extensions {sorted(left)} of {Ev.word!r} have no extended image")
    if right in (frozenset("12"), frozenset("13")):
        return [(a, "")]
    if right == frozenset("23"):
        return [(a, "1" * k0)]
    if right == frozenset("123"):
        return [(a, "")] if k0 == 0 else [(a, ""), (a, "1" * k0)]
    raise ValueError(f"right extensions {sorted(right)} of {Ev.word!r} are not special")


# six diagrams with three right extensions: row i in {1,2}, row 3
THREE_RIGHT_FORMS = (
    ("123", "2"), ("123", "3"), ("123", "1"),
    ("13", "23"), ("12", "13"), ("23", "12"),
)


def three_right_form(d: ExtensionDiagram) -> tuple[int, bool] | None:
    """(1-based form index, rows exchanged) of d among the six three-right forms.

    Row 3 is not always the short row: an odd number of prefix steps moves
    the full row onto 3, so the forms are matched with rows in either order.
    """
    rows = d.rows()
    if len(rows) != 2 or "3" not in rows:
        return None
    (i,) = [r for r in rows if r != "3"]
    if i not in "12":
        return None
    key = ("".join(sorted(rows[i])), "".join(sorted(rows["3"])))
    if key in THREE_RIGHT_FORMS:
        return THREE_RIGHT_FORMS.index(key) + 1, False
    if key[::-1] in THREE_RIGHT_FORMS:
        return THREE_RIGHT_FORMS.index(key[::-1]) + 1, True
    return None


# ------------------------------------------------------------------------ ages

def bispecial_age(w: str, gauss_ks) -> tuple[int, str]:
    ks = _ks(gauss_ks)
    age = 0
    while "2" in w or "3" in w:
        if age >= len(ks):
            raise ValueError("coding exhausted before the antecedent chain ended")
        w = eee_antecedent(w, ks[age]).v
        age += 1
    return age, w


def _age_one_rows(k0: int, k1: int, k2: int) -> list[tuple[str, dict]]:
    w3 = "1" * k0 + "3"
    w31, w32 = w3 + "1" * k0, w3 + "2" * k1
    table = {
        (False, False, False): [(w3, {"1": "123", "3": "2"})],
        (False, False, True): [(w3, {"1": "13", "3": "23"})],
        (False, True, False): [(w3, {"1": "23", "3": "2"}), (w32, {"1": "12", "3": "2"})],
        (False, True, True): [(w3, {"1": "23", "3": "23"}), (w32, {"1": "1", "3": "2"})],
        (True, False, False): [(w3, {"1": "12", "3": "2"}), (w31, {"1": "13"})],
        (True, False, True): [(w3, {"1": "1", "3": "12"}), (w31, {"1": "13", "3": "3"})],
        (True, True, False): [(w3, {"1": "12", "3": "2"}), (w31, {"1": "3"}), (w32, {"1": "12", "3": "2"})],
        (True, True, True): [(w3, {"1": "12", "3": "12"}), (w31, {"1": "3", "3": "3"}), (w32, {"1": "1", "3": "2"})],
    }
    out = []
    if k1 >= 1:
        out += [("2" * j, {"2": "12", "3": "2"}) for j in range(1, k1)]
        out.append(("2" * k1, {"2": "1", "3": "12"}))
    return out + table[(k0 > 0, k1 > 0, k2 > 0)]


def age_table_lookup(age: int, k0: int, k1: int, k2: int) -> list[tuple[str, ExtensionDiagram, int]]:
    """Tabulated words of age 0 or 1 with diagrams and m; some listed words are not bispecial."""
    if age == 0:
        eps = ExtensionDiagram("", frozenset((u[0], u[1]) for u in allowed_two_words(k0, k1)))
        out = [eps]
        for j in range(1, k0 + 1):
            if j < k0:
                rows = {"1": "13", "2": "1", "3": "1"}
            elif k1 == 0:
                rows = {"1": "3", "2": "1", "3": "13"}
            else:
                rows = {"1": "3", "2": "1", "3": "3"}
            out.append(ExtensionDiagram.from_rows("1" * j, rows))
    elif age == 1:
        out = [ExtensionDiagram.from_rows(w, rows) for w, rows in _age_one_rows(k0, k1, k2)]
    else:
        raise ValueError("only ages 0 and 1 are tabulated")
    return [(d.word, d, d.multiplicity) for d in out]


# ----------------------------------------------------------------------- chain

@dataclass(frozen=True)
class ChainEntry:
    index: int
    plus: ExtensionDiagram
    minus: ExtensionDiagram
    a_plus: str = ""
    a_minus: str = ""
    b_plus: str = ""
    b_minus: str = ""
    minus_bispecial: bool = True

    @property
    def w_plus(self) -> str:
        return self.plus.word

    @property
    def w_minus(self) -> str:
        return self.minus.word

    @property
    def m_plus(self) -> int:
        return self.plus.multiplicity

    @property
    def m_minus(self) -> int:
        return self.minus.multiplicity

    @property
    def A_flags(self) -> tuple[bool, bool]:
        return (self.a_plus != "", self.a_minus != "")

    @property
    def B_flags(self) -> tuple[bool, bool]:
        return (self.b_plus != "", self.b_minus != "")

    def to_json(self) -> dict:
        return {"m": self.index, "w_plus": self.w_plus, "w_minus": self.w_minus,
                "m_plus": self.m_plus, "m_minus": self.m_minus,
                "A": list(self.A_flags), "B": list(self.B_flags),
                "diagram_plus": self.plus.to_json(), "diagram_minus": self.minus.to_json(),
                "minus_bispecial": self.minus_bispecial}


def _lookup(entries, word):
    for w, d, _ in entries:
        if w == word:
            return d
    raise KeyError(word)


def _base_entries(k0: int, k1: int, k2: int) -> list[ChainEntry]:
    age0 = age_table_lookup(0, k0, k1, k2)
    age1 = age_table_lookup(1, k0, k1, k2)
    e0 = ChainEntry(0, _lookup(age0, ""), _lookup(age0, "1" * k0))
    w1p, w1m = "1" * k0 + "3", "1" * k0 + "3" + "2" * k1
    a1 = "1" * k0 + "3"
    e1 = ChainEntry(1, _lookup(age1, w1p), _lookup(age1, w1m), a1, a1)
    return [e0, e1]


def _images(entry: ChainEntry, k0: int, index: int) -> ChainEntry:
    """Entry index of L from an entry of L^(1)."""
    sources = [entry.plus]
    if entry.w_minus != entry.w_plus and entry.minus_bispecial:
        sources.append(entry.minus)
    if len(sources) == 2:
        imgs = []
        for d in sources:
            choices = extended_images(d, k0)
            if len(choices) != 1:
                raise ValueError(f"{d.word!r} sits beside a distinct partner but has {len(choices)} images")
            (a, b), = choices
            imgs.append((eee_extension_image(d, a, b, k0), a, b))
    else:
        d = sources[0]
        choices = extended_images(d, k0)
        if len(d.right) == 3 and three_right_form(d) is None:
            raise ValueError(f"{d.word!r} has three right extensions outside the six forms")
        imgs = [(eee_extension_image(d, a, b, k0), a, b) for a, b in choices]
        if len(imgs) == 1:
            imgs = imgs * 2
    (p, ap, bp), (m, am, bm) = imgs
    return ChainEntry(index, p, m, ap, am, bp, bm, m.is_bispecial)


def _chain(ks: tuple[int, ...], M: int) -> list[ChainEntry]:
    if len(ks) < M + 2:
        raise ValueError(f"coding exhausted: {len(ks)} entries cannot reach chain depth {M}")
    base = _base_entries(ks[0], ks[1], ks[2])
    if M <= 1:
        return base[: M + 1]
    sub = _chain(ks[1:], M - 1)
    return base + [_images(sub[m], ks[0], m + 1) for m in range(1, M)]


def build_chain(gauss_ks, M: int) -> list[ChainEntry]:
    """Entries 0..M; needs M + 2 Gauss values."""
    return _chain(_ks(gauss_ks), M)


def chain_until(gauss_ks, max_len: int) -> list[ChainEntry]:
    """Shortest chain whose last plus-word is longer than max_len, as far as the coding allows."""
    ks = _ks(gauss_ks)
    M, out = 1, _chain(ks, 1)
    while len(out[-1].w_plus) <= max_len and M + 3 <= len(ks):
        M += 1
        out = _chain(ks, M)
    return out


def length_recurrence(entry_sub: ExtensionDiagram, image: ExtensionDiagram, a: str, b: str, k0: int) -> bool:
    """l(w) = l(G_k0) l(v) + A (k0,0,1) + B (k0,0,0)."""
    pred = matvec(abelianize_substitution(G(k0)), abelianize_word(entry_sub.word))
    A, B = a != "", b != ""
    pred = (pred[0] + k0 * (A + B), pred[1], pred[2] + A)
    return pred == abelianize_word(image.word)


# --------------------------------------------------------------- certificate

@dataclass
class EeeReport:
    ks: tuple[int, ...]
    n_max: int
    window: int
    profile: list[int]
    chain: list[ChainEntry]
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, list] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"ks": list(self.ks), "n_max": self.n_max, "window": self.window,
                "complexity": [{"n": n, "p": p} for n, p in enumerate(self.profile)],
                "chain": [e.to_json() for e in self.chain],
                "checks": dict(self.checks), "witnesses": self.witnesses, "ok": self.ok}


def certify_eee(gauss_ks, n_max: int = 150, sample: LanguageSample | None = None) -> EeeReport:
    ks = _ks(gauss_ks)
    L = sample or expand_language_sample(CodingSeq.gauss(ks), EEE, max_factor_len=n_max + 2)
    if L.reliable_window < n_max + 1:
        raise ValueError(f"reliable window {L.reliable_window} too small for n_max={n_max}; lengthen the coding")
    p = L.profile
    chain = chain_until(ks, n_max)
    rep = EeeReport(ks, n_max, L.reliable_window, p[: n_max + 1], chain)

    bad = [n for n in range(1, n_max + 1) if not 2 * n + 1 <= p[n] <= 3 * n]
    rep.checks["bounds"], rep.witnesses["bounds"] = not bad, [(n, p[n]) for n in bad[:5]]

    # diagrams of chain words inside the window must match the language
    len_max = min(n_max - 1, L.reliable_window - 2)
    by_word = {}
    for e in chain:
        for d in (e.plus, e.minus):
            by_word[d.word] = d
    mismatch = [w for w, d in by_word.items()
                if len(w) <= len_max and (w not in L or extension_diagram(L, w) != d)]
    missing = []
    for w, d, m in enumerate_bispecial(L, len_max):
        if m != 0 and by_word.get(w) != d:
            missing.append((w, m))
    rep.checks["chain_complete"] = not missing and not mismatch
    rep.witnesses["chain_complete"] = missing[:5] + [(w, "diagram") for w in mismatch[:5]]

    bad_m = [e.index for e in chain if not 0 <= e.m_plus == -e.m_minus <= 1]
    rep.checks["multiplicities"], rep.witnesses["multiplicities"] = not bad_m, bad_m

    lens = []
    for e in chain:
        lens += [len(e.w_plus), len(e.w_minus)]
    bad_len = [i // 2 for i in range(len(lens) - 1)
               if not (lens[i] <= lens[i + 1] if i % 2 == 0 else lens[i] < lens[i + 1])]
    rep.checks["interleaving"], rep.witnesses["interleaving"] = not bad_len, bad_len

    bad_a = []
    for e in chain[1:]:
        want = "" if e.index % 2 == 0 else "1" * ks[0] + "3"
        for w in {e.w_plus, e.w_minus}:
            if eee_antecedent(w, ks[0]).a != want:
                bad_a.append((e.index, w))
    rep.checks["prefix_parity"], rep.witnesses["prefix_parity"] = not bad_a, bad_a[:5]
    return rep
