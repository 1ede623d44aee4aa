"""Substitutions on {1,2,3}, TRIP and Gauss substitutions, coding sequences
and S-adic language samples."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Matrix, TripTriple, farey_product, matmul, matvec

ALPHABET = "123"
VARIANTS = ("canonical13", "variant31")


@dataclass(frozen=True)
class Substitution:
    images: tuple[str, str, str]

    def __post_init__(self):
        if len(self.images) != 3 or any(set(w) - set(ALPHABET) for w in self.images):
            raise ValueError(f"images must be three words over 1,2,3: {self.images}")

    @classmethod
    def identity(cls) -> "Substitution":
        return cls(("1", "2", "3"))

    def image(self, c: str | int) -> str:
        return self.images[int(c) - 1]

    def __call__(self, word: str) -> str:
        return word.translate(self._table)

    @property
    def _table(self):
        return {ord(c): w for c, w in zip(ALPHABET, self.images)}

    def __mul__(self, other: "Substitution") -> "Substitution":
        """(self * other)(c) = self(other(c))."""
        return Substitution(tuple(self(w) for w in other.images))

    def __str__(self) -> str:
        return ", ".join(f"{c}->{w or 'ε'}" for c, w in zip(ALPHABET, self.images))


def apply(s: Substitution, w: str) -> str:
    return s(w)


def compose(s1: Substitution, s2: Substitution) -> Substitution:
    return s1 * s2


def power(s: Substitution, k: int) -> Substitution:
    out = Substitution.identity()
    for _ in range(k):
        out = out * s
    return out


_BASE = {
    "canonical13": (("2", "3", "13"), ("1", "2", "13")),
    "variant31": (("2", "3", "13"), ("1", "2", "31")),
}


def trip_substitution(i: int, t: TripTriple, variant: str = "canonical13") -> Substitution:
    """sigma o S_i(e,e,e) o tau_i."""
    if variant not in _BASE:
        raise ValueError(f"variant must be one of {VARIANTS}")
    base = _BASE[variant][i]
    tau = t.tau(i)
    return Substitution(tuple(t.sigma.apply_word(base[tau(c) - 1]) for c in (1, 2, 3)))


def gauss_substitution(t: TripTriple, k: int, variant: str = "canonical13") -> Substitution:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return power(trip_substitution(1, t, variant), k) * trip_substitution(0, t, variant)


def abelianize_word(w: str) -> tuple[int, int, int]:
    return (w.count("1"), w.count("2"), w.count("3"))


def abelianize_substitution(s: Substitution) -> Matrix:
    cols = [abelianize_word(w) for w in s.images]
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def canonical_substitution_from_matrix(m: Matrix) -> Substitution:
    """Column j becomes 1^a 2^b 3^c."""
    if any(v < 0 for row in m for v in row):
        raise ValueError("matrix entries must be nonnegative")
    return Substitution(tuple("".join(ALPHABET[i] * m[i][j] for i in range(3)) for j in range(3)))


# ------------------------------------------------------------------ codings

@dataclass(frozen=True)
class CodingSeq:
    """kind is 'farey' (bits), 'gauss' (k values) or 'double' ((j, k) pairs)."""

    kind: str
    entries: tuple

    def __post_init__(self):
        if self.kind not in ("farey", "gauss", "double"):
            raise ValueError(f"unknown coding kind {self.kind!r}")
        ent = tuple(tuple(e) if self.kind == "double" else int(e) for e in self.entries)
        if self.kind == "farey" and any(e not in (0, 1) for e in ent):
            raise ValueError("Farey entries must be 0 or 1")
        if self.kind == "gauss" and any(e < 0 for e in ent):
            raise ValueError("Gauss entries must be nonnegative")
        if self.kind == "double" and any(len(e) != 2 or min(e) < 0 for e in ent):
            raise ValueError("double-Gauss entries must be nonnegative pairs")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def farey(cls, bits: str | Iterable[int]) -> "CodingSeq":
        if isinstance(bits, str):
            bits = [int(b) for b in bits.strip() if not b.isspace()]
        return cls("farey", tuple(bits))

    @classmethod
    def gauss(cls, ks: str | Iterable[int]) -> "CodingSeq":
        if isinstance(ks, str):
            ks = [int(k) for k in ks.replace(" ", "").split(",") if k]
        return cls("gauss", tuple(ks))

    @classmethod
    def double(cls, pairs: Iterable[tuple[int, int]]) -> "CodingSeq":
        return cls("double", tuple(pairs))

    def __len__(self) -> int:
        return len(self.entries)

    def shift(self, m: int = 1) -> "CodingSeq":
        return CodingSeq(self.kind, self.entries[m:])

    def pairs(self) -> tuple["CodingSeq", bool]:
        """Gauss coding grouped into (j, k) pairs; flag says an entry was dropped."""
        if self.kind != "gauss":
            raise ValueError("only Gauss codings can be paired")
        e = self.entries
        return CodingSeq.double(zip(e[0::2], e[1::2])), len(e) % 2 == 1

    def substitution(self, idx: int, t: TripTriple, variant: str = "canonical13") -> Substitution:
        e = self.entries[idx]
        if self.kind == "farey":
            return trip_substitution(e, t, variant)
        if self.kind == "gauss":
            return gauss_substitution(t, e, variant)
        return gauss_substitution(t, e[0], variant) * gauss_substitution(t, e[1], variant)

    def substitutions(self, t: TripTriple, variant: str = "canonical13") -> list[Substitution]:
        cache: dict = {}
        out = []
        for idx, e in enumerate(self.entries):
            if e not in cache:
                cache[e] = self.substitution(idx, t, variant)
            out.append(cache[e])
        return out

    def to_json(self) -> dict:
        if self.kind == "farey":
            return {"kind": "farey", "bits": "".join(map(str, self.entries))}
        if self.kind == "gauss":
            return {"kind": "gauss", "ks": list(self.entries)}
        return {"kind": "double", "pairs": [list(p) for p in self.entries]}


def random_gauss_coding(length: int, rng: random.Random, cap: int = 8) -> CodingSeq:
    """i.i.d. geometric(1/2) values on {0,1,...}, capped."""
    ks = []
    for _ in range(length):
        k = 0
        while k < cap and rng.random() < 0.5:
            k += 1
        ks.append(k)
    return CodingSeq.gauss(ks)


def random_farey_coding(length: int, rng: random.Random) -> CodingSeq:
    return CodingSeq.farey([rng.randrange(2) for _ in range(length)])


# ------------------------------------------------------------ primitivity

@dataclass(frozen=True)
class PositiveAt:
    n: int


@dataclass(frozen=True)
class NotWithinHorizon:
    horizon: int


def check_primitive(seq: CodingSeq, t: TripTriple, horizon: int, variant: str = "canonical13"):
    """Smallest n <= horizon with l(s_0)...l(s_{n-1}) strictly positive."""
    m = None
    for n, s in enumerate(seq.substitutions(t, variant)[:horizon], start=1):
        a = abelianize_substitution(s)
        m = a if m is None else matmul(m, a)
        if all(v > 0 for row in m for v in row):
            return PositiveAt(n)
    return NotWithinHorizon(horizon)


def expand(seq: CodingSeq, t: TripTriple, c: str = "1", variant: str = "canonical13") -> str:
    """(s_0 o ... o s_{m-1})(c)."""
    w = c
    for s in reversed(seq.substitutions(t, variant)):
        w = s(w)
    return w


def expansion_images(seq: CodingSeq, t: TripTriple, depth: int, variant: str = "canonical13",
                     subs: Sequence[Substitution] | None = None) -> tuple[str, str, str]:
    """Images of 1, 2, 3 under s_0 o ... o s_{depth-1}, built forward."""
    subs = subs if subs is not None else seq.substitutions(t, variant)
    images = ("1", "2", "3")
    for s in subs[:depth]:
        prev = Substitution(images)
        images = tuple(prev(s.images[j]) for j in range(3))
    return images


def estimate_frequency(seq: CodingSeq, t: TripTriple, word_len: int, variant: str = "canonical13"):
    """Letter frequencies of a prefix of length >= word_len of an expansion of 1.

    Returns (frequency, primitive_flag)."""
    primitive = isinstance(check_primitive(seq, t, len(seq), variant), PositiveAt)
    w = "1"
    for depth in range(1, len(seq) + 1):
        w = expansion_images(seq, t, depth, variant)[0]
        if len(w) >= word_len:
            break
    counts = abelianize_word(w)
    return tuple(Fraction(c, len(w)) for c in counts), primitive


def subtriangle_point(bits: Sequence[int], t: TripTriple) -> tuple[Fraction, Fraction, Fraction]:
    """Barycentre of the columns of F_{i_0}...F_{i_{m-1}}, normalized."""
    m = farey_product(bits, t)
    cols = [tuple(Fraction(m[i][j], sum(m[r][j] for r in range(3))) for i in range(3)) for j in range(3)]
    pt = tuple(sum(c[i] for c in cols) / 3 for i in range(3))
    return pt


def dominant_direction(m: Matrix, iterations: int = 200) -> tuple[float, float, float]:
    v = (1.0, 1.0, 1.0)
    for _ in range(iterations):
        v = matvec(m, v)
        s = sum(v)
        v = tuple(c / s for c in v)
    return v
