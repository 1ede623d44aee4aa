"""Permutations, small integer matrices and TRIP triples.

Permutations act on the letters 1, 2, 3.  ``p * q`` is the composition
"apply q first, then p", and the matrix of ``p`` has a 1 in row ``p(j)`` of
column ``j``, so that ``matrix(p * q) == matrix(p) @ matrix(q)``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Tuple

Matrix = Tuple[Tuple[int, ...], ...]
Rational = Fraction

_CYCLES3 = {
    "e": (1, 2, 3),
    "12": (2, 1, 3),
    "13": (3, 2, 1),
    "23": (1, 3, 2),
    "123": (2, 3, 1),
    "132": (3, 1, 2),
}
_NAMES3 = {v: k for k, v in _CYCLES3.items()}


@dataclass(frozen=True, order=True)
class Perm3:
    """A permutation of {1,2,3}; ``image[j-1]`` is the image of ``j``."""

    image: Tuple[int, int, int]

    def __post_init__(self):
        if tuple(sorted(self.image)) != (1, 2, 3):
            raise ValueError(f"not a permutation of 1,2,3: {self.image}")

    @classmethod
    def parse(cls, text: str) -> "Perm3":
        key = text.strip().strip("()").replace(" ", "")
        if key in ("", "id", "1"):
            key = "e"
        if key not in _CYCLES3:
            raise ValueError(f"unknown permutation {text!r}; use e,(12),(13),(23),(123),(132)")
        return cls(_CYCLES3[key])

    @classmethod
    def identity(cls) -> "Perm3":
        return cls((1, 2, 3))

    def __call__(self, c: int) -> int:
        return self.image[c - 1]

    def __mul__(self, other: "Perm3") -> "Perm3":
        return Perm3(tuple(self(other(j)) for j in (1, 2, 3)))

    def inverse(self) -> "Perm3":
        inv = [0, 0, 0]
        for j, pj in enumerate(self.image, start=1):
            inv[pj - 1] = j
        return Perm3(tuple(inv))

    def matrix(self) -> Matrix:
        return perm_to_matrix(self)

    def apply_word(self, word: str) -> str:
        return word.translate(str.maketrans("123", "".join(str(c) for c in self.image)))

    def __str__(self) -> str:
        name = _NAMES3[self.image]
        return name if name == "e" else f"({name})"

    @property
    def name(self) -> str:
        return _NAMES3[self.image]


def all_perm3() -> list[Perm3]:
    return [Perm3(_CYCLES3[k]) for k in ("e", "12", "13", "23", "123", "132")]


@dataclass(frozen=True, order=True)
class Perm2:
    image: Tuple[int, int]

    def __post_init__(self):
        if tuple(sorted(self.image)) != (1, 2):
            raise ValueError(f"not a permutation of 1,2: {self.image}")

    @classmethod
    def parse(cls, text: str) -> "Perm2":
        key = text.strip().strip("()").replace(" ", "")
        if key in ("e", "", "id"):
            return cls((1, 2))
        if key == "12":
            return cls((2, 1))
        raise ValueError(f"unknown permutation {text!r}; use e or (12)")

    def __call__(self, c: int) -> int:
        return self.image[c - 1]

    def __mul__(self, other: "Perm2") -> "Perm2":
        return Perm2(tuple(self(other(j)) for j in (1, 2)))

    def matrix(self) -> Matrix:
        m = [[0, 0], [0, 0]]
        for j in (1, 2):
            m[self(j) - 1][j - 1] = 1
        return tuple(tuple(r) for r in m)

    def __str__(self) -> str:
        return "e" if self.image == (1, 2) else "(12)"


def perm_to_matrix(p: Perm3) -> Matrix:
    m = [[0] * 3 for _ in range(3)]
    for j in (1, 2, 3):
        m[p(j) - 1][j - 1] = 1
    return tuple(tuple(r) for r in m)


# ---------------------------------------------------------------- matrices

def identity(n: int = 3) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)) for i in range(n)
    )


def matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a)))


def matprod(mats: Sequence[Matrix], n: int = 3) -> Matrix:
    out = identity(n)
    for m in mats:
        out = matmul(out, m)
    return out


def det(m: Matrix) -> int:
    if len(m) == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    a, b, c = m
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def unimodular_inverse(m: Matrix) -> Matrix:
    """Exact inverse of an integer matrix with determinant +-1 (adjugate / det)."""
    d = det(m)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={d})")
    if len(m) == 2:
        (a, b), (c, e) = m
        return ((e * d, -b * d), (-c * d, a * d))
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
            cof[i][j] = (-1) ** (i + j) * minor
    # adjugate is the transpose of the cofactor matrix
    return tuple(tuple(cof[j][i] * d for j in range(3)) for i in range(3))


# ------------------------------------------------------------------ triples

F0: Matrix = ((0, 0, 1), (1, 0, 0), (0, 1, 1))
F1: Matrix = ((1, 0, 1), (0, 1, 0), (0, 0, 1))
FAREY = (F0, F1)

_TRIPLE_RE = re.compile(r"^\(?\s*([^,()]+|\(\d+\))\s*,\s*([^,()]+|\(\d+\))\s*,\s*([^,()]+|\(\d+\))\s*\)?$")


@dataclass(frozen=True, order=True)
class TripTriple:
    sigma: Perm3
    tau0: Perm3
    tau1: Perm3

    @classmethod
    def parse(cls, text: str) -> "TripTriple":
        m = _TRIPLE_RE.match(text.strip())
        if not m:
            raise ValueError(f"bad triple {text!r}; expected e.g. '(e,13,e)'")
        return cls(*(Perm3.parse(g) for g in m.groups()))

    def tau(self, i: int) -> Perm3:
        return self.tau1 if i else self.tau0

    def __str__(self) -> str:
        return f"({self.sigma.name},{self.tau0.name},{self.tau1.name})"


def T(text: str) -> TripTriple:
    """Shorthand parser: ``T('e,13,e')``."""
    return TripTriple.parse(text)


def all_triples() -> Iterator[TripTriple]:
    for s, a, b in itertools.product(all_perm3(), repeat=3):
        yield TripTriple(s, a, b)


def farey_matrix(i: int, t: TripTriple) -> Matrix:
    """sigma F_i tau_i."""
    return matmul(matmul(t.sigma.matrix(), FAREY[i]), t.tau(i).matrix())


def farey_product(bits: Sequence[int], t: TripTriple) -> Matrix:
    return matprod([farey_matrix(i, t) for i in bits])
