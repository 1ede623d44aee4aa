"""Exact orbits of TRIP maps on the triangle and their codings."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    Matrix,
    Perm2,
    TripTriple,
    farey_matrix,
    matmul,
    matvec,
    unimodular_inverse,
)


class UndefinedPoint(ValueError):
    """The map (or its Gauss version) is undefined at this point."""


@dataclass(frozen=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if min(self.x, self.y, self.z) < 0 or self.x + self.y + self.z != 1:
            raise ValueError(f"point not in the triangle: {self}")

    @classmethod
    def parse(cls, text: str) -> "Point3":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 3:
            raise ValueError(f"bad point {text!r}; expected 'x/y,x/y,x/y'")
        return cls(*(Fraction(p) for p in parts))

    @classmethod
    def projective(cls, v: Sequence) -> "Point3":
        s = sum(Fraction(c) for c in v)
        if s == 0:
            raise UndefinedPoint("zero renormalization denominator")
        return cls(*(Fraction(c) / s for c in v))

    def coords(self) -> tuple:
        return (self.x, self.y, self.z)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords())


@dataclass
class FareyCode:
    symbols: list[int] = field(default_factory=list)
    truncated: bool = False


@dataclass
class GaussCode:
    ks: list[int] = field(default_factory=list)
    truncated: bool = False


def _barycentric(m: Matrix, p: Point3) -> tuple:
    return matvec(unimodular_inverse(m), p.coords())


def classify_branch(p: Point3, t: TripTriple) -> int:
    """Branch i with p in the cone of F_i(t); boundary points go to branch 1."""
    if all(c >= 0 for c in _barycentric(farey_matrix(1, t), p)):
        return 1
    if all(c >= 0 for c in _barycentric(farey_matrix(0, t), p)):
        return 0
    raise ValueError(f"point {p} lies in neither subtriangle")  # cannot happen on the triangle


def trip_step(p: Point3, t: TripTriple) -> Point3:
    i = classify_branch(p, t)
    return Point3.projective(_barycentric(farey_matrix(i, t), p))


def farey_to_gauss(bits: Sequence[int]) -> GaussCode:
    ks, run = [], 0
    for b in bits:
        if b:
            run += 1
        else:
            ks.append(run)
            run = 0
    return GaussCode(ks, truncated=run > 0)


def code_point(p: Point3, t: TripTriple, n: int) -> tuple[FareyCode, GaussCode]:
    bits = []
    for _ in range(n):
        i = classify_branch(p, t)
        bits.append(i)
        p = Point3.projective(_barycentric(farey_matrix(i, t), p))
    g = farey_to_gauss(bits)
    return FareyCode(bits, truncated=True), g


def gauss_step_eee(p: Point3) -> tuple[int, Point3]:
    x, y, z = p.coords()
    if z == 0:
        raise UndefinedPoint("Gauss map undefined for z = 0")
    k = math.floor(x / z)
    d = y + z
    return k, Point3(y / d, ((k + 1) * z - x) / d, (x - k * z) / d)


def gauss_step_e13e(p: Point3) -> tuple[int, Point3]:
    x, y, z = p.coords()
    if z == 0:
        raise UndefinedPoint("Gauss map undefined for z = 0")
    k = math.floor(x / z)
    d = y + z
    return k, Point3((x - k * z) / d, ((k + 1) * z - x) / d, y / d)


def gauss_step_generic(p: Point3, t: TripTriple, max_ones: int = 10_000) -> tuple[int, Point3]:
    """Gauss step by iterating Farey steps: k ones then a zero."""
    k = 0
    while classify_branch(p, t) == 1:
        p = trip_step(p, t)
        k += 1
        if k > max_ones:
            raise UndefinedPoint("no 0 symbol within the step budget")
    return k, trip_step(p, t)


# ------------------------------------------------------------- (e,13,e)

def region_of(p: Point3) -> str:
    if p.z >= p.x + p.y:
        return "A"
    if p.y >= p.z:
        return "B"
    return "C"


def e13e_projection(p: Point3, which: str) -> Fraction:
    if which == "A":
        if p.x + p.y == 0 or region_of(p) != "A":
            raise ValueError("pi_A needs a point of A other than (0,0,1)")
        return p.y / (p.x + p.y)
    if which == "B":
        if p.x + p.z == 0 or p.y < p.z:
            raise ValueError("pi_B needs a point of B other than (0,1,0)")
        return p.z / (p.x + p.z)
    raise ValueError("which must be 'A' or 'B'")


def interval_map(gamma: Fraction) -> Fraction:
    """F(gamma) = ceil(1/gamma) - 1/gamma."""
    gamma = Fraction(gamma)
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    inv = 1 / gamma
    return math.ceil(inv) - inv


def interval_branch(gamma: Fraction, k: int) -> Fraction:
    """F_k(gamma) = k + 2 - 1/gamma, the branch of F used on the k-th Gauss cell."""
    return k + 2 - 1 / Fraction(gamma)


# --------------------------------------------------------------- hidden R^2

REACHED, HIT_ZERO, EXHAUSTED = "ReachedYgtZ", "HitZero", "Exhausted"


def hidden_r2_orbit(x: int, y: int, z: int, max_steps: int = 100_000) -> tuple[str, int]:
    """Iterate (x,y,z) -> (x-kz, (k+1)z-x, y), k = floor(x/z)."""
    if min(x, y, z) <= 0:
        raise ValueError("hidden_r2_orbit needs positive integers")
    for steps in range(max_steps + 1):
        if y > z:
            return REACHED, steps
        if x == 0 or y == 0 or z == 0:
            return HIT_ZERO, steps
        if steps == max_steps:
            break
        k = x // z
        x, y, z = x - k * z, (k + 1) * z - x, y
    return EXHAUSTED, max_steps


# ---------------------------------------------------------------- R^2 maps

R2_F = (((0, 1), (1, 1)), ((1, 1), (0, 1)))
R2_V: Matrix = ((0, 1), (1, 1))


@dataclass(frozen=True)
class Point2:
    x: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "z", Fraction(self.z))
        if self.x < 0 or self.z < self.x:
            raise ValueError("point outside the cone 0 <= x <= z")

    @property
    def ratio(self) -> Fraction:
        return self.x / self.z


def r2_matrices(t2: tuple[Perm2, Perm2, Perm2]) -> tuple[Matrix, Matrix]:
    s, a, b = t2
    return tuple(matmul(matmul(s.matrix(), R2_F[i]), (a, b)[i].matrix()) for i in (0, 1))


def r2_branch(p: Point2, t2) -> int:
    for i in (1, 0):
        cone = matmul(R2_V, r2_matrices(t2)[i])
        if all(c >= 0 for c in matvec(unimodular_inverse(cone), (p.x, p.z))):
            return i
    raise ValueError("point outside both subcones")


def r2_step(p: Point2, t2) -> Point2:
    i = r2_branch(p, t2)
    fi = r2_matrices(t2)[i]
    tmat = matmul(matmul(R2_V, unimodular_inverse(fi)), unimodular_inverse(R2_V))
    x, z = matvec(tmat, (p.x, p.z))
    s = x + z
    if s == 0:
        raise UndefinedPoint("zero renormalization denominator")
    return Point2(x / s, z / s)


def r2_code(p: Point2, t2, n: int) -> list[int]:
    bits = []
    for _ in range(n):
        bits.append(r2_branch(p, t2))
        p = r2_step(p, t2)
    return bits
