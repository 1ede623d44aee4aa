import math
import random
from fractions import Fraction

import pytest

from trip.algebra import Perm2, T, all_triples, farey_product
from trip.trip_dynamics import (
    EXHAUSTED,
    HIT_ZERO,
    REACHED,
    Point2,
    Point3,
    UndefinedPoint,
    classify_branch,
    code_point,
    e13e_projection,
    farey_to_gauss,
    gauss_step_e13e,
    gauss_step_eee,
    gauss_step_generic,
    hidden_r2_orbit,
    interval_branch,
    interval_map,
    r2_branch,
    r2_step,
    region_of,
    trip_step,
)

P = Point3.parse
E = T("(e,e,e)")
E13E = T("(e,13,e)")


def random_point(rnd: random.Random, bound: int = 10**6) -> Point3:
    a, b, c = (rnd.randrange(1, bound) for _ in range(3))
    return Point3.projective((a, b, c))


def test_point_validation():
    with pytest.raises(ValueError):
        Point3(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        P("1/2,1/2")


def test_branch_classification_of_eee():
    assert classify_branch(P("1/6,1/3,1/2"), E) == 0
    assert classify_branch(P("1/2,1/4,1/4"), E) == 1
    # boundary x = z goes to branch 1
    assert classify_branch(P("1/4,1/2,1/4"), E) == 1


def test_trip_step_of_eee():
    assert trip_step(P("1/6,1/3,1/2"), E) == P("2/5,2/5,1/5")
    assert trip_step(P("1/2,1/4,1/4"), E) == P("1/3,1/3,1/3")


def test_trip_step_inverts_farey_matrix(rng):
    # T_i(t) sends the cell back onto the triangle: F_i(t) applied to the image is the point
    for _ in range(200):
        t = rng.choice(list(all_triples()))
        p = random_point(rng)
        i = classify_branch(p, t)
        q = trip_step(p, t)
        m = farey_product([i], t)
        back = Point3.projective([sum(m[r][c] * q.coords()[c] for c in range(3)) for r in range(3)])
        assert back == p


def test_fixed_point_of_branch_is_fixed():
    # (0,1,0) is a column of F_1(e,e,e) fixed by T_1
    p = P("0,1,0")
    assert trip_step(p, E) == p


def test_code_point_examples():
    f, g = code_point(P("1/6,1/3,1/2"), E, 4)
    assert f.symbols == [0, 1, 1, 0]
    assert g.ks == [0, 2]
    f, g = code_point(P("1/6,1/3,1/2"), E, 0)
    assert f.symbols == [] and g.ks == []
    assert code_point(P("1/3,1/3,1/3"), E, 1)[0].symbols == [1]


def test_farey_to_gauss_run_lengths():
    g = farey_to_gauss([1, 1, 0, 0, 1, 0, 1])
    assert g.ks == [2, 0, 1] and g.truncated


def test_code_point_lands_in_its_cell(rng):
    # oracle: the point lies in the cone of the product of the coded matrices
    for _ in range(100):
        t = rng.choice(list(all_triples()))
        p = random_point(rng)
        bits = code_point(p, t, 8)[0].symbols
        m = farey_product(bits, t)
        cols = [[Fraction(m[r][c]) for r in range(3)] for c in range(3)]
        # solve m * lam = p by Cramer's rule, all lam >= 0
        def det3(a):
            return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                    - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                    + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
        rows = [[cols[c][r] for c in range(3)] for r in range(3)]
        d = det3(rows)
        for j in range(3):
            rj = [[p.coords()[r] if c == j else rows[r][c] for c in range(3)] for r in range(3)]
            assert det3(rj) / d >= 0


def test_gauss_steps_match_displayed_values():
    assert gauss_step_eee(P("3/7,2/7,2/7")) == (1, P("1/2,1/4,1/4"))
    assert gauss_step_eee(P("1/6,1/3,1/2")) == (0, P("2/5,2/5,1/5"))
    assert gauss_step_eee(P("0,1/2,1/2")) == (0, P("1/2,1/2,0"))
    assert gauss_step_e13e(P("3/7,2/7,2/7")) == (1, P("1/4,1/4,1/2"))
    assert gauss_step_e13e(P("1/2,0,1/2")) == (1, P("0,1,0"))
    with pytest.raises(UndefinedPoint):
        gauss_step_eee(P("1/2,1/2,0"))


def test_gauss_steps_equal_composed_farey_steps(rng):
    for _ in range(1000):
        p = random_point(rng)
        assert gauss_step_eee(p) == gauss_step_generic(p, E)
        assert gauss_step_e13e(p) == gauss_step_generic(p, E13E)


def test_region_A_is_gauss_cell_zero(rng):
    for _ in range(300):
        p = random_point(rng)
        if region_of(p) == "A":
            assert gauss_step_e13e(p)[0] == 0


def test_regions_and_projections():
    assert region_of(P("1/6,1/6,2/3")) == "A"
    assert region_of(P("1/6,1/2,1/3")) == "B"
    assert region_of(P("2/5,1/5,2/5")) == "C"
    assert e13e_projection(P("1/6,1/6,2/3"), "A") == Fraction(1, 2)
    assert e13e_projection(P("1/6,1/2,1/3"), "B") == Fraction(2, 3)
    assert interval_map(Fraction(2, 5)) == Fraction(1, 2)
    with pytest.raises(ValueError):
        e13e_projection(P("2/5,1/5,2/5"), "A")


def test_interval_branches_agree_with_ceiling_map(rng):
    for _ in range(300):
        g = Fraction(rng.randrange(1, 10**5), 10**5 + rng.randrange(1, 10**4))
        k = math.ceil(1 / g) - 2
        assert interval_branch(g, k) == interval_map(g)


# ------------------------------------------------------------------ hidden R^2

def test_hidden_r2_orbit_examples():
    assert hidden_r2_orbit(2, 5, 3) == (REACHED, 0)
    assert hidden_r2_orbit(3, 1, 5) == (REACHED, 1)
    assert hidden_r2_orbit(5, 3, 4) == (HIT_ZERO, 6)
    assert hidden_r2_orbit(5, 3, 4, max_steps=2) == (EXHAUSTED, 2)
    with pytest.raises(ValueError):
        hidden_r2_orbit(0, 1, 1)


def test_hidden_r2_orbit_against_hand_iteration():
    def oracle(x, y, z, cap=10_000):
        for s in range(cap):
            if y > z:
                return REACHED, s
            if 0 in (x, y, z):
                return HIT_ZERO, s
            k = x // z
            x, y, z = x - k * z, (k + 1) * z - x, y
        return EXHAUSTED, cap
    rnd = random.Random(9)
    for _ in range(500):
        pt = [rnd.randrange(1, 10**6) for _ in range(3)]
        assert hidden_r2_orbit(*pt, max_steps=10_000) == oracle(*pt)


# ---------------------------------------------------------------------- R^2 maps

def _euclid_digits(r: Fraction) -> list[int]:
    out = []
    while r:
        r = 1 / r
        a = r.numerator // r.denominator
        out.append(a)
        r -= a
    return out


def test_eee_r2_map_is_the_farey_map(rng):
    """Farey symbols are 1^(a-1) 0 per continued-fraction digit a, read until the point hits 1/2."""
    e = Perm2.parse("e")
    t2 = (e, e, e)
    for _ in range(300):
        r = Fraction(rng.randrange(1, 10**6), 10**6 + rng.randrange(1, 10**6))
        expected = "".join("1" * (a - 1) + "0" for a in _euclid_digits(r))
        p, got = Point2(r, 1), ""
        while p.ratio not in (0, Fraction(1, 2), 1) and len(got) < len(expected):
            got += str(r2_branch(p, t2))
            p = r2_step(p, t2)
        assert expected.startswith(got)
        assert len(got) >= 1


def test_e12e_r2_map_is_the_backward_map(rng):
    """One run 1^k 0 of (e,12,e) is a step of the ceiling map with k = ceil(1/r) - 2."""
    e, s = Perm2.parse("e"), Perm2.parse("(12)")
    t2 = (e, s, e)
    for _ in range(300):
        r = Fraction(rng.randrange(1, 10**6), 10**6 + rng.randrange(1, 10**6))
        p = Point2(r, 1)
        for _ in range(5):
            start, k, hit = p.ratio, 0, False
            if start in (0, 1):
                break
            while r2_branch(p, t2) == 1:
                p = r2_step(p, t2)
                k += 1
                hit |= p.ratio == Fraction(1, 2)
            p = r2_step(p, t2)
            if hit or start == Fraction(1, 2):
                break
            c = math.ceil(1 / start)
            assert k == c - 2
            assert p.ratio == c - 1 / start


def test_r2_branch_fixed_point():
    e = Perm2.parse("e")
    p = Point2(1, 1)
    assert r2_step(p, (e, e, e)).ratio == 0
    e, s = Perm2.parse("e"), Perm2.parse("(12)")
    assert r2_step(Point2(1, 1), (e, s, e)).ratio == 1
