import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import apply_images, brute_expand
from trip.algebra import T, all_triples, farey_matrix, farey_product
from trip.substitutions import (
    CodingSeq,
    NotWithinHorizon,
    PositiveAt,
    Substitution,
    abelianize_substitution,
    abelianize_word,
    apply,
    canonical_substitution_from_matrix,
    check_primitive,
    compose,
    dominant_direction,
    estimate_frequency,
    expand,
    expansion_images,
    gauss_substitution,
    random_farey_coding,
    random_gauss_coding,
    subtriangle_point,
    trip_substitution,
)
from trip.trip_dynamics import Point3, code_point

E = T("(e,e,e)")
words = st.text(alphabet="123", max_size=30)
images = st.tuples(*[st.text(alphabet="123", min_size=1, max_size=5)] * 3)


def test_displayed_substitutions():
    assert trip_substitution(0, T("(e,13,e)")).images == ("13", "3", "2")
    assert trip_substitution(0, T("(e,23,23)")).images == ("2", "13", "3")
    assert trip_substitution(1, T("(e,23,23)")).images == ("1", "13", "2")
    assert trip_substitution(1, E, "variant31").image(3) == "31"
    assert trip_substitution(1, E).image(3) == "13"
    with pytest.raises(ValueError):
        trip_substitution(0, E, "variant99")


def test_apply_and_compose():
    g0 = gauss_substitution(E, 0)
    assert apply(g0, "") == ""
    assert g0("13") == "213"
    assert g0(g0(g0("13"))) == "133213"
    assert compose(g0, Substitution.identity()) == g0
    assert gauss_substitution(E, 1).images == ("2", "13", "113")


def test_gauss_substitution_closed_forms():
    for k in range(7):
        assert gauss_substitution(E, k).images == ("2", "1" * k + "3", "1" * (k + 1) + "3")
        assert gauss_substitution(T("(e,13,e)"), k).images == ("1" * (k + 1) + "3", "1" * k + "3", "2")
        assert gauss_substitution(T("(e,23,e)"), k).images == ("2", "1" * (k + 1) + "3", "1" * k + "3")
    with pytest.raises(ValueError):
        gauss_substitution(E, -1)


def test_double_gauss_closed_form():
    e23e = T("(e,23,e)")
    for j, k in itertools.product(range(4), repeat=2):
        s = gauss_substitution(e23e, j) * gauss_substitution(e23e, k)
        assert s.images == ("1" * (j + 1) + "3", "2" * (k + 1) + "1" * j + "3", "2" * k + "1" * j + "3")
    s = gauss_substitution(e23e, 1) * gauss_substitution(e23e, 2)
    assert s.images == ("113", "22213", "2213")


def test_abelianization_examples():
    assert abelianize_word("") == (0, 0, 0)
    assert abelianize_word("133213") == (2, 1, 3)
    assert abelianize_word("1322") == (1, 2, 1)
    assert abelianize_substitution(Substitution(("2", "3", "13"))) == ((0, 0, 1), (1, 0, 0), (0, 1, 1))
    assert abelianize_substitution(Substitution.identity()) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert canonical_substitution_from_matrix(((0, 0, 1), (1, 0, 0), (0, 1, 1))).images == ("2", "3", "13")
    assert canonical_substitution_from_matrix(((0,) * 3,) * 3).images == ("", "", "")


@settings(max_examples=1000, deadline=None)
@given(images, images, words)
def test_abelianization_is_a_homomorphism(a, b, w):
    s, t = Substitution(a), Substitution(b)
    ls, lt = np.array(abelianize_substitution(s)), np.array(abelianize_substitution(t))
    assert (np.array(abelianize_substitution(s * t)) == ls @ lt).all()
    assert (np.array(abelianize_word(s(w))) == ls @ np.array(abelianize_word(w))).all()
    assert (s * t)(w) == s(t(w)) == apply_images(a, apply_images(b, w))


def test_abelianized_trip_substitutions_are_farey_matrices():
    for t in all_triples():
        for i in (0, 1):
            assert abelianize_substitution(trip_substitution(i, t)) == farey_matrix(i, t)


def test_variant31_has_the_same_abelianization():
    for t in all_triples():
        for i in (0, 1):
            assert abelianize_substitution(trip_substitution(i, t, "variant31")) == farey_matrix(i, t)


def test_canonical_round_trip(rng):
    for _ in range(100):
        m = tuple(tuple(rng.randrange(4) for _ in range(3)) for _ in range(3))
        assert abelianize_substitution(canonical_substitution_from_matrix(m)) == m
    with pytest.raises(ValueError):
        canonical_substitution_from_matrix(((-1, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_coding_seq_construction():
    assert CodingSeq.farey("0110").entries == (0, 1, 1, 0)
    assert CodingSeq.gauss("0,2,1").entries == (0, 2, 1)
    seq, dropped = CodingSeq.gauss([1, 2, 3]).pairs()
    assert seq.entries == ((1, 2),) and dropped
    assert CodingSeq.gauss([1, 2, 3]).shift(1).entries == (2, 3)
    for bad in (lambda: CodingSeq.farey("012"), lambda: CodingSeq.gauss([-1]), lambda: CodingSeq("x", ())):
        with pytest.raises(ValueError):
            bad()


def test_expand_against_brute_force(rng):
    for _ in range(50):
        t = rng.choice(list(all_triples()))
        seq = random_farey_coding(rng.randrange(0, 12), rng)
        imgs = [trip_substitution(b, t).images for b in seq.entries]
        assert expand(seq, t, "1") == brute_expand(imgs, "1")
        depth = len(seq)
        assert expansion_images(seq, t, depth) == tuple(brute_expand(imgs, c) for c in "123")


def test_gauss_coding_is_run_length_of_farey():
    rnd = random.Random(5)
    for _ in range(30):
        g = random_gauss_coding(6, rnd)
        bits = "".join("1" * k + "0" for k in g.entries)
        for t in (E, T("(e,13,e)"), T("(e,23,23)")):
            assert expand(g, t) == expand(CodingSeq.farey(bits), t)


def _positive_at_oracle(mats) -> int | None:
    p = np.eye(3, dtype=np.int64)
    for n, m in enumerate(mats, 1):
        p = p @ np.array(m)
        if (p > 0).all():
            return n
    return None


def test_primitivity_of_eee_gauss_codings():
    """Every (e,e,e) Gauss coding becomes positive by step 4; exactly those with k1 = 0 need 4."""
    mats = {k: abelianize_substitution(gauss_substitution(E, k)) for k in range(4)}
    for ks in itertools.product(range(4), repeat=4):
        n = _positive_at_oracle([mats[k] for k in ks])
        assert n is not None and n <= 4
        assert (n == 4) == (ks[1] == 0)
        assert check_primitive(CodingSeq.gauss(ks), E, 4) == PositiveAt(n)


def test_primitivity_failures():
    assert isinstance(check_primitive(CodingSeq.gauss([0] * 40), T("(e,13,e)"), 40), NotWithinHorizon)
    assert check_primitive(CodingSeq.gauss([]), E, 5) == NotWithinHorizon(5)


def test_frequency_is_a_cell_column(rng):
    """Letter counts of the expansion of 1 to depth d are column 1 of the depth-d Farey product."""
    for _ in range(20):
        t = rng.choice(list(all_triples()))
        seq = random_farey_coding(30, rng)
        freq, _ = estimate_frequency(seq, t, 500)
        w = expand(seq, t)
        for d in range(len(seq) + 1):
            m = farey_product(seq.entries[:d], t)
            col = [m[i][0] for i in range(3)]
            if sum(col) >= 500 or d == len(seq):
                break
        assert freq == tuple(Fraction(c, sum(col)) for c in col)
        assert len(w) >= sum(col)


def test_frequency_approaches_a_coded_point(rng):
    checked = 0
    for _ in range(10):
        p = Point3.projective([rng.randrange(10**11, 10**12) for _ in range(3)])
        bits = code_point(p, E, 80)[0].symbols
        freq, _ = estimate_frequency(CodingSeq.farey(bits), E, 5000)
        cell = farey_product(bits, E)
        # p lies in the final cell; its column spread bounds the error
        cols = [[Fraction(cell[i][j], sum(cell[r][j] for r in range(3))) for i in range(3)] for j in range(3)]
        spread = max(abs(cols[a][i] - cols[b][i]) for a in range(3) for b in range(3) for i in range(3))
        if spread < Fraction(1, 100):
            checked += 1
            assert all(abs(freq[i] - p.coords()[i]) <= spread + Fraction(1, 100) for i in range(3))
    assert checked >= 5


def test_frequency_of_constant_gauss_coding():
    m = abelianize_substitution(gauss_substitution(E, 0))
    w, _ = np.linalg.eig(np.array(m, dtype=float))
    direction = dominant_direction(m)
    evals, evecs = np.linalg.eig(np.array(m, dtype=float))
    v = np.real(evecs[:, np.argmax(np.real(evals))])
    v = v / v.sum()
    assert np.allclose(direction, v, atol=1e-9)
    freq, _ = estimate_frequency(CodingSeq.gauss([0] * 60), E, 3000)
    assert np.allclose([float(f) for f in freq], v, atol=5e-3)
