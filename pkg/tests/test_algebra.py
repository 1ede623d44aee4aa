import itertools
import random

import numpy as np
import pytest

from trip.algebra import (
    F0,
    F1,
    Perm2,
    Perm3,
    T,
    TripTriple,
    all_perm3,
    all_triples,
    det,
    farey_matrix,
    farey_product,
    identity,
    matmul,
    perm_to_matrix,
    unimodular_inverse,
)


def test_perm_matrices_match_displayed_forms():
    assert perm_to_matrix(Perm3.identity()) == identity(3)
    assert perm_to_matrix(Perm3.parse("(12)")) == ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    assert perm_to_matrix(Perm3.parse("(123)")) == ((0, 0, 1), (1, 0, 0), (0, 1, 0))


def test_perm_parse_accepts_both_spellings():
    assert Perm3.parse("12") == Perm3.parse("(12)")
    assert Perm3.parse("e").name == "e"
    with pytest.raises(ValueError):
        Perm3.parse("(14)")


def test_composition_matches_matrix_product():
    for p, q in itertools.product(all_perm3(), repeat=2):
        assert (p * q).matrix() == matmul(p.matrix(), q.matrix())
        for c in (1, 2, 3):
            assert (p * q)(c) == p(q(c))


def test_inverse_and_group_size():
    perms = all_perm3()
    assert len(set(perms)) == 6
    for p in perms:
        assert p * p.inverse() == Perm3.identity()


def test_perm2():
    s = Perm2.parse("(12)")
    assert s * s == Perm2.parse("e")
    assert s.matrix() == ((0, 1), (1, 0))


def test_farey_matrices_of_eee():
    E = T("(e,e,e)")
    assert farey_matrix(0, E) == ((0, 0, 1), (1, 0, 0), (0, 1, 1)) == F0
    assert farey_matrix(1, E) == ((1, 0, 1), (0, 1, 0), (0, 0, 1)) == F1
    assert farey_product([1, 1, 0], E) == ((0, 2, 3), (1, 0, 0), (0, 1, 1))


def test_gauss_cell_matrix_closed_form():
    E = T("(e,e,e)")
    for k in range(8):
        assert farey_product([1] * k + [0], E) == ((0, k, k + 1), (1, 0, 0), (0, 1, 1))


def test_all_216_triples_are_distinct_and_unimodular():
    triples = list(all_triples())
    assert len(set(triples)) == 216
    for t in triples:
        for i in (0, 1):
            assert abs(det(farey_matrix(i, t))) == 1


def test_unimodular_inverse_against_numpy():
    assert unimodular_inverse(identity(3)) == identity(3)
    assert unimodular_inverse(F1) == ((1, 0, -1), (0, 1, 0), (0, 0, 1))
    rnd = random.Random(3)
    E = T("(e,e,e)")
    for _ in range(50):
        bits = [rnd.randrange(2) for _ in range(rnd.randrange(1, 12))]
        m = farey_product(bits, E)
        inv = unimodular_inverse(m)
        assert matmul(m, inv) == identity(3)
        assert np.allclose(np.linalg.inv(np.array(m, dtype=float)), np.array(inv, dtype=float))


def test_unimodular_inverse_rejects_singular():
    with pytest.raises(ValueError):
        unimodular_inverse(((1, 2, 3), (2, 4, 6), (0, 0, 1)))


def test_triple_parsing_round_trip():
    for t in all_triples():
        assert TripTriple.parse(str(t)) == t
    assert T("e,13,e") == T("(e, 13, e)") == T("(e,(13),e)")
    with pytest.raises(ValueError):
        T("(e,e)")
