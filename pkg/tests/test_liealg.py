import random
from fractions import Fraction

import pytest

from loopmod.cyclotomic import CycVector
from loopmod.errors import InputError, UnsupportedError
from loopmod.liealg import (
    apply_aut,
    build_algebra,
    build_aut,
    node_orbits,
    primitive_root_of_unity,
    restrict_weight,
    weyl_dim,
)


def test_cartan_tables():
    assert build_algebra("A", 1).cartan == ((2,),)
    assert build_algebra("A", 2).cartan == ((2, -1), (-1, 2))
    B2 = build_algebra("B", 2).cartan
    assert B2 == ((2, -1), (-2, 2))
    C2 = build_algebra("C", 2).cartan
    assert C2 == ((2, -2), (-1, 2))
    G2 = build_algebra("G", 2).cartan
    assert G2[0][1] * G2[1][0] == 3


@pytest.mark.parametrize(
    "series,rank,count",
    [
        ("A", 1, 1),
        ("A", 2, 3),
        ("A", 3, 6),
        ("B", 2, 4),
        ("B", 3, 9),
        ("C", 3, 9),
        ("D", 4, 12),
        ("G", 2, 6),
        ("F", 4, 24),
        ("E", 6, 36),
    ],
)
def test_positive_root_counts(series, rank, count):
    assert len(build_algebra(series, rank).positive_roots) == count


def test_unsupported_pairs():
    with pytest.raises(UnsupportedError):
        build_algebra("E", 5)
    with pytest.raises(UnsupportedError):
        build_algebra("G", 3)
    with pytest.raises(UnsupportedError):
        build_algebra("X", 2)


def test_weyl_dim_sl2_string():
    A1 = build_algebra("A", 1)
    for m in range(6):
        assert weyl_dim(A1, (m,)) == m + 1


def test_weyl_dim_frozen_values():
    A2 = build_algebra("A", 2)
    assert weyl_dim(A2, (0, 0)) == 1
    assert weyl_dim(A2, (1, 0)) == 3
    assert weyl_dim(A2, (1, 1)) == 8
    assert weyl_dim(A2, (2, 0)) == 6
    assert weyl_dim(A2, (2, 2)) == 27
    B2 = build_algebra("B", 2)
    assert weyl_dim(B2, (1, 0)) == 5
    assert weyl_dim(B2, (0, 1)) == 4
    C2 = build_algebra("C", 2)
    assert {weyl_dim(C2, (1, 0)), weyl_dim(C2, (0, 1))} == {4, 5}
    G2 = build_algebra("G", 2)
    assert {weyl_dim(G2, (1, 0)), weyl_dim(G2, (0, 1))} == {7, 14}
    D4 = build_algebra("D", 4)
    assert weyl_dim(D4, (1, 0, 0, 0)) in (8, 28)


def test_weyl_dim_rejects_non_dominant():
    with pytest.raises(InputError):
        weyl_dim(build_algebra("A", 2), (1, -1))


def test_build_aut_validation():
    A2 = build_algebra("A", 2)
    flip = build_aut(A2, (1, 0))
    assert flip.order == 2
    ident = build_aut(A2, (0, 1))
    assert ident.order == 1
    with pytest.raises(InputError):
        build_aut(build_algebra("A", 3), (1, 0, 2))  # breaks the Cartan matrix
    with pytest.raises(InputError):
        build_aut(A2, (0, 0))
    D4 = build_algebra("D", 4)
    tri = build_aut(D4, (2, 1, 3, 0))
    assert tri.order == 3


def test_apply_aut_examples():
    A2 = build_algebra("A", 2)
    flip = build_aut(A2, (1, 0))
    assert apply_aut(flip, (1, 2)) == (2, 1)
    assert apply_aut(flip, (5, 5)) == (5, 5)
    D4 = build_algebra("D", 4)
    tri = build_aut(D4, (2, 1, 3, 0))
    w = (1, 2, 3, 4)
    out = apply_aut(tri, w)
    assert sorted(out) == sorted(w) and out[1] == 2


def test_apply_aut_is_an_action():
    rng = random.Random(3)
    D4 = build_algebra("D", 4)
    tri = build_aut(D4, (2, 1, 3, 0))
    A2 = build_algebra("A", 2)
    flip = build_aut(A2, (1, 0))
    for aut, rank in ((tri, 4), (flip, 2)):
        for _ in range(20):
            w = tuple(rng.randint(0, 5) for _ in range(rank))
            out = w
            for _ in range(aut.order):
                out = apply_aut(aut, out)
            assert out == w


def test_restrict_weight_a2_examples():
    A2 = build_algebra("A", 2)
    flip = build_aut(A2, (1, 0))
    sym = restrict_weight(flip, (3, 3), 2)
    assert sym.comp0 == (Fraction(6),)
    assert sym.higher_vanish
    fund = restrict_weight(flip, (1, 0), 2)
    assert fund.comp0 == (Fraction(1),)
    assert fund.higher[0][0] == CycVector.from_rational(1, 2)
    assert not fund.higher_vanish


def test_restrict_weight_identity_aut():
    A2 = build_algebra("A", 2)
    ident = build_aut(A2, (0, 1))
    rw = restrict_weight(ident, (2, 5), 1)
    assert rw.comp0 == (Fraction(2), Fraction(5))
    assert rw.higher == ()


def test_restrict_fixed_iff_higher_vanish():
    rng = random.Random(9)
    cases = [
        (build_aut(build_algebra("A", 2), (1, 0)), 2, 2),
        (build_aut(build_algebra("D", 4), (2, 1, 3, 0)), 4, 3),
    ]
    for aut, rank, order in cases:
        for _ in range(40):
            w = tuple(rng.randint(0, 3) for _ in range(rank))
            rw = restrict_weight(aut, w, 6)
            assert rw.higher_vanish == (apply_aut(aut, w) == w)


def test_node_orbits_deterministic():
    D4 = build_algebra("D", 4)
    tri = build_aut(D4, (2, 1, 3, 0))
    assert node_orbits(tri) == [(0, 2, 3), (1,)]


def test_primitive_root_of_unity():
    assert primitive_root_of_unity(1, 5).is_one
    m = primitive_root_of_unity(2, 5)
    assert m.q == -1 and m.e == 0
    z3 = primitive_root_of_unity(3, 6)
    assert (z3 ** 3).is_one and not z3.is_one and not (z3 ** 2).is_one
    with pytest.raises(InputError):
        primitive_root_of_unity(3, 4)
