from __future__ import annotations

import itertools
import random

import pytest

from onepoint import linalg
from onepoint.errors import DimensionError, NotInSemigroupError, NotPointedError, RankError
from onepoint.lattice import pairing
from onepoint.semigroup import INF, AffineSemigroup, Root, build, exponent_key

from helpers import POINTED, brute_decompositions, brute_s_value, sg


def test_build_examples():
    S = build(1, [(2,), (3,)])
    assert S.pointed and S.rank == 1 and S.hilbert_basis() == [(2,), (3,)]
    assert not build(1, [(1,), (-1,)]).pointed
    A2 = build(2, [(1, 0), (1, 1), (1, 2)])
    assert A2.pointed and A2.hilbert_basis() == [(1, 0), (1, 1), (1, 2)]


def test_build_errors():
    with pytest.raises(ValueError):
        AffineSemigroup([])
    with pytest.raises(ValueError):
        AffineSemigroup([(0, 0)])
    with pytest.raises(DimensionError):
        build(2, [(1,)])
    with pytest.raises(RankError):
        AffineSemigroup([tuple(int(i == j) for j in range(7)) for i in range(7)])


def test_duplicates_and_zero_removed():
    S = AffineSemigroup([(1, 0), (0, 0), (1, 0), (0, 1)])
    assert S.generators == ((1, 0), (0, 1))


def test_positivity_is_strict_on_generators():
    for name in POINTED:
        S = sg(name)
        assert all(pairing(g, S.positivity) >= 1 for g in S.m_generators)


def test_pointedness_examples():
    assert sg("N2").is_pointed()
    assert not sg("Z").is_pointed()
    assert not sg("<2,-3>").is_pointed()


def test_non_pointed_queries_raise():
    Z = sg("Z")
    for call in (lambda: Z.member((1,)), lambda: Z.s_value((1,)), lambda: Z.hilbert_basis(),
                 lambda: Z.sublevel(1), lambda: Z.decompositions((0,)), lambda: Z.roots(2)):
        with pytest.raises(NotPointedError):
            call()


def test_hilbert_basis_examples():
    assert AffineSemigroup([(2,), (3,), (4,), (5,)]).hilbert_basis() == [(2,), (3,)]
    assert AffineSemigroup([(1, 0), (0, 1), (1, 1)]).hilbert_basis() == [(0, 1), (1, 0)]


def test_non_standard_lattice_coordinates():
    S = AffineSemigroup([(2, 0), (0, 2), (2, 2)])
    assert S.rank == 2 and S.basis.vectors == ((2, 0), (0, 2))
    assert S.hilbert_basis() == [(0, 1), (1, 0)]
    assert S.to_m((4, 2)) == (2, 1) and S.to_ambient((2, 1)) == (4, 2)
    with pytest.raises(NotInSemigroupError):
        S.to_m((1, 0))
    assert S.sat_member((2, 0)) and not S.sat_member((1, 0))
    # a rank-1 semigroup inside Z^2
    L = AffineSemigroup([(1, 1), (2, 2)])
    assert L.rank == 1 and L.hilbert_basis() == [(1,)]


def test_member_examples():
    S = sg("N<2,3>")
    assert S.member((1,)) is None
    rep = S.member((7,))
    assert rep is not None and rep.evaluate(S.hilbert, 1) == (7,)
    assert S.member((0,)).total == 0
    assert (0,) in S and (1,) not in S and (-2,) not in S
    with pytest.raises(DimensionError):
        S.member((1, 2))


def test_s_value_examples():
    N = sg("N")
    assert [N.s_value((a,)) for a in range(6)] == list(range(6))
    assert sg("N<2,3>").s_value((6,)) == 3
    for name in POINTED:
        S = sg(name)
        assert S.s_value(S.zero) == 0
    with pytest.raises(NotInSemigroupError):
        sg("N<2,3>").s_value((1,))


def test_decompositions_examples():
    assert sg("N2").decompositions((1, 1)) == [((0, 0), (1, 1)), ((0, 1), (1, 0)),
                                               ((1, 0), (0, 1)), ((1, 1), (0, 0))]
    assert sg("N").decompositions((0,)) == [((0,), (0,))]
    assert sg("N<2,3>").decompositions((5,)) == [((0,), (5,)), ((2,), (3,)),
                                                 ((3,), (2,)), ((5,), (0,))]
    assert sg("N<2,3>").decompositions((1,)) == []


def test_sat_member_examples():
    S = sg("N<2,3>")
    assert S.sat_member((1,)) and not S.sat_member((-1,))
    assert sg("N2").sat_member((1, 1))


def test_sublevel_examples():
    assert sg("N<2,3>").sublevel(2) == [(0,), (2,), (3,), (4,), (5,)]
    for name in POINTED:
        S = sg(name)
        assert S.sublevel(0) == [S.zero]
        assert sorted(S.sublevel(1)) == sorted([S.zero] + S.hilbert_basis())
    with pytest.raises(ValueError):
        sg("N").sublevel(-1)


@pytest.mark.parametrize("name", POINTED)
def test_membership_three_ways(name):
    """member, decompositions and s_value agree with each other and brute force."""
    S = sg(name)
    top = 12 if S.rank == 1 else 6
    box = range(-2, top + 1)
    for a in itertools.product(box, repeat=S.rank):
        if not 0 <= pairing(a, S.positivity) <= top:
            continue
        present = S.member(a) is not None
        assert present == bool(S.decompositions(a))
        if present:
            assert S.s_value(a) == brute_s_value(S, a)
            assert S.member(a).evaluate(S.hilbert, S.rank) == a
        else:
            with pytest.raises(NotInSemigroupError):
                S.s_value(a)


@pytest.mark.parametrize("name", POINTED)
def test_decompositions_symmetric_and_complete(name):
    S = sg(name)
    for a in S.sublevel(3):
        got = S.decompositions(a)
        assert got == brute_decompositions(S, a, max(abs(x) for x in a) + 1)
        assert {(c, b) for b, c in got} == set(got)


@pytest.mark.parametrize("name", POINTED)
def test_s_value_properties(name):
    S = sg(name)
    rng = random.Random(7)
    els = S.sublevel(3)
    for h in S.hilbert_basis():
        assert S.s_value(h) == 1
    for a in els:
        assert (S.s_value(a) == 0) == (a == S.zero)
    for _ in range(200):
        a, b = rng.choice(els), rng.choice(els)
        assert S.s_value(linalg.add(a, b)) >= S.s_value(a) + S.s_value(b)


def test_roots_examples():
    assert sg("N").roots(3) == [Root((-1,), (1,))]
    assert sg("N<2,3>").roots(3) == []
    assert sg("N2").roots(1) == [Root((-1, 0), (1, 0)), Root((-1, 1), (1, 0)),
                                 Root((0, -1), (0, 1)), Root((1, -1), (0, 1))]
    assert sg("N").roots(0) == []


def test_root_reducibility_examples():
    N2 = sg("N2")
    assert N2.root_reduction((-1, 1), 3) == ((-1, 0), (0, 1))
    assert not N2.is_root_reducible((-1, 0), 4)
    assert not sg("N").is_root_reducible((-1,), 4)
    with pytest.raises(ValueError):
        N2.is_root_reducible((1, 1), 3)


@pytest.mark.parametrize("name", POINTED)
def test_root_invariants(name):
    S = sg(name)
    for e, rho in S.roots(4):
        minus = linalg.scale(-1, e)
        if S.contains(minus):
            assert minus in S.hilbert_basis()
        if S.is_root_reducible(e, 4):
            assert not S.contains(minus)


@pytest.mark.parametrize("name", POINTED)
def test_s_monotone_under_root_addition(name):
    """s(a + e) >= s(a) for roots with -e outside S (fails for e = -1 on N)."""
    S = sg(name)
    for e, rho in S.roots(3):
        if S.contains(linalg.scale(-1, e)):
            continue
        for a in S.sublevel(4):
            b = linalg.add(a, e)
            if pairing(a, rho) != 0 and S.contains(b):
                assert S.s_value(b) >= S.s_value(a), (e, a)


def test_s_monotone_needs_minus_e_outside_S():
    N = sg("N")
    assert N.s_value((1,)) < N.s_value((2,))


def test_exponent_key_orders_inf_last():
    S = sg("N<2,3>")
    keys = sorted([INF, (3,), (0,), (6,), (2,)], key=lambda a: exponent_key(a, S.s_value))
    assert keys == [(0,), (2,), (3,), (6,), INF]
    assert repr(INF) == "INF" and str(INF) == "inf"
