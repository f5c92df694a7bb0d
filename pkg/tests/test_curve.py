"""Combinatorics of the exponent matrix: semigroups, membership, the
exceptional parameter set, and the line arrangements.

Frozen sets below were produced by the brute-force oracles in this file
before being inlined, so each value is covered by two independent routes.
"""

import itertools
from fractions import Fraction

import pytest

from curvegkz.curve import (
    FACET_0,
    FACET_K,
    CurveMatrix,
    NumericalSemigroup,
    ResonantLine,
    delta_conditions,
    facet_semigroup,
    in_NA,
    in_convergence_domain,
    is_rank_jumping,
    is_resonant,
    polar_lines,
    rank,
    rank_jumping_parameters,
    resonant_lines,
)
from curvegkz.errors import MatrixValidationError

A0134 = CurveMatrix([0, 1, 3, 4])
A0145 = CurveMatrix([0, 1, 4, 5])
A023 = CurveMatrix([0, 2, 3])


@pytest.mark.parametrize(
    "exps,reason",
    [
        ([0], "too-short"),
        ([1, 3, 4], "first-not-zero"),
        ([0, 4, 3], "non-monotone"),
        ([0, 3, 3], "non-monotone"),
        ([0, 2, 4], "gcd"),
    ],
)
def test_matrix_validation_rejects(exps, reason):
    with pytest.raises(MatrixValidationError) as info:
        CurveMatrix(exps)
    assert info.value.reason == reason


def test_matrix_validation_type():
    with pytest.raises(TypeError):
        CurveMatrix([0, 1.5, 3])


def test_matrix_basics():
    assert A0134.n == 4 and A0134.k == 4
    assert A0134.columns == ((1, 0), (1, 1), (1, 3), (1, 4))
    assert A0134.degree((1, 0, 2, 0)) == (3, 6)
    with pytest.raises(AttributeError):
        A0134.k = 5
    # 0,3,4 is admissible even though 3 does not divide 4
    assert CurveMatrix([0, 3, 4]).k == 4


def test_numerical_semigroup_known_values():
    S = NumericalSemigroup((3, 4))
    assert S.frobenius == 5
    assert S.gaps == (1, 2, 5)
    assert S.min_parts(12) == 3  # 4+4+4 beats 3+3+3+3
    assert S.min_parts(7) == 2
    assert S.min_parts(0) == 0
    assert S.min_parts(5) is None
    full = NumericalSemigroup((1,))
    assert full.frobenius == -1 and full.gaps == ()


def test_numerical_semigroup_membership_brute():
    gens = (4, 7, 9)
    S = NumericalSemigroup(gens)
    for m in range(40):
        brute = any(
            sum(c * g for c, g in zip(cs, gens)) == m
            for cs in itertools.product(range(11), repeat=3)
        )
        assert (m in S) == brute, m


def test_facet_semigroups():
    assert facet_semigroup(A0134, FACET_0).gens == (1, 3, 4)
    assert facet_semigroup(A0134, FACET_K).gens == (1, 3, 4)
    assert facet_semigroup(A023, FACET_0).gens == (1, 3)
    assert facet_semigroup(A023, FACET_K).gens == (2, 3)
    assert facet_semigroup(A023, FACET_K).gaps == (1,)


def _in_NA_brute(A, b1, b2):
    if b1 < 0 or b1 != int(b1):
        return False
    b1 = int(b1)
    # b1 columns must be chosen, so enumerate weak compositions of b1
    for cs in itertools.product(range(b1 + 1), repeat=A.n):
        if sum(cs) == b1 and sum(c * e for c, e in zip(cs, A.exponents)) == b2:
            return True
    return False


@pytest.mark.parametrize("A", [A0134, A023])
def test_in_NA_matches_brute(A):
    for b1 in range(-1, 5):
        for b2 in range(-2, 4 * b1 + 3 if b1 >= 0 else 3):
            assert in_NA(A, (b1, b2)) == _in_NA_brute(A, b1, b2), (b1, b2)
    assert not in_NA(A, (Fraction(1, 2), Fraction(1)))


def test_exceptional_sets_frozen():
    assert rank_jumping_parameters(A0134) == [(1, 2)]
    assert rank_jumping_parameters(A0145) == [(1, 2), (1, 3), (2, 3), (2, 7)]
    assert rank_jumping_parameters(A023) == []


def test_exceptional_set_stable_under_larger_box():
    # the default search box is proven sufficient; a strictly larger sweep
    # must find nothing new
    got = set(rank_jumping_parameters(A0145, box=(-3, 12, -6, 60)))
    assert got == {(1, 2), (1, 3), (2, 3), (2, 7)}


def test_is_rank_jumping_pointwise():
    assert is_rank_jumping(A0134, (1, 2))
    assert not is_rank_jumping(A0134, (1, 1))
    assert not is_rank_jumping(A0134, (Fraction(1, 2), Fraction(2)))
    assert not is_rank_jumping(A0134, (2, 2))  # (2,2) = a1 + a3 lies in the column semigroup
    assert rank(A0134, (1, 2)) == 5
    assert rank(A0134, (0, 0)) == 4
    assert rank(A023, (1, 2)) == 3


def test_is_resonant():
    assert is_resonant(A0134, (Fraction(1, 3), Fraction(2))) == (FACET_0,)
    assert is_resonant(A0134, (Fraction(3, 4), Fraction(1, 2))) == ()
    assert is_resonant(A0134, (Fraction(1, 8), Fraction(1, 2))) == (FACET_K,)
    assert is_resonant(A0134, (1, 2)) == (FACET_0, FACET_K)


def test_resonant_line_geometry():
    L = ResonantLine(FACET_K, 3, True, 4)
    lam = Fraction(2, 5)
    p = L.point(lam)
    assert p == (lam, 4 * lam - 3)
    assert L.contains(p)
    assert L.level_of((1, 1)) == 3 and L.contains((1, 1))
    assert not L.contains((1, 2))
    M = ResonantLine(FACET_0, 3, True, 4)
    assert M != L
    assert M.point(lam) == (lam, Fraction(3))


def test_polar_levels_023():
    # facet-0 levels are polar iff they lie in the opposite facet semigroup
    # <2,3>, so level 1 is resonant but not polar
    lines = resonant_lines(A023, FACET_0, (0, 5))
    assert [L.level for L in lines] == [0, 1, 2, 3, 4, 5]
    assert [L.polar for L in lines] == [True, False, True, True, True, True]
    assert [L.level for L in polar_lines(A023, FACET_0, (0, 5))] == [0, 2, 3, 4, 5]
    # the other pairing direction uses <1,3> = N, so everything is polar
    assert [L.polar for L in resonant_lines(A023, FACET_K, (0, 4))] == [True] * 5
    # 0134 has both facet semigroups equal to N
    assert all(L.polar for L in resonant_lines(A0134, FACET_0, (0, 8)))
    assert all(L.polar for L in resonant_lines(A0134, FACET_K, (0, 8)))


def test_delta_conditions():
    # delta_conditions carries an internal cross-check against in_NA, so
    # sweeping it doubles as a membership consistency test
    for b1 in range(0, 4):
        for b2 in range(-1, 4 * b1 + 2):
            c1, c2 = delta_conditions(A0134, (b1, b2))
            assert (c1 and c2) == in_NA(A0134, (b1, b2))
    assert delta_conditions(A0134, (Fraction(1, 2), Fraction(1))) == (False, False)
    # at the exceptional point the shifted box is too small to admit any
    # column of Delta, so both witnesses fail even though the two facet
    # memberships (checked elsewhere) hold
    assert delta_conditions(A0134, (1, 2)) == (False, False)
    assert delta_conditions(A0134, (2, 2)) == (True, True)


def test_convergence_domain():
    assert in_convergence_domain(A0134, (-1, -1))
    assert not in_convergence_domain(A0134, (-1, 0))  # boundary is excluded
    assert not in_convergence_domain(A0134, (0, -1))
    assert in_convergence_domain(A0134, (-0.5 + 0.3j, -0.2 - 1j))
    assert not in_convergence_domain(A0134, (-1, -1), margin=5.0)
