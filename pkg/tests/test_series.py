"""Series solutions: finite polar-line solutions, canonical series at
starting exponents, annihilation identities, and basis assembly.

The dynamic-programming construction of the finite solutions is checked
against direct enumeration of ordered part sequences, which is the defining
formula written out without any sharing.
"""

import itertools
from fractions import Fraction

import pytest

from curvegkz.curve import FACET_0, FACET_K, CurveMatrix
from curvegkz.errors import LogObstructionError, SeriesDenominatorError
from curvegkz.qexact import PolyQ
from curvegkz.series import (
    annihilation_check,
    b_matrix,
    canonical_series,
    coincidence_at_intersection,
    default_step_bound,
    ordered_partitions,
    parametric_derivative,
    polar_line_solution,
    series_for_exponent,
    solution_basis_at_point,
)
from curvegkz.toric import fake_exponents

A0134 = CurveMatrix([0, 1, 3, 4])
A0145 = CurveMatrix([0, 1, 4, 5])
A023 = CurveMatrix([0, 2, 3])
A0234 = CurveMatrix([0, 2, 3, 4])


def test_b_matrix_frozen():
    assert b_matrix(A0134) == {1: (3, 4, 1), 2: (1, 4, 3)}
    assert b_matrix(A0145) == {1: (4, 5, 1), 2: (1, 5, 4)}
    assert b_matrix(A023) == {1: (1, 3, 2)}


def test_ordered_partitions_brute():
    for A in (A0134, A023):
        for facet in (FACET_0, FACET_K):
            values = sorted(
                (A.exponents[i] for i in range(1, A.n))
                if facet == FACET_0
                else (A.k - A.exponents[i] for i in range(A.n - 1))
            )
            for N in range(0, 9):
                brute = sorted(
                    seq
                    for length in range(N + 1)
                    for seq in itertools.product(values, repeat=length)
                    if sum(seq) == N
                )
                assert ordered_partitions(A, facet, N) == brute, (A, facet, N)


def _parts_for(A, facet):
    if facet == FACET_0:
        return {A.exponents[i]: i for i in range(1, A.n)}
    return {A.k - A.exponents[i]: i for i in range(A.n - 1)}


def _brute_polar_solution(A, facet, N):
    # the defining sum: one contribution per ordered sequence of parts, with
    # per-prefix denominators, accumulated into offset-vector terms
    coord = _parts_for(A, facet)
    base = 0 if facet == FACET_0 else A.n - 1
    terms = {}
    for seq in ordered_partitions(A, facet, N):
        coeff = PolyQ([1])
        partial = 0
        for j, part in enumerate(seq):
            partial += part
            coeff = coeff * part  # weight equals the part value
            if j + 1 < len(seq):
                coeff = coeff * PolyQ([-(j + 1), 1]) * Fraction(1, N - partial)
        o = [0] * A.n
        o[base] = -len(seq)
        for part in seq:
            o[coord[part]] += 1
        key = tuple(o)
        terms[key] = terms.get(key, PolyQ()) + coeff
    return {o: c for o, c in terms.items() if not c.is_zero()}


@pytest.mark.parametrize("exps", [(0, 1, 3, 4), (0, 1, 4, 5), (0, 2, 3), (0, 2, 3, 4)])
def test_polar_line_solution_matches_brute(exps):
    A = CurveMatrix(list(exps))
    for facet in (FACET_0, FACET_K):
        for N in range(0, 9):
            sol = polar_line_solution(A, facet, N)
            assert sol.terms == _brute_polar_solution(A, facet, N), (exps, facet, N)


def test_polar_line_solution_frozen_shapes():
    # facet-k level 3: 3 x2 x4^(lam-1) + (lam-1)(lam-2)/2 x3^3 x4^(lam-3)
    sol = polar_line_solution(A0134, FACET_K, 3)
    assert sol.terms == {
        (0, 1, 0, -1): PolyQ([3]),
        (0, 0, 3, -3): PolyQ([-1, 1]) * PolyQ([-2, 1]) * Fraction(1, 2),
    }
    # facet-0 level 2: (lam-1) x1^(lam-2) x2^2, with (lam-1) stripped off
    sol2 = polar_line_solution(A0134, FACET_0, 2)
    assert sol2.terms == {(-2, 2, 0, 0): PolyQ([-1, 1])}
    stripped, removed = sol2.stripped()
    assert removed == PolyQ([-1, 1])
    assert stripped.terms == {(-2, 2, 0, 0): PolyQ([1])}
    assert stripped.removed == PolyQ([-1, 1])
    # facet-0 level 4, mixed term x2 x3: the two orderings (1,3) and (3,1)
    # carry different denominators and sum to 4 (lam - 1)
    sol4 = polar_line_solution(A0134, FACET_0, 4)
    assert sol4.terms[(-2, 1, 1, 0)] == PolyQ([-4, 4])
    # level 0 is the constant solution
    sol0 = polar_line_solution(A0134, FACET_0, 0)
    assert sol0.terms == {(0, 0, 0, 0): PolyQ([1])}


def test_finite_solution_monomials_and_normalization():
    sol = polar_line_solution(A0134, FACET_K, 3)
    lam = Fraction(1)
    mono = sol.monomials(lam)
    # at lam = 1 the x3^3 coefficient (lam-1)(lam-2)/2 vanishes
    assert mono == [(Fraction(3), (Fraction(0), Fraction(1), Fraction(0), Fraction(0)))]
    norm = sol.normalized_monomials(lam)
    assert norm[0][0] == 1


def test_finite_solution_annihilation_identity():
    # the operator identity holds for every term pair, at the level of
    # polynomials in lam, for every level in range
    for A in (A0134, A0145, A023, A0234):
        for facet in (FACET_0, FACET_K):
            for N in range(0, 8):
                sol = polar_line_solution(A, facet, N)
                if sol.is_zero():
                    continue
                rep = annihilation_check(A, sol)
                assert rep.ok, (A, facet, N, rep.failures)


def test_series_coefficient_formula():
    # top exponent at beta=(1/3, 1/5) is v=(17/60, 0, 0, 1/20); for the step
    # u=(-1,1,1,-1) the coefficient is v1 * v4 exactly
    fe = next(
        f
        for f in fake_exponents(A0134, (Fraction(1, 3), Fraction(1, 5)), "d1-first")
        if f.pair.r == (0, 0, 0, 0)
    )
    assert fe.v == (Fraction(17, 60), Fraction(0), Fraction(0), Fraction(1, 20))
    ts = series_for_exponent(A0134, fe, bound=6)
    assert ts.terms[(0, 0, 0, 0)] == 1
    assert ts.terms[(-1, 1, 1, -1)] == Fraction(17, 60) * Fraction(1, 20)
    assert ts.terms[(-1, 1, 1, -1)] == Fraction(17, 1200)


def test_series_denominator_error():
    # at the rank jump the top with v=(0,0,2,-1) cannot be continued: the
    # first raise in coordinate 4 divides by v4 + 1 = 0
    fe = next(
        f
        for f in fake_exponents(A0134, (Fraction(1), Fraction(2)), "d1-first")
        if f.pair.r == (0, 0, 2, 0)
    )
    with pytest.raises(SeriesDenominatorError) as info:
        series_for_exponent(A0134, fe)
    assert info.value.coordinate == 3
    with pytest.raises(SeriesDenominatorError):
        canonical_series(A0134, (Fraction(1), Fraction(2)))


def test_default_step_bound():
    assert default_step_bound(A0134) == 16
    assert default_step_bound(A023) == 12


def test_canonical_series_annihilated_generic():
    series = canonical_series(A0134, (Fraction(1, 3), Fraction(1, 5)), bound=10)
    assert len(series) == 4
    total_checked = 0
    for ts in series:
        rep = annihilation_check(A0134, ts)
        assert rep.ok, rep.failures
        total_checked += rep.checked
    assert total_checked > 0


def test_parametric_derivative():
    sol = polar_line_solution(A0134, FACET_0, 2)
    got = parametric_derivative(sol, Fraction(1), 1)
    assert got == [(Fraction(1), (Fraction(-1), Fraction(2), Fraction(0), Fraction(0)))]
    with pytest.raises(LogObstructionError) as info:
        parametric_derivative(sol, Fraction(1), 2)
    assert info.value.order_found == 1 and info.value.order_needed == 2
    # a coefficient that does not vanish at all blocks even the first
    # derivative
    sol3 = polar_line_solution(A0134, FACET_K, 3)
    with pytest.raises(LogObstructionError):
        parametric_derivative(sol3, Fraction(1), 1)


def test_coincidence_verdicts_frozen():
    res = coincidence_at_intersection(A0134, (Fraction(1), Fraction(2)))
    assert (res.verdict, res.point_type) == ("independent", "rank-jumping")
    assert (res.level_0, res.level_k) == (2, 2)
    res = coincidence_at_intersection(A0134, (Fraction(2), Fraction(2)))
    assert (res.verdict, res.point_type) == ("proportional", "interior")
    res = coincidence_at_intersection(A0134, (Fraction(1, 2), Fraction(1)))
    assert (res.verdict, res.point_type) == ("independent", "non-integral")
    res = coincidence_at_intersection(A023, (Fraction(1), Fraction(2)))
    assert (res.verdict, res.point_type) == ("proportional", "interior")


def test_coincidence_rejects_non_crossings():
    with pytest.raises(AssertionError):
        coincidence_at_intersection(A0134, (Fraction(1), Fraction(1, 2)))
    with pytest.raises(AssertionError):
        # level 1 is not polar for facet-0 on 023
        coincidence_at_intersection(A023, (Fraction(2, 3), Fraction(1)))


def test_solution_basis_at_rank_jump():
    basis = solution_basis_at_point(A0134, (Fraction(1), Fraction(2)))
    assert len(basis) == 5
    assert len(basis.discarded) == 1
    assert basis.discarded[0][0].pair.r == (0, 0, 2, 0)
    kinds = sorted(e.kind for e in basis)
    assert kinds == ["finite", "finite", "series", "series", "series"]
    finite_supports = sorted(
        tuple(e.monomials()[0][1]) for e in basis if e.kind == "finite"
    )
    assert finite_supports == [
        (Fraction(-1), Fraction(2), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(2), Fraction(-1)),
    ]


@pytest.mark.parametrize(
    "beta,count",
    [
        ((Fraction(1), Fraction(1)), 4),
        ((Fraction(2), Fraction(2)), 4),
        ((Fraction(1, 2), Fraction(1)), 4),
        ((Fraction(3), Fraction(5)), 4),
        ((Fraction(0), Fraction(0)), 4),
        ((Fraction(-1), Fraction(-2)), 4),
    ],
)
def test_solution_basis_counts_0134(beta, count):
    basis = solution_basis_at_point(A0134, beta)
    assert len(basis) == count
    seen = [e.normalized_monomials() for e in basis]
    for i in range(len(seen)):
        for j in range(i):
            assert seen[i] != seen[j]


def test_solution_basis_merges_coincident_lines():
    # at (2,2) both polar lines carry proportional solutions; they merge into
    # one element tagged with both lines
    basis = solution_basis_at_point(A0134, (Fraction(2), Fraction(2)))
    merged = [e for e in basis if "coincident" in e.tags]
    assert len(merged) == 1
    tags = " ".join(merged[0].tags)
    assert "facet-0 line level 2" in tags and "facet-k line level 6" in tags


def test_solution_basis_023():
    for beta in ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(0))):
        basis = solution_basis_at_point(A023, beta)
        assert len(basis) == 3


def test_basis_element_evaluate_consistent():
    basis = solution_basis_at_point(A0134, (Fraction(1), Fraction(2)))
    x = (1.1, 0.7, 0.35, 1.4)
    for e in basis:
        if e.kind != "finite":
            continue
        direct = sum(
            complex(c) * (x[0] ** float(ex[0])) * (x[1] ** float(ex[1]))
            * (x[2] ** float(ex[2])) * (x[3] ** float(ex[3]))
            for c, ex in e.monomials()
        )
        assert abs(e.evaluate(x) - direct) < 1e-12 * max(1.0, abs(direct))
