"""Combinatorics of the exponent matrix of a projective monomial curve.

The matrix has rows (1,...,1) and (k_1,...,k_n) with 0 = k_1 < ... < k_n = k
and gcd(k_2,...,k_n) = 1.  Parameters live in the column span; the two facets
of the cone are spanned by the first and last column, and each facet carries a
numerical semigroup that controls where the associated analytic continuation
has poles.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import MatrixValidationError

FACET_0 = "facet-0"
FACET_K = "facet-k"
FACETS = (FACET_0, FACET_K)


class CurveMatrix:
    """Immutable admissible exponent matrix.

    >>> A = CurveMatrix([0, 1, 3, 4])
    >>> A.n, A.k
    (4, 4)
    >>> A.columns[2]
    (1, 3)
    """

    __slots__ = ("exponents", "n", "k")

    def __init__(self, exponents):
        exps = tuple(exponents)
        if not all(isinstance(e, int) for e in exps):
            raise TypeError("exponents must be integers")
        if len(exps) < 2:
            raise MatrixValidationError("too-short", "need at least two columns")
        if exps[0] != 0:
            raise MatrixValidationError("first-not-zero", f"first exponent must be 0, got {exps[0]}")
        if any(a >= b for a, b in zip(exps, exps[1:])):
            raise MatrixValidationError("non-monotone", f"exponents must strictly increase: {exps}")
        if gcd(*exps[1:]) != 1:
            raise MatrixValidationError("gcd", f"nonzero exponents must have gcd 1: {exps[1:]}")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "n", len(exps))
        object.__setattr__(self, "k", exps[-1])

    def __setattr__(self, name, value):
        raise AttributeError("CurveMatrix is immutable")

    @property
    def columns(self):
        return tuple((1, e) for e in self.exponents)

    def degree(self, v):
        """Column-weighted degree A.v of an exponent vector (both rows)."""
        assert len(v) == self.n
        d1 = sum(v)
        d2 = sum(e * c for e, c in zip(self.exponents, v))
        return (d1, d2)

    def __eq__(self, other):
        return isinstance(other, CurveMatrix) and self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"CurveMatrix({list(self.exponents)})"


class NumericalSemigroup:
    """Numerical semigroup generated by positive integers with gcd 1.

    >>> S = NumericalSemigroup((2, 3))
    >>> [m for m in range(6) if m in S]
    [0, 2, 3, 4, 5]
    >>> S.gaps
    (1,)
    >>> S.frobenius
    1
    """

    def __init__(self, gens):
        gens = tuple(sorted(set(int(g) for g in gens)))
        assert gens and gens[0] > 0, "generators must be positive"
        assert gcd(*gens) == 1, "generators must be coprime overall"
        self.gens = gens
        self._member = [True]  # table[m] says whether m is in the semigroup
        self._complete_upto = 0

    def _extend(self, upto):
        if upto <= self._complete_upto:
            return
        table = self._member
        old = len(table)
        table.extend([False] * (upto + 1 - old))
        for m in range(old, upto + 1):
            table[m] = any(m >= g and table[m - g] for g in self.gens)
        self._complete_upto = upto

    def __contains__(self, m):
        if m < 0:
            return False
        self._extend(m)
        return self._member[m]

    @property
    def frobenius(self):
        """Largest gap, or -1 when there are no gaps."""
        # once min(gens) consecutive members appear, everything larger is a member
        m0 = self.gens[0]
        run_end = 0
        bound = m0 * max(self.gens) + m0 + 1
        self._extend(bound)
        run = 0
        for m in range(bound + 1):
            if self._member[m]:
                run += 1
                if run == m0:
                    run_end = m
                    break
            else:
                run = 0
        assert run == m0, "no full run found below the Schur-type bound"
        last_gap = -1
        for m in range(run_end):
            if not self._member[m]:
                last_gap = m
        return last_gap

    @property
    def gaps(self):
        f = self.frobenius
        return tuple(m for m in range(f + 1) if m not in self)

    def min_parts(self, m):
        """Least number of generators summing to ``m`` (None for non-members)."""
        if m < 0 or m not in self:
            return None
        best = {0: 0}
        frontier = {0}
        count = 0
        while m not in best:
            count += 1
            frontier = {s + g for s in frontier for g in self.gens if s + g <= m} - set(best)
            for s in frontier:
                best[s] = count
        return best[m]

    def __repr__(self):
        return f"NumericalSemigroup{self.gens}"


@lru_cache(maxsize=None)
def facet_semigroup(A, facet):
    """Semigroup of polar levels attached to a facet.

    The facet through the last column carries the semigroup generated by the
    nonzero exponents; the facet through the first column carries the one
    generated by their complements k - k_i (together with k itself).
    """
    if facet == FACET_K:
        return NumericalSemigroup(A.exponents[1:])
    if facet == FACET_0:
        return NumericalSemigroup(tuple(A.k - e for e in A.exponents[:-1]))
    raise ValueError(f"unknown facet {facet!r}")


def _is_integral(beta):
    return all(isinstance(b, int) or (isinstance(b, Fraction) and b.denominator == 1) for b in beta)


@lru_cache(maxsize=None)
def _in_NA_int(A, b1, b2):
    if b1 < 0 or b2 < 0:
        return False
    if b2 == 0:
        return True
    # b2 must be a sum of at most b1 nonzero exponents
    reachable = {0}
    parts = A.exponents[1:]
    for _ in range(b1):
        new = {s + p for s in reachable for p in parts if s + p <= b2} - reachable
        if b2 in new:
            return True
        if not new:
            return False
        reachable |= new
    return False


def in_NA(A, beta):
    """Membership of a parameter in the semigroup generated by the columns.

    >>> A = CurveMatrix([0, 1, 3, 4])
    >>> in_NA(A, (1, 2))
    False
    >>> in_NA(A, (2, 2))
    True
    """
    if not _is_integral(beta):
        return False
    return _in_NA_int(A, int(beta[0]), int(beta[1]))


def is_rank_jumping(A, beta):
    """Exceptional parameters: both facet memberships hold but the parameter
    is outside the column semigroup."""
    if not _is_integral(beta):
        return False
    b1, b2 = int(beta[0]), int(beta[1])
    if b2 not in facet_semigroup(A, FACET_K):
        return False
    if A.k * b1 - b2 not in facet_semigroup(A, FACET_0):
        return False
    return not _in_NA_int(A, b1, b2)


def _default_jump_box(A):
    # Provable sweep bound.  For a member N of the facet-k semigroup with
    # N >= F+1+k one can split off floor parts of size k down into the window
    # [F+1, F+k], so min_parts(N) <= N/k + C with C the max of min_parts over
    # members of [0, F+k+1].  A jumping parameter needs b1 < min_parts(b2) and
    # k*b1 - b2 >= 1, which forces k*b1 - b2 < k*C, then b1 < k*C and
    # b2 < k*b1 <= k^2*C by the mirrored argument.
    Gk = facet_semigroup(A, FACET_K)
    window = Gk.frobenius + A.k + 1
    C = max(Gk.min_parts(t) for t in range(window + 1) if t in Gk)
    C = max(C, 1)
    return (0, A.k * C, 0, A.k * A.k * C)


def rank_jumping_parameters(A, box=None):
    """All exceptional parameters in ``box`` (b1min, b1max, b2min, b2max).

    With no box given, a provably complete default box is swept.
    """
    if box is None:
        box = _default_jump_box(A)
    b1min, b1max, b2min, b2max = box
    found = []
    for b2 in range(b2min, b2max + 1):
        for b1 in range(b1min, b1max + 1):
            if is_rank_jumping(A, (b1, b2)):
                found.append((b1, b2))
    return sorted(found)


def rank(A, beta):
    """Solution-space dimension at a parameter: the curve degree, plus one on
    the finite exceptional set."""
    return A.k + (1 if is_rank_jumping(A, beta) else 0)


def is_resonant(A, beta):
    """Facets whose level function is integral at ``beta``.

    Returns a tuple of facet labels (possibly empty).

    >>> A = CurveMatrix([0, 2, 3])
    >>> is_resonant(A, (Fraction(1, 3), Fraction(0)))
    ('facet-0', 'facet-k')
    """
    b1 = Fraction(beta[0])
    b2 = Fraction(beta[1])
    out = []
    if b2.denominator == 1:
        out.append(FACET_0)
    if (A.k * b1 - b2).denominator == 1:
        out.append(FACET_K)
    return tuple(out)


class ResonantLine:
    """A line of resonant parameters attached to one facet.

    facet-0 lines are {b2 = N} parameterized by lam -> (lam, N); facet-k lines
    are {k*b1 - b2 = N} parameterized by lam -> (lam, k*lam - N).  The line is
    polar exactly when N lies in the semigroup of the opposite facet.
    """

    __slots__ = ("facet", "level", "polar", "k")

    def __init__(self, facet, level, polar, k):
        self.facet = facet
        self.level = int(level)
        self.polar = bool(polar)
        self.k = k

    def point(self, lam):
        if self.facet == FACET_0:
            return (lam, Fraction(self.level))
        return (lam, self.k * lam - self.level)

    def level_of(self, beta):
        b1, b2 = Fraction(beta[0]), Fraction(beta[1])
        return b2 if self.facet == FACET_0 else self.k * b1 - b2

    def contains(self, beta):
        return self.level_of(beta) == self.level

    def __eq__(self, other):
        return (
            isinstance(other, ResonantLine)
            and (self.facet, self.level, self.polar) == (other.facet, other.level, other.polar)
        )

    def __hash__(self):
        return hash((self.facet, self.level, self.polar))

    def __repr__(self):
        kind = "polar" if self.polar else "resonant"
        locus = "b2" if self.facet == FACET_0 else f"{self.k}*b1 - b2"
        return f"ResonantLine({locus} = {self.level}, {kind})"


def _polar_level_semigroup(A, facet):
    # crossed pairing: levels on the facet-0 lines are polar when they lie in
    # the facet-k semigroup, and vice versa
    return facet_semigroup(A, FACET_K if facet == FACET_0 else FACET_0)


def resonant_lines(A, facet, window):
    """All integer-level lines of one facet with level in [window[0], window[1]]."""
    lo, hi = int(window[0]), int(window[1])
    S = _polar_level_semigroup(A, facet)
    return [ResonantLine(facet, N, N in S, A.k) for N in range(lo, hi + 1)]


def polar_lines(A, facet, window):
    """The polar lines of one facet with level inside the window.

    >>> A = CurveMatrix([0, 2, 3])
    >>> [L.level for L in polar_lines(A, FACET_0, (0, 5))]
    [0, 2, 3, 4, 5]
    """
    return [L for L in resonant_lines(A, facet, window) if L.polar]


def delta_conditions(A, beta):
    """The two step-two membership conditions on a parameter.

    Writing gamma = (k*b1 - b2, b2) and Delta for the column set
    {(k - k_i, k_i)}, the first condition asks for delta, delta' in the
    monoid generated by Delta with delta_1 = gamma_1, delta_2 + delta'_2 =
    gamma_2 and delta' nonzero; the second swaps the roles of the rows.
    Both hold together exactly on the column semigroup.
    """
    if not _is_integral(beta):
        return (False, False)
    b1, b2 = int(beta[0]), int(beta[1])
    g1 = A.k * b1 - b2
    g2 = b2
    cond1 = cond2 = False
    if g1 >= 0 and g2 >= 0:
        cols = [(A.k - e, e) for e in A.exponents]
        reach = [[False] * (g2 + 1) for _ in range(g1 + 1)]
        reach[0][0] = True
        for x in range(g1 + 1):
            for y in range(g2 + 1):
                if not reach[x][y]:
                    continue
                for (dx, dy) in cols:
                    if x + dx <= g1 and y + dy <= g2:
                        reach[x + dx][y + dy] = True
        # the nonzero second witness costs nothing in the first coordinate
        # because (k, 0) is itself a column of Delta, so only the remainder
        # semigroup membership is left to check (and symmetrically)
        Gk = facet_semigroup(A, FACET_K)
        G0 = facet_semigroup(A, FACET_0)
        cond1 = any(reach[g1][y] and (g2 - y) in Gk for y in range(g2 + 1))
        cond2 = any(reach[x][g2] and (g1 - x) in G0 for x in range(g1 + 1))
    assert (cond1 and cond2) == in_NA(A, beta)
    return (cond1, cond2)


def in_convergence_domain(A, beta, margin=0.0):
    """True when both facet pairings are negative enough for the defining
    integral to converge on every ray component."""
    b1 = complex(beta[0])
    b2 = complex(beta[1])
    return b2.real < -margin and (A.k * b1 - b2).real < -margin
