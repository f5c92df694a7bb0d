"""Series solutions: finite solutions on polar lines, canonical series at a
point, exact operator checks, and assembly of a full solution basis.

Finite solutions carry coefficients that are polynomials in the line
parameter lam; point solutions carry plain rational coefficients indexed by
kernel lattice steps from a starting exponent.
"""

import itertools
from fractions import Fraction
from math import gcd

from .curve import FACET_0, FACET_K, facet_semigroup, is_rank_jumping, rank
from .errors import LogObstructionError, SeriesDenominatorError
from .qexact import PolyQ, fraction_matrix_rank
from .toric import fake_exponents, kernel_lattice_basis, term_order, toric_ideal_groebner

_ONE = PolyQ([1])


def b_matrix(A):
    """Primitive relation data for each middle column.

    For 0 < i < n-1 the triple (b_first, b_diag, b_last) gives the primitive
    relation  b_diag * a_i = b_first * a_first + b_last * a_last, scaled by
    g = gcd(k_i, k).

    >>> from .curve import CurveMatrix
    >>> b_matrix(CurveMatrix([0, 1, 3, 4]))
    {1: (3, 4, 1), 2: (1, 4, 3)}
    """
    out = {}
    for i in range(1, A.n - 1):
        ki = A.exponents[i]
        g = gcd(ki, A.k)
        triple = ((A.k - ki) // g, A.k // g, ki // g)
        assert triple[0] + triple[2] == triple[1]
        assert ki * triple[1] == A.k * triple[2]
        assert gcd(gcd(triple[0], triple[1]), triple[2]) == 1
        out[i] = triple
    return out


def _facet_parts(A, facet):
    """(coordinate, value, weight) for the parts available on one facet."""
    if facet == FACET_0:
        return [(i, A.exponents[i], A.exponents[i]) for i in range(1, A.n)]
    if facet == FACET_K:
        return [(i, A.k - A.exponents[i], A.k - A.exponents[i]) for i in range(A.n - 1)]
    raise ValueError(f"unknown facet {facet!r}")


def ordered_partitions(A, facet, N):
    """All ordered sequences of facet parts summing to N.

    Parts for facet-0 are the nonzero exponents; for facet-k their
    complements.  Groups of reorderings enter the finite solutions with
    different denominators, so the order of parts matters.

    >>> from .curve import CurveMatrix
    >>> ordered_partitions(CurveMatrix([0, 1, 3, 4]), "facet-0", 4)
    [(1, 1, 1, 1), (1, 3), (3, 1), (4,)]
    """
    values = sorted(v for (_, v, _) in _facet_parts(A, facet))
    out = []

    def rec(remaining, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for v in values:
            if v <= remaining:
                rec(remaining - v, prefix + [v])

    if N >= 0:
        rec(int(N), [])
    return sorted(out)


class FiniteSeries:
    """Finite solution attached to a polar line of one facet.

    Terms are keyed by integer offset vectors o; the term monomial is
    x_base^(lam + o_base) * prod_i x_i^(o_i) and its coefficient is a PolyQ
    in lam.  ``removed`` records a factor already divided out of every
    coefficient (the trivial polynomial 1 when nothing was removed).
    """

    __slots__ = ("A", "facet", "level", "base", "terms", "removed")

    def __init__(self, A, facet, level, terms, removed=_ONE):
        self.A = A
        self.facet = facet
        self.level = int(level)
        self.base = 0 if facet == FACET_0 else A.n - 1
        self.terms = dict(terms)
        self.removed = removed

    def is_zero(self):
        return not self.terms

    def stripped(self):
        """Divide out the monic gcd of all coefficients."""
        if not self.terms:
            return self, _ONE
        g = PolyQ()
        for c in self.terms.values():
            g = g.gcd(c)
        if g.is_constant():
            return self, _ONE
        new = {o: c.divexact(g) for o, c in self.terms.items()}
        return FiniteSeries(self.A, self.facet, self.level, new, self.removed * g), g

    def monomials(self, lam):
        """Exact (coefficient, exponent vector) pairs at lam; zero terms dropped."""
        lam = Fraction(lam)
        out = []
        for o, c in sorted(self.terms.items()):
            val = c(lam)
            if val == 0:
                continue
            exps = tuple(
                Fraction(oi) + (lam if i == self.base else 0) for i, oi in enumerate(o)
            )
            out.append((val, exps))
        return out

    def normalized_monomials(self, lam):
        mono = self.monomials(lam)
        if not mono:
            return []
        mono.sort(key=lambda ce: ce[1])
        lead = mono[0][0]
        return [(c / lead, e) for c, e in mono]

    def evaluate(self, lam, x):
        import cmath

        total = 0j
        lam = complex(lam)
        for o, c in self.terms.items():
            term = complex(c(lam))
            for i, oi in enumerate(o):
                e = lam + oi if i == self.base else complex(oi)
                if e != 0:
                    term *= cmath.exp(e * cmath.log(x[i]))
            total += term
        return total

    def __repr__(self):
        return (
            f"FiniteSeries({self.facet}, level={self.level}, "
            f"{len(self.terms)} terms, removed={self.removed.text('lam')})"
        )


def polar_line_solution(A, facet, N):
    """The finite solution on the level-N line of a facet, built by dynamic
    programming over part multisets (the per-ordering denominators are summed
    path by path).

    Non-polar integer levels have no parts decomposition and give the zero
    series.
    """
    N = int(N)
    parts = _facet_parts(A, facet)
    lam = PolyQ.variable()
    terms = {}
    if N >= 0:
        frontier = {tuple([0] * len(parts)): _ONE}
        count = 0
        while frontier:
            new = {}
            for m, w in frontier.items():
                s = sum(mi * parts[p][1] for p, mi in enumerate(m))
                if s == N:
                    o = [0] * A.n
                    base = 0 if facet == FACET_0 else A.n - 1
                    o[base] = -count
                    factor = 1
                    for p, mi in enumerate(m):
                        idx, _, weight = parts[p]
                        o[idx] += mi
                        factor *= weight**mi
                    coeff = w * factor
                    key = tuple(o)
                    terms[key] = terms.get(key, PolyQ()) + coeff
                    continue
                for p, (idx, val, _) in enumerate(parts):
                    if s + val <= N:
                        mult = w if count == 0 else w * (lam - count) * Fraction(1, N - s)
                        m2 = m[:p] + (m[p] + 1,) + m[p + 1 :]
                        new[m2] = new.get(m2, PolyQ()) + mult
            frontier = new
            count += 1
    terms = {o: c for o, c in terms.items() if not c.is_zero()}
    return FiniteSeries(A, facet, N, terms)


class TruncatedSeries:
    """Canonical series solution at a point, truncated by total step size.

    Terms are keyed by kernel lattice vectors u with sum |u|_1 <= bound; the
    monomial of a term is x^(v+u).  Coefficients follow the falling/rising
    factorial rule, so a term whose numerator vanishes is simply absent.
    """

    __slots__ = ("A", "v", "pair", "bound", "terms")

    def __init__(self, A, v, pair, bound, terms):
        self.A = A
        self.v = tuple(Fraction(c) for c in v)
        self.pair = pair
        self.bound = bound
        self.terms = dict(terms)

    def monomials(self):
        out = []
        for u, c in sorted(self.terms.items()):
            out.append((c, tuple(vi + ui for vi, ui in zip(self.v, u))))
        return out

    def normalized_monomials(self):
        mono = sorted(self.monomials(), key=lambda ce: ce[1])
        if not mono:
            return []
        lead = mono[0][0]
        return [(c / lead, e) for c, e in mono]

    def support(self):
        return {e for _, e in self.monomials()}

    def is_monomial(self):
        return len(self.terms) == 1

    def evaluate(self, x):
        import cmath

        total = 0j
        for u, c in self.terms.items():
            term = complex(float(c))
            for i, ui in enumerate(u):
                e = self.v[i] + ui
                if e != 0:
                    term *= cmath.exp(complex(float(e)) * cmath.log(x[i]))
            total += term
        return total

    def __repr__(self):
        return f"TruncatedSeries(v={self.v}, {len(self.terms)} terms, bound={self.bound})"


def _kernel_steps(A, bound, mid_lower):
    """Kernel lattice vectors with |u|_1 <= bound and middle coordinates
    bounded below by ``mid_lower`` (coordinate-indexed dict)."""
    n, k = A.n, A.k
    mids = range(1, n - 1)
    ranges = []
    for i in mids:
        lo = max(mid_lower.get(i, -bound), -bound)
        ranges.append(range(lo, bound + 1))
    out = []
    for combo in itertools.product(*ranges):
        wsum = sum(A.exponents[i] * c for i, c in zip(mids, combo))
        if wsum % k:
            continue
        u_last = -wsum // k
        u_first = -sum(combo) - u_last
        u = (u_first,) + tuple(combo) + (u_last,)
        if sum(abs(c) for c in u) <= bound:
            out.append(u)
    return out


def _phi_coefficient(v, u):
    """Coefficient of the step u in the canonical series at v.

    Raises SeriesDenominatorError when a rising factor vanishes; returns 0
    when a falling factor vanishes.
    """
    num = Fraction(1)
    den = Fraction(1)
    for i, ui in enumerate(u):
        vi = v[i]
        if ui < 0:
            for j in range(1, -ui + 1):
                num *= vi - j + 1
        elif ui > 0:
            for j in range(1, ui + 1):
                f = vi + j
                if f == 0:
                    raise SeriesDenominatorError(u, i)
                den *= f
    return num / den


def default_step_bound(A):
    return 4 * A.k


def series_for_exponent(A, fe, bound=None):
    """Canonical series for one starting exponent; raises on vanishing
    denominators (the discard criterion for basis assembly)."""
    if bound is None:
        bound = default_step_bound(A)
    n = A.n
    v = tuple(Fraction(c) for c in fe.v)
    sigma = fe.pair.sigma
    mid_lower = {i: -fe.pair.r[i] for i in range(1, n - 1)}
    terms = {}
    for u in _kernel_steps(A, bound, mid_lower):
        # end coordinates outside sigma must stay nonnegative as well
        if 0 not in sigma and v[0] + u[0] < 0:
            continue
        if (n - 1) not in sigma and v[n - 1] + u[n - 1] < 0:
            continue
        c = _phi_coefficient(v, u)
        if c != 0:
            terms[u] = c
    assert terms.get((0,) * n) == 1
    return TruncatedSeries(A, v, fe.pair, bound, terms)


def canonical_series(A, beta, order="d1-first", bound=None):
    """Canonical series at ``beta`` for every starting exponent of the order.

    Propagates SeriesDenominatorError; use solution_basis_at_point for the
    assembly that discards failing exponents.
    """
    return [series_for_exponent(A, fe, bound) for fe in fake_exponents(A, beta, order)]


def _falling_factorial_exact(w, a):
    out = Fraction(1)
    for wi, ai in zip(w, a):
        for j in range(ai):
            out *= wi - j
    return out


def _falling_factorial_poly(o, a, base, n):
    """Falling factorial of the shifted exponent vector as a PolyQ in lam."""
    out = _ONE
    for i in range(n):
        ai = a[i]
        for j in range(ai):
            if i == base:
                out = out * PolyQ([o[i] - j, 1])
            else:
                out = out * Fraction(o[i] - j)
            if out.is_zero():
                return out
    return out


class AnnihilationReport:
    def __init__(self, ok, checked, skipped, failures):
        self.ok = ok
        self.checked = checked
        self.skipped = skipped
        self.failures = failures

    def __repr__(self):
        return f"AnnihilationReport(ok={self.ok}, checked={self.checked}, skipped={self.skipped})"


def annihilation_check(A, series, order="d1-first"):
    """Apply the defining operators to a solution and collect the residual.

    For truncated point series the scale operators hold per term by
    construction and the binomial generators are checked exactly on every
    output monomial whose sources both lie inside the truncation bound.  For
    finite line solutions the check is a polynomial identity in lam and is
    complete.
    """
    gb = toric_ideal_groebner(A, order)
    n = A.n
    if isinstance(series, TruncatedSeries):
        v = series.v
        for u in series.terms:
            assert A.degree(u) == (0, 0)
        checked = 0
        skipped = 0
        failures = []
        for (a, b) in gb.generators:
            residual = {}
            for u, c in series.terms.items():
                w = tuple(vi + ui for vi, ui in zip(v, u))
                for mono, sign in ((a, 1), (b, -1)):
                    ff = _falling_factorial_exact(w, mono)
                    if ff == 0:
                        continue
                    key = tuple(wi - mi for wi, mi in zip(w, mono))
                    residual[key] = residual.get(key, Fraction(0)) + sign * c * ff
            for key, val in residual.items():
                # recover the source steps; both must be inside the bound
                src_a = tuple(Fraction(key[i]) + a[i] - v[i] for i in range(n))
                src_b = tuple(Fraction(key[i]) + b[i] - v[i] for i in range(n))
                size_a = sum(abs(s) for s in src_a)
                size_b = sum(abs(s) for s in src_b)
                if size_a <= series.bound and size_b <= series.bound:
                    checked += 1
                    if val != 0:
                        failures.append(((a, b), key, val))
                else:
                    skipped += 1
        return AnnihilationReport(not failures, checked, skipped, failures)
    if isinstance(series, FiniteSeries):
        base = series.base
        k = A.k
        checked = 0
        failures = []
        for o in series.terms:
            # scale rows: both homogeneity degrees must sit on the line
            assert sum(o) == 0
            weighted = sum(A.exponents[i] * o[i] for i in range(n))
            assert weighted == (series.level if base == 0 else -series.level)
        for (a, b) in gb.generators:
            residual = {}
            for o, c in series.terms.items():
                for mono, sign in ((a, 1), (b, -1)):
                    ff = _falling_factorial_poly(o, mono, base, n)
                    if ff.is_zero():
                        continue
                    key = tuple(oi - mi for oi, mi in zip(o, mono))
                    term = c * ff if sign > 0 else -(c * ff)
                    residual[key] = residual.get(key, PolyQ()) + term
            for key, val in residual.items():
                checked += 1
                if not val.is_zero():
                    failures.append(((a, b), key, val))
        return AnnihilationReport(not failures, checked, 0, failures)
    raise TypeError(f"cannot check {type(series).__name__}")


def parametric_derivative(series, lam0, q):
    """q-th derivative in the line parameter at lam0, as exact monomials.

    Every coefficient must vanish to order at least q at lam0; otherwise the
    derivative would leave the logarithm-free setting and
    LogObstructionError is raised.  Returns a list of (coefficient,
    exponent vector) pairs; the list is empty when everything vanishes to
    higher order.
    """
    assert isinstance(series, FiniteSeries)
    lam0 = Fraction(lam0)
    out = []
    for o, c in sorted(series.terms.items()):
        mult = c.root_multiplicity(lam0) if c(lam0) == 0 else 0
        if mult < q:
            raise LogObstructionError(o, mult, q)
        val = c.derivative(q)(lam0)
        if val == 0:
            continue
        exps = tuple(
            Fraction(oi) + (lam0 if i == series.base else 0) for i, oi in enumerate(o)
        )
        out.append((val, exps))
    return out


class CoincidenceResult:
    """Comparison of the two finite solutions at a crossing of polar lines."""

    def __init__(self, beta, verdict, point_type, level_0, level_k, mono_0, mono_k):
        self.beta = beta
        self.verdict = verdict
        self.point_type = point_type
        self.level_0 = level_0
        self.level_k = level_k
        self.mono_0 = mono_0
        self.mono_k = mono_k

    def __repr__(self):
        return f"CoincidenceResult({self.beta}, {self.verdict}, {self.point_type})"


def coincidence_at_intersection(A, beta):
    """Evaluate both finite solutions at a crossing of two polar lines and
    decide whether they are proportional or independent.

    The verdict is decided by an exact rank computation on the stacked
    coefficient vectors.
    """
    b1, b2 = Fraction(beta[0]), Fraction(beta[1])
    assert b2.denominator == 1, "crossing requires an integral facet-0 level"
    N0 = int(b2)
    Nk_f = A.k * b1 - b2
    assert Nk_f.denominator == 1, "crossing requires an integral facet-k level"
    Nk = int(Nk_f)
    assert N0 in facet_semigroup(A, FACET_K), f"level {N0} is not polar"
    assert Nk in facet_semigroup(A, FACET_0), f"level {Nk} is not polar"
    s0, _ = polar_line_solution(A, FACET_0, N0).stripped()
    sk, _ = polar_line_solution(A, FACET_K, Nk).stripped()
    m0 = s0.monomials(b1)
    mk = sk.monomials(b1)
    assert m0 and mk, "stripped finite solutions cannot vanish at the crossing"
    monomials = sorted({e for _, e in m0} | {e for _, e in mk})
    index = {e: i for i, e in enumerate(monomials)}
    rows = [[Fraction(0)] * len(monomials) for _ in range(2)]
    for c, e in m0:
        rows[0][index[e]] = c
    for c, e in mk:
        rows[1][index[e]] = c
    r = fraction_matrix_rank(rows)
    verdict = "proportional" if r == 1 else "independent"
    if b1.denominator != 1:
        point_type = "non-integral"
    elif is_rank_jumping(A, (b1, b2)):
        point_type = "rank-jumping"
    else:
        point_type = "interior"
    return CoincidenceResult((b1, b2), verdict, point_type, N0, Nk, m0, mk)


class BasisElement:
    """One member of a solution basis.

    kind is "series" (truncated canonical series at a top pair) or "finite"
    (a polar line solution evaluated at the point).  ``monomials`` always
    gives exact (coefficient, exponent) data, truncated for series.
    """

    def __init__(self, kind, monomials, tags, source):
        self.kind = kind
        self._monomials = list(monomials)
        self.tags = list(tags)
        self.source = source

    def monomials(self):
        return list(self._monomials)

    def normalized_monomials(self):
        mono = sorted(self._monomials, key=lambda ce: ce[1])
        if not mono:
            return []
        lead = mono[0][0]
        return [(c / lead, e) for c, e in mono]

    def support(self):
        return {e for _, e in self._monomials}

    def evaluate(self, x):
        import cmath

        total = 0j
        for c, e in self._monomials:
            term = complex(float(c))
            for xi, ei in zip(x, e):
                if ei != 0:
                    term *= cmath.exp(complex(float(ei)) * cmath.log(xi))
            total += term
        return total

    def __repr__(self):
        return f"BasisElement({self.kind}, tags={self.tags}, {len(self._monomials)} monomials)"


class SolutionBasis:
    def __init__(self, A, beta, entries, discarded, expected_rank):
        self.A = A
        self.beta = beta
        self.entries = list(entries)
        self.discarded = list(discarded)
        self.expected_rank = expected_rank

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        return f"SolutionBasis(beta={self.beta}, {len(self.entries)} elements)"


def solution_basis_at_point(A, beta, order="d1-first", bound=None):
    """Assemble a basis of solutions at one parameter point.

    Top starting exponents contribute truncated series; exponents whose
    series hit a vanishing denominator are discarded.  Each polar line
    through the point contributes its stripped finite solution evaluated
    there.  Elements with identical normalized monomials are merged, and the
    final count must equal the rank at the point.
    """
    b1, b2 = Fraction(beta[0]), Fraction(beta[1])
    entries = []
    discarded = []
    for fe in fake_exponents(A, (b1, b2), order):
        if not fe.is_top:
            continue
        try:
            ts = series_for_exponent(A, fe, bound)
        except SeriesDenominatorError as err:
            discarded.append((fe, err))
            continue
        entries.append(BasisElement("series", ts.monomials(), [f"top {fe.pair.r}"], ts))
    finite = []
    if b2.denominator == 1 and int(b2) in facet_semigroup(A, FACET_K):
        fs, _ = polar_line_solution(A, FACET_0, int(b2)).stripped()
        finite.append((fs, f"{FACET_0} line level {int(b2)}"))
    Nk = A.k * b1 - b2
    if Nk.denominator == 1 and int(Nk) in facet_semigroup(A, FACET_0):
        fs, _ = polar_line_solution(A, FACET_K, int(Nk)).stripped()
        finite.append((fs, f"{FACET_K} line level {int(Nk)}"))
    for fs, tag in finite:
        mono = fs.monomials(b1)
        assert mono, "stripped finite solution evaluated to zero"
        element = BasisElement("finite", mono, [tag], fs)
        merged = False
        for existing in entries:
            if existing.normalized_monomials() == element.normalized_monomials():
                existing.tags.append(tag)
                if existing.kind == "finite":
                    existing.tags.append("coincident")
                merged = True
                break
        if not merged:
            entries.append(element)
    expected = rank(A, (b1, b2))
    assert len(entries) == expected, (
        f"assembled {len(entries)} solutions but the rank at {(b1, b2)} is {expected}"
    )
    for i in range(len(entries)):
        for j in range(i):
            assert entries[i].normalized_monomials() != entries[j].normalized_monomials()
    return SolutionBasis(A, (b1, b2), entries, discarded, expected)
