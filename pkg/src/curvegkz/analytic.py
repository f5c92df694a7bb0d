"""Numerical engine: ray integrals with branch tracking, shift recursions
out of the convergence wedge, loop integrals around curve roots, and polar
residue matching against the finite solutions.

All quadratures work on the dehomogenized curve polynomial
f(z) = sum_i x_i z^(k_i) and evaluate powers through a continuously tracked
logarithm, so non-integral parameters are supported wherever the contour
allows a consistent branch.
"""

import cmath
import math

import numpy as np

from .curve import FACET_0, FACET_K, in_convergence_domain
from .errors import PolarLineError, QuadratureError
from .series import polar_line_solution

_TWO_PI = 2.0 * math.pi


def _coeff_array(A, x):
    """Coefficients of f in descending powers, ready for numpy.roots."""
    c = np.zeros(A.k + 1, dtype=complex)
    for i, ki in enumerate(A.exponents):
        c[A.k - ki] += complex(x[i])
    return c


class RootData:
    """Roots of the curve polynomial sorted by argument, together with the
    angular components they cut out of the punctured plane.

    components[i] is the open angular interval (lo, hi); ray_angles[i] is its
    midpoint, a safe direction for the ray integral of that component.
    """

    __slots__ = ("roots", "angles", "components", "ray_angles", "scale")

    def __init__(self, roots, angles, components, ray_angles, scale):
        self.roots = roots
        self.angles = angles
        self.components = components
        self.ray_angles = ray_angles
        self.scale = scale

    def __repr__(self):
        return f"RootData({len(self.roots)} roots, scale={self.scale:.3g})"


def roots_and_components(A, x):
    if x[0] == 0 or x[-1] == 0:
        raise QuadratureError("boundary coefficients x_1, x_n must not vanish")
    c = _coeff_array(A, x)
    r = np.roots(c)
    dc = np.polyder(c)
    for _ in range(3):
        den = np.polyval(dc, r)
        # a vanishing derivative means a (near-)multiple root; skip the
        # update there and let the separation check below reject the point
        safe = np.abs(den) > 1e-300
        step = np.where(safe, np.polyval(c, r) / np.where(safe, den, 1.0), 0.0)
        r = r - step
    if not np.all(np.isfinite(r)):
        raise QuadratureError("root finding did not return finite values")
    scale = float(np.max(np.abs(r)))
    if scale == 0.0:
        raise QuadratureError("all roots at the origin")
    # an actual multiple root never separates below sqrt(eps) * scale in
    # floating point, so the guard must sit above that floor to fire
    for i in range(len(r)):
        if abs(r[i]) < 1e-6 * scale:
            raise QuadratureError("root too close to the origin")
        for j in range(i):
            if abs(r[i] - r[j]) < 1e-6 * scale:
                raise QuadratureError("repeated root: the point is too close to the discriminant")
    order = np.argsort(np.mod(np.angle(r), _TWO_PI))
    roots = [complex(r[i]) for i in order]
    angles = [float(np.mod(np.angle(v), _TWO_PI)) for v in roots]
    components = []
    ray_angles = []
    for i in range(len(roots)):
        lo = angles[i - 1] - (_TWO_PI if i == 0 else 0.0)
        hi = angles[i]
        components.append((lo, hi))
        ray_angles.append(0.5 * (lo + hi))
    return RootData(roots, angles, components, ray_angles, scale)


def sample_structured_point(A, seed):
    """Random coefficient point with dominant boundary coordinates and small
    middle coordinates, rejecting near-discriminant draws.  Points of this
    shape keep the k roots in distinct angular components."""
    rng = np.random.default_rng(seed)
    for _ in range(64):
        x = []
        for i in range(A.n):
            if i == 0 or i == A.n - 1:
                mag = rng.uniform(0.8, 1.2)
            else:
                mag = rng.uniform(0.01, 0.05)
            x.append(mag * cmath.exp(1j * rng.uniform(0.0, _TWO_PI)))
        x = tuple(x)
        try:
            rc = roots_and_components(A, x)
        except QuadratureError:
            continue
        gaps = [hi - lo for lo, hi in rc.components]
        if min(gaps) > 0.05:
            return x
    raise QuadratureError("could not sample a well-separated point")


def _tracked_log_f(A, x, logz):
    """Continuous log of f along an ordered path given by exact logs of z.

    Large |z| is handled by factoring out z^k, so no overflow occurs.  The
    branch is anchored at the first node's principal argument and unwrapped
    along the path; returns None when adjacent nodes jump too much in phase
    for the tracking to be trusted.
    """
    logz = np.asarray(logz)
    big = logz.real > 0.0
    shift = np.where(big, A.k, 0)
    w = np.zeros(logz.shape, dtype=complex)
    for i, ki in enumerate(A.exponents):
        w += complex(x[i]) * np.exp((ki - shift) * logz)
    mag = np.abs(w)
    if np.any(mag < 1e-290):
        return None, "zero"
    raw = np.angle(w) + shift * logz.imag
    wrapped = np.mod(raw + math.pi, _TWO_PI) - math.pi
    phase = np.unwrap(wrapped)
    if phase.size > 1 and np.max(np.abs(np.diff(phase))) > 0.5 * math.pi:
        return None, "phase"
    return shift * logz.real + np.log(mag) + 1j * phase, None


def euler_mellin(A, beta, x, theta, tol=1e-10):
    """Ray integral of f^(b1) z^(-b2) dz/z along arg z = theta, by
    double-exponential substitution t = exp(sinh s).

    Requires the convergence wedge (negative real pairings on both facets);
    outside it use extension_shift.  The branch of f^(b1) is fixed by the
    principal logarithm of x_1 at the small end of the ray.
    """
    if not in_convergence_domain(A, beta, margin=0.0):
        raise QuadratureError(f"parameters {beta} outside the convergence wedge")
    b1 = complex(beta[0])
    b2 = complex(beta[1])
    S = 4.0
    h = 0.2
    prev = None
    while True:
        s = np.arange(-S, S + 0.5 * h, h)
        logz = np.sinh(s) + 1j * theta
        logf, why = _tracked_log_f(A, x, logz)
        if logf is None:
            if why == "zero":
                raise QuadratureError("curve root on or near the integration ray")
            h *= 0.5
            prev = None
            if h < 1e-4:
                raise QuadratureError("phase tracking failed to stabilize")
            continue
        expo = b1 * logf - b2 * logz
        expo_re = np.clip(expo.real, -700.0, 700.0)
        g = np.exp(expo_re + 1j * expo.imag) * np.cosh(s)
        if np.any(expo.real > 690.0):
            raise QuadratureError("integrand overflow: parameters too deep outside the wedge")
        gmax = float(np.max(np.abs(g)))
        if gmax == 0.0:
            return 0.0 + 0.0j
        tail = max(abs(g[0]), abs(g[-1]))
        if tail > 1e-16 * gmax:
            if S >= 7.0:
                raise QuadratureError("integrand tail does not decay")
            S += 1.5
            prev = None
            continue
        val = complex(h * np.sum(g))
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return val
        prev = val
        h *= 0.5
        if h < 1e-4:
            raise QuadratureError("ray quadrature failed to converge")


def extension_shift(A, beta, x, theta, order="facet-0-first", margin=0.25, tol=1e-10, stats=None):
    """Value of the ray integral at arbitrary parameters, by contiguity
    relations that lower the parameters into the convergence wedge.

    One facet-0 step rewrites the value through the n-1 shifts beta - a_i
    with weights k_i x_i and prefactor b1/b2; one facet-k step uses the
    complementary weights (k - k_i) x_i and prefactor b1/(k b1 - b2).  The
    ``order`` parameter chooses which pairing is repaired first; both give
    the same value, which makes for a useful consistency check.

    Raises PolarLineError when a needed denominator sits on a polar line.
    """
    if order not in ("facet-0-first", "facet-k-first"):
        raise ValueError(f"unknown order {order!r}")
    b1 = complex(beta[0])
    b2 = complex(beta[1])
    k = A.k
    memo = {}

    def get(m, w):
        key = (m, w)
        if key in memo:
            return memo[key]
        p1 = b1 - m
        p2 = b2 - w
        if p2.real <= -margin and (k * p1 - p2).real <= -margin:
            val = euler_mellin(A, (p1, p2), x, theta, tol)
            if stats is not None:
                stats["quadratures"] = stats.get("quadratures", 0) + 1
            memo[key] = val
            return val
        need0 = p2.real > -margin
        if order == "facet-0-first":
            facet = FACET_0 if need0 else FACET_K
        else:
            facet = FACET_K if (k * p1 - p2).real > -margin else FACET_0
        guard = 1e-12 * (1.0 + abs(p1) * k + abs(p2))
        if facet == FACET_0:
            den = p2
            if abs(den) < guard:
                raise PolarLineError(f"facet-0 denominator vanishes at shift {key}")
            total = 0.0 + 0.0j
            for i in range(1, A.n):
                ki = A.exponents[i]
                total += ki * complex(x[i]) * get(m + 1, w + ki)
        else:
            den = k * p1 - p2
            if abs(den) < guard:
                raise PolarLineError(f"facet-k denominator vanishes at shift {key}")
            total = 0.0 + 0.0j
            for i in range(A.n - 1):
                ki = A.exponents[i]
                total += (k - ki) * complex(x[i]) * get(m + 1, w + ki)
        val = (p1 / den) * total
        memo[key] = val
        return val

    return get(0, 0)


def _loop_integral(A, beta, x, center, radius, orientation=1, tol=1e-10):
    """Loop integral of f^(b1) z^(-b2) dz/z on a circle, with the branch
    tracked continuously from the starting node (angle 0 on the circle).

    When the total phase does not return to its start the value depends on
    that convention; callers needing single-valuedness restrict the
    parameters accordingly.
    """
    b1 = complex(beta[0])
    b2 = complex(beta[1])
    m = 64
    prev = None
    while m <= 1 << 18:
        phi = _TWO_PI * np.arange(m) / m
        e = np.exp(1j * orientation * phi)
        z = center + radius * e
        if np.any(np.abs(z) < 1e-300):
            raise QuadratureError("loop passes through the origin")
        logz = np.log(np.abs(z)) + 1j * np.unwrap(np.angle(z))
        logf, why = _tracked_log_f(A, x, logz)
        if logf is None:
            if why == "zero":
                raise QuadratureError("curve root on the loop")
            prev = None
            m *= 2
            continue
        dz_over_z = 1j * orientation * radius * e / z
        g = np.exp(b1 * logf - b2 * logz) * dz_over_z
        val = complex(_TWO_PI / m * np.sum(g))
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return val
        prev = val
        m *= 2
    raise QuadratureError("loop quadrature failed to converge")


def residue_integral(A, beta, x, root_index, tol=1e-10):
    """Counterclockwise loop integral around one root of f (no 1/(2 pi i)
    normalization).  With integral b1 the branch closes up and the value is
    the honest contour integral; the difference of the two adjacent
    component ray integrals equals this value."""
    rc = roots_and_components(A, x)
    rho = rc.roots[root_index]
    dist = min(
        [abs(rho)] + [abs(rho - r) for i, r in enumerate(rc.roots) if i != root_index]
    )
    return _loop_integral(A, beta, x, rho, 0.4 * dist, orientation=1, tol=tol)


def residue_at_zero(A, beta, x, tol=1e-10):
    """Counterclockwise loop around the origin inside all roots.  Requires
    integral b2 so that z^(-b2) closes up around the origin."""
    b2 = complex(beta[1])
    if abs(b2.imag) > 1e-9 or abs(b2.real - round(b2.real)) > 1e-9:
        raise QuadratureError("origin loop needs an integral second parameter")
    rc = roots_and_components(A, x)
    radius = 0.5 * min(abs(r) for r in rc.roots)
    return _loop_integral(A, beta, x, 0.0, radius, orientation=1, tol=tol)


def residue_at_infinity(A, beta, x, tol=1e-10):
    """Clockwise loop outside all roots.  Requires integral k b1 - b2 for
    single-valuedness; together with the other loops it satisfies the sum
    rule  origin + all roots + infinity = 0."""
    b1 = complex(beta[0])
    b2 = complex(beta[1])
    pairing = A.k * b1 - b2
    if abs(pairing.imag) > 1e-9 or abs(pairing.real - round(pairing.real)) > 1e-9:
        raise QuadratureError("infinity loop needs an integral facet-k pairing")
    rc = roots_and_components(A, x)
    radius = 2.0 * max(abs(r) for r in rc.roots)
    return _loop_integral(A, beta, x, 0.0, radius, orientation=-1, tol=tol)


def power_series_coefficient(A, b1, N, x):
    """Coefficient of z^N in f^(b1) around z = 0, principal branch of
    x_1^(b1).  Satisfies f h' = b1 f' h, which gives a stable linear
    recurrence in the coefficients."""
    b1 = complex(b1)
    N = int(N)
    if N < 0:
        return 0.0 + 0.0j
    c = [0.0 + 0.0j] * (A.k + 1)
    for i, ki in enumerate(A.exponents):
        c[ki] += complex(x[i])
    a = [0.0 + 0.0j] * (N + 1)
    a[0] = cmath.exp(b1 * cmath.log(c[0]))
    for M in range(N):
        acc = 0.0 + 0.0j
        for d in range(1, min(A.k, M + 1) + 1):
            acc += c[d] * (b1 * d - (M + 1 - d)) * a[M + 1 - d]
        a[M + 1] = acc / (c[0] * (M + 1))
    return a[N]


class PolarMatchResult:
    """Comparison of a contour residue in the parameter plane against the
    finite solution on the polar line."""

    def __init__(self, facet, level, lam, contour_value, series_value):
        self.facet = facet
        self.level = level
        self.lam = lam
        self.contour_value = contour_value
        self.series_value = series_value
        self.abs_error = abs(contour_value - series_value)
        scale = max(abs(contour_value), abs(series_value))
        self.rel_error = self.abs_error / scale if scale > 0 else 0.0

    def __repr__(self):
        return (
            f"PolarMatchResult({self.facet}, level={self.level}, "
            f"rel_error={self.rel_error:.2e})"
        )


def polar_line_match_check(
    A,
    facet,
    level,
    lam,
    x,
    theta=None,
    radius=0.25,
    nodes=16,
    order="facet-0-first",
    tol=1e-10,
):
    """Residue of the analytically continued ray integral across a polar
    line, computed by a small parameter-plane contour, against its predicted
    value -(lam/N) times the finite solution (minus the bare base monomial
    at level 0).

    The residue does not depend on which angular component the ray sits in,
    so any theta gives the same value.
    """
    level = int(level)
    if theta is None:
        theta = roots_and_components(A, x).ray_angles[0]
    lam_c = complex(lam)
    k = A.k
    acc = 0.0 + 0.0j
    for j in range(nodes):
        phi = _TWO_PI * j / nodes
        eps = radius * cmath.exp(1j * phi)
        if facet == FACET_0:
            beta_j = (lam_c, level + eps)
        elif facet == FACET_K:
            beta_j = (lam_c, k * lam_c - level - eps)
        else:
            raise ValueError(f"unknown facet {facet!r}")
        val = extension_shift(A, beta_j, x, theta, order=order, tol=tol)
        acc += val * cmath.exp(1j * phi)
    contour = radius / nodes * acc
    finite = polar_line_solution(A, facet, level)
    series_val = finite.evaluate(lam_c, x)
    if level == 0:
        expected = -series_val
    else:
        expected = -(lam_c / level) * series_val
    return PolarMatchResult(facet, level, lam, contour, expected)


class ProbeResult:
    def __init__(self, matrix, singular_values):
        self.matrix = matrix
        self.singular_values = singular_values

    @property
    def degeneracy_ratio(self):
        sv = self.singular_values
        return sv[-1] / sv[0] if sv[0] > 0 else 0.0

    def __repr__(self):
        return f"ProbeResult(size={len(self.singular_values)}, degeneracy_ratio={self.degeneracy_ratio:.2e})"


def em_independence_probe(A, beta, x, order="facet-0-first", tol=1e-9):
    """Numerical independence signal for the k component integrals.

    Rows are angular components, columns are phase translates of the
    coefficient point (x_i multiplied by exp(2 pi i j k_i / k), which
    rotates the root configuration rigidly).  A well-conditioned matrix
    reports k independent values; a degenerate one (tiny last singular
    value) signals a relation, which is exactly what happens on polar
    lines.  This is a report, not a certificate.
    """
    k = A.k
    cols = []
    for j in range(k):
        xj = tuple(
            complex(x[i]) * cmath.exp(2j * math.pi * j * A.exponents[i] / k)
            for i in range(A.n)
        )
        rc = roots_and_components(A, xj)
        col = [
            extension_shift(A, beta, xj, rc.ray_angles[i], order=order, tol=tol)
            for i in range(k)
        ]
        cols.append(col)
    matrix = np.array(cols, dtype=complex).T
    sv = [float(s) for s in np.linalg.svd(matrix, compute_uv=False)]
    return ProbeResult(matrix, sv)
