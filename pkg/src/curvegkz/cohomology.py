"""Graded local cohomology of the semigroup ring at the irrelevant ideal,
computed degree by degree from the two-face complex

    0 -> C[Q] -> C[Q + Z a_1] (+) C[Q + Z a_n] -> C[Z^2] -> 0

whose middle memberships are decided by honest bounded shift searches.
"""

from .curve import FACET_0, FACET_K, facet_semigroup, in_NA, _default_jump_box
from .toric import toric_ideal_groebner


def _shift_bound(A, alpha):
    # large enough that any representation using one negative column
    # exponent is found; the semigroup conductors cap the search
    f0 = facet_semigroup(A, FACET_0).frobenius
    fk = facet_semigroup(A, FACET_K).frobenius
    F = max(f0, fk, 0)
    return F + A.k + (A.k + 1) * (abs(alpha[0]) + abs(alpha[1]))


def in_ray_module(A, alpha, ray):
    """Membership of a degree in the semigroup module localized along one
    boundary ray: Q + Z a_1 (ray 0) or Q + Z a_n (ray k).

    Decided by a bounded search over integer shifts t with
    alpha - t * a_ray in Q.  The scan starts from the smallest useful shift
    and quits early: each ray fixes one linear invariant (the second
    coordinate for ray 0, the facet-k pairing for ray k), and membership is
    monotone in t along the other direction.
    """
    a1, a2 = int(alpha[0]), int(alpha[1])
    B = _shift_bound(A, (a1, a2))
    if ray == FACET_0:
        if a2 < 0:
            return False
        # c = a1 - t runs over candidate first coordinates
        for c in range(0, min(B, a2) + 2):
            if in_NA(A, (c, a2)):
                return True
        return False
    if ray == FACET_K:
        P = A.k * a1 - a2
        if P < 0:
            return False
        # m = a1 - t; the shifted point is (m, m*k - P)
        for m in range(0, min(B, P) + 2):
            if m * A.k >= P and in_NA(A, (m, m * A.k - P)):
                return True
        return False
    raise ValueError(f"unknown ray {ray!r}")


def graded_dims(A, alpha):
    """(h0, h1, h2) of local cohomology in one Z^2-degree.

    >>> from .curve import CurveMatrix
    >>> graded_dims(CurveMatrix([0, 1, 3, 4]), (1, 2))
    (0, 1, 0)
    >>> graded_dims(CurveMatrix([0, 1, 3, 4]), (1, 1))
    (0, 0, 0)
    """
    m1 = in_ray_module(A, alpha, FACET_0)
    mn = in_ray_module(A, alpha, FACET_K)
    inq = in_NA(A, alpha)
    assert not inq or (m1 and mn)
    h1 = 1 if (m1 and mn and not inq) else 0
    h2 = 0 if (m1 or mn) else 1
    return (0, h1, h2)


def h1_support(A, box=None):
    """All degrees with nonzero first local cohomology inside the box
    (default: the proven search box for rank jumps)."""
    if box is None:
        box = _default_jump_box(A)
    b1min, b1max, b2min, b2max = box
    out = []
    for a1 in range(b1min, b1max + 1):
        for a2 in range(b2min, b2max + 1):
            if graded_dims(A, (a1, a2))[1] == 1:
                out.append((a1, a2))
    return sorted(out)


def _max_parts_decomposition(N, gens):
    """Decomposition of N in the semigroup with the largest number of
    parts, preferring small generators; None when N is not a member."""
    N = int(N)
    if N < 0:
        return None
    gens = sorted(set(int(g) for g in gens))
    NEG = -1
    mp = [NEG] * (N + 1)
    mp[0] = 0
    for v in range(1, N + 1):
        best = NEG
        for g in gens:
            if g <= v and mp[v - g] != NEG:
                best = max(best, mp[v - g] + 1)
        mp[v] = best
    if mp[N] == NEG:
        return None
    counts = {g: 0 for g in gens}
    r = N
    while r > 0:
        for g in gens:
            if g <= r and mp[r - g] == mp[r] - 1:
                counts[g] += 1
                r -= g
                break
        else:
            raise AssertionError("decomposition reconstruction failed")
    return counts


class CocycleData:
    """Explicit generator of the one-dimensional first cohomology in one
    degree: exponent vectors over each boundary ray, a clearing exponent
    making both ordinary monomials, and the binomial certificate that the
    cleared monomials agree in the semigroup ring."""

    def __init__(self, alpha, v, v_prime, clearing, binomial, certified):
        self.alpha = alpha
        self.v = v
        self.v_prime = v_prime
        self.clearing = clearing
        self.binomial = binomial
        self.certified = certified

    def __repr__(self):
        return (
            f"CocycleData(alpha={self.alpha}, v={self.v}, v_prime={self.v_prime}, "
            f"clearing={self.clearing}, certified={self.certified})"
        )


def cocycle_generator(A, alpha, order="d1-first"):
    """Generator of the first cohomology class at a jumping degree.

    The ray-0 representative uses the maximal number of positive parts for
    the second coordinate, pushing the first coordinate exponent as low as
    it goes; the ray-k representative mirrors this.  Multiplying both by
    (x_1 x_n)^clearing gives two honest monomials of equal degree whose
    difference reduces to zero in the toric ideal, certifying that the two
    sections agree away from the rays.
    """
    if graded_dims(A, alpha)[1] != 1:
        raise ValueError(f"no first cohomology class in degree {alpha}")
    a1, a2 = int(alpha[0]), int(alpha[1])
    n, k = A.n, A.k

    counts0 = _max_parts_decomposition(a2, [A.exponents[i] for i in range(1, n)])
    v = [0] * n
    total = 0
    for i in range(1, n):
        c = counts0.get(A.exponents[i], 0)
        v[i] = c
        total += c
    v[0] = a1 - total
    assert A.degree(v) == (a1, a2)

    countsk = _max_parts_decomposition(k * a1 - a2, [k - A.exponents[i] for i in range(n - 1)])
    vp = [0] * n
    total = 0
    for i in range(n - 1):
        c = countsk.get(k - A.exponents[i], 0)
        vp[i] = c
        total += c
    vp[n - 1] = a1 - total
    assert A.degree(vp) == (a1, a2)

    m = max(0, -v[0], -vp[n - 1])
    clear = [0] * n
    clear[0] = m
    clear[n - 1] = m
    mono1 = tuple(v[i] + clear[i] for i in range(n))
    mono2 = tuple(vp[i] + clear[i] for i in range(n))
    assert min(mono1) >= 0 and min(mono2) >= 0
    gb = toric_ideal_groebner(A, order)
    certified = gb.reduces_to_zero(mono1, mono2)
    return CocycleData((a1, a2), tuple(v), tuple(vp), m, (mono1, mono2), certified)
