"""Certified isolation of the positive real zeros and their statistics.

Every decision is made in exact integer or rational arithmetic: the
coefficients span hundreds of orders of magnitude after the n^r
rescaling, so floating point cannot certify sign-variation counts.  The
isolator is a Descartes bisection over dyadic intervals (reverse the
coefficients, Taylor-shift by one, count sign variations); an interval
with count one encloses exactly one simple root, and count subadditivity
under splitting prunes the sibling when the left child inherits the full
count.  Positive roots are swept in doubling segments (0,1), (1,2),
(2,4), ... so the bracket never balloons to the Cauchy bound.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from .errors import IsolationFailure, NotSquareFree
from .fuss_catalan import FussCatalanDist
from .geometry import f_at, rho_inv, x_star
from .poly import ExactPolynomial, ModelParams, build_f, rescale_arg

DEFAULT_TOL = Fraction(1, 10**12)

_SQFREE_PRIMES = (2147483647, 2305843009213693951, 4611686018427387847)


@dataclass(frozen=True)
class ZeroEnclosure:
    """Dyadic bracket around exactly one root; lo == hi marks an exact root."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Uniform probability measure on a sorted point set."""

    points: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        if any(pts[i] > pts[i + 1] for i in range(len(pts) - 1)):
            pts = tuple(sorted(pts))
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)


# ---------------------------------------------------------------------------
# exact integer kernel

def _integer_coeffs(poly: ExactPolynomial) -> list[int]:
    lcm = math.lcm(*(c.denominator for c in poly.coeffs))
    return [int(c * lcm) for c in poly.coeffs]


def _taylor_shift1(a: list[int]) -> list[int]:
    """Coefficients of p(x + 1); each pass is a C-level suffix accumulation."""
    a = list(a)
    n = len(a) - 1
    for k in range(n):
        tail = list(accumulate(reversed(a[k:])))
        a[k:] = reversed(tail)
    return a


def _scale_half(a: list[int]) -> list[int]:
    """Coefficients of 2^n p(x / 2)."""
    n = len(a) - 1
    return [c << (n - k) for k, c in enumerate(a)]


def _strip_content2(a: list[int]) -> list[int]:
    g = min((c & -c).bit_length() - 1 for c in a if c)
    return [c >> g for c in a] if g > 0 else a


def _sign_variations(a) -> int:
    v, prev = 0, 0
    for c in a:
        if c:
            s = 1 if c > 0 else -1
            if prev and s != prev:
                v += 1
            prev = s
    return v


def _count01(a: list[int]) -> int:
    """Descartes bound for the number of roots in the open unit interval."""
    return _sign_variations(_taylor_shift1(a[::-1]))


def _isolate01(a: list[int]):
    """Isolate roots of a in (0,1): dyadic intervals (c, k) and exact roots."""
    intervals: list[tuple[int, int]] = []
    exact: list[tuple[int, int]] = []
    v0 = _count01(a)
    if v0 == 0:
        return intervals, exact
    if v0 == 1:
        return [(0, 0)], exact
    stack = [(0, 0, a, v0)]
    while stack:
        c, k, q, v = stack.pop()
        left = _strip_content2(_scale_half(q))
        vl = _count01(left)
        if vl == 1:
            intervals.append((2 * c, k + 1))
        elif vl > 1:
            stack.append((2 * c, k + 1, left, vl))
        if vl == v:
            # subadditivity: the midpoint and right half hold no roots
            continue
        right = _taylor_shift1(left)
        if right[0] == 0:
            exact.append((2 * c + 1, k + 1))
            zeros = 0
            while right[0] == 0:
                right.pop(0)
                zeros += 1
            if zeros > 1:
                raise NotSquareFree(
                    f"dyadic point {(2 * c + 1)}/2^{k + 1} is a multiple root"
                )
        vr = _count01(right)
        if vr == 1:
            intervals.append((2 * c + 1, k + 1))
        elif vr > 1:
            stack.append((2 * c + 1, k + 1, right, vr))
    return intervals, exact


def _eval_dyadic(a: list[int], num: int, shift: int) -> int:
    """Integer with the sign of p(num / 2^shift)."""
    n = len(a) - 1
    acc = a[n]
    for k in range(n - 1, -1, -1):
        acc = acc * num + (a[k] << (shift * (n - k)))
    return acc


def _gcd_degree_mod_p(a: list[int], b: list[int], p: int) -> int:
    """Degree of gcd(a, b) over GF(p); requires p not dividing both leads."""
    am = [c % p for c in a]
    bm = [c % p for c in b]

    def strip(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    am, bm = strip(am), strip(bm)
    while bm:
        inv = pow(bm[-1], p - 2, p)
        while len(am) >= len(bm):
            factor = am[-1] * inv % p
            off = len(am) - len(bm)
            for i, c in enumerate(bm):
                am[off + i] = (am[off + i] - factor * c) % p
            am = strip(am)
            if not am:
                break
        am, bm = bm, am
    return len(am) - 1


def _square_free(a: list[int]) -> bool:
    """Certify gcd(p, p') constant via modular gcds, exact Euclid on doubt."""
    da = [k * c for k, c in enumerate(a)][1:]
    for p in _SQFREE_PRIMES:
        if a[-1] % p and da[-1] % p:
            if _gcd_degree_mod_p(a, da, p) == 0:
                return True
    # all prescreen primes were unlucky (or a factor truly repeats):
    # settle it with plain Euclid over the rationals
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in da]
    while fb:
        while len(fa) >= len(fb):
            q = fa[-1] / fb[-1]
            off = len(fa) - len(fb)
            for i, c in enumerate(fb):
                fa[off + i] -= q * c
            fa.pop()
        while fa and fa[-1] == 0:
            fa.pop()
        fa, fb = fb, fa
    return len(fa) <= 1


def isolate_zeros(poly: ExactPolynomial, tol=DEFAULT_TOL) -> list[ZeroEnclosure]:
    """Disjoint enclosures of all positive roots, exactly degree many.

    Raises NotSquareFree when the polynomial shares a factor with its
    derivative, IsolationFailure when the positive-root count differs
    from the degree (both contradict the expected simple-positive-root
    structure and must stop the caller, never be absorbed silently).
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    n = poly.degree
    if n == 0:
        return []
    a = _integer_coeffs(poly)
    if a[0] == 0:
        raise IsolationFailure("zero constant term: x = 0 is a root, not positive")
    if not _square_free(a):
        raise NotSquareFree("gcd with the derivative is nonconstant")

    an_bits = abs(a[-1]).bit_length()
    fujiwara = max(
        2,
        2 + max(
            (abs(c).bit_length() - an_bits) // (n - k) + 1
            for k, c in enumerate(a[:-1])
            if c
        ),
    )

    brackets: list[tuple[Fraction, Fraction]] = []

    def emit(base: Fraction, span: Fraction, ivs, exacts):
        for c, k in ivs:
            brackets.append(
                (base + span * Fraction(c, 2**k), base + span * Fraction(c + 1, 2**k))
            )
        for c, k in exacts:
            pt = base + span * Fraction(c, 2**k)
            brackets.append((pt, pt))

    ivs, exacts = _isolate01(a)
    emit(Fraction(0), Fraction(1), ivs, exacts)
    j = 0
    while len(brackets) < n and j <= fujiwara:
        base = 1 << j
        seg = [c * base**k for k, c in enumerate(a)] if j else list(a)
        seg = _taylor_shift1(seg)  # roots in (0,1) <-> roots of a in (base, 2 base)
        if seg[0] == 0:
            brackets.append((Fraction(base), Fraction(base)))
            while seg[0] == 0:
                seg.pop(0)
        ivs, exacts = _isolate01(_strip_content2(seg))
        emit(Fraction(base), Fraction(base), ivs, exacts)
        j += 1

    if len(brackets) != n:
        raise IsolationFailure(
            f"found {len(brackets)} positive simple roots for degree {n}"
        )
    brackets.sort()

    refined = []
    for lo, hi in brackets:
        while hi - lo > tol:
            mid = (lo + hi) / 2
            num, den = mid.numerator, mid.denominator
            v = _eval_dyadic(a, num, den.bit_length() - 1)
            if v == 0:
                lo = hi = mid
                break
            vlo = _eval_dyadic(a, lo.numerator, lo.denominator.bit_length() - 1)
            if (v > 0) == (vlo > 0):
                lo = mid
            else:
                hi = mid
        refined.append(ZeroEnclosure(lo, hi))
    return refined


# ---------------------------------------------------------------------------
# measures built from the zeros

def rescaled_zero_measure(params: ModelParams, tol=DEFAULT_TOL) -> EmpiricalMeasure:
    """Zero counting measure of F_n(n^r x): enclosure midpoints, mass 1/n each."""
    rescaled = rescale_arg(build_f(params), params)
    enclosures = isolate_zeros(rescaled, tol)
    return EmpiricalMeasure(tuple(float(e.mid) for e in enclosures))


def empirical_cdf(m: EmpiricalMeasure, x: float) -> float:
    if m.n == 0:
        return 0.0
    return bisect_right(m.points, x) / m.n


def ks_distance(m: EmpiricalMeasure, d: FussCatalanDist) -> float:
    """sup |empirical - cdf|, checked one-sided at every jump point."""
    sup = 0.0
    for i, x in enumerate(m.points):
        c = d.cdf(x)
        sup = max(sup, abs((i + 1) / m.n - c), abs(i / m.n - c))
    return sup


def local_zero_count(params: ModelParams, eps1: float, eps2: float, tol=DEFAULT_TOL):
    """Observed roots of F_n(n^r x) in (eps1, eps2) against n (f o rho^-1)/pi."""
    xs = float(x_star(params.r))
    if not (0.0 < eps1 < eps2 < xs):
        raise ValueError(f"need 0 < eps1 < eps2 < {xs}")
    measure = rescaled_zero_measure(params, tol)
    observed = sum(1 for x in measure.points if eps1 < x < eps2)
    predicted = (
        params.n
        * (f_at(params.r, rho_inv(params.r, eps1).phi) - f_at(params.r, rho_inv(params.r, eps2).phi))
        / math.pi
    )
    return observed, predicted
