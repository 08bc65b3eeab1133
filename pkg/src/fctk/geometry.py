"""Trigonometric coordinates of the oscillatory region.

The angle phi in (0, pi/(r+1)) parameterizes the support of the limiting
zero distribution through the strictly decreasing bijection

    rho(phi) = sin((r+1)phi)^(r+1) / (sin(phi) sin(r phi)^r),

while the strictly increasing bijection

    f(phi) = (r+1)phi - r (sin((r+1)phi)/sin(r phi)) sin(phi)

carries the oscillation phase.  The conjugate saddle points of the
contour representation sit at a(phi) e^{+-i phi} with modulus
a(phi) = sin((r+1)phi)/sin(r phi) and solve the trinomial
w^(r+1) - x w + x = 0 at x = rho(phi).

Most functions take a backend module (math, mpmath, or numpy) so the
same expressions serve double-precision scalars, arbitrary precision,
and vectorized grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceFailure, DomainError

_SADDLE_RESIDUAL_REL = 1e-12
_TRINOMIAL_RESIDUAL_REL = 1e-10


@dataclass(frozen=True)
class PhiCoordinate:
    """Angle phi strictly inside (0, pi/(r+1)) for a given order r."""

    r: int
    phi: float

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise DomainError(f"r must be a positive integer, got {self.r!r}")
        if not (0.0 < self.phi < math.pi / (self.r + 1)):
            raise DomainError(
                f"phi must lie strictly in (0, pi/{self.r + 1}), got {self.phi!r}"
            )


@dataclass(frozen=True)
class SaddleData:
    """Conjugate saddle pair with Hessian data at a given phi."""

    w_plus: complex
    w_minus: complex
    hess_det: complex
    re_hess_det: float
    modulus: float


def x_star(r: int) -> Fraction:
    """Right edge (r+1)^(r+1) / r^r of the support, as an exact rational."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    return Fraction((r + 1) ** (r + 1), r**r)


# ---------------------------------------------------------------------------
# backend-generic forms (lib is math, mpmath, or numpy)

def rho_at(r, phi, lib=math):
    return lib.sin((r + 1) * phi) ** (r + 1) / (lib.sin(phi) * lib.sin(r * phi) ** r)


def saddle_modulus_at(r, phi, lib=math):
    return lib.sin((r + 1) * phi) / lib.sin(r * phi)


def f_at(r, phi, lib=math):
    return (r + 1) * phi - r * saddle_modulus_at(r, phi, lib) * lib.sin(phi)


def f_deriv_at(r, phi, lib=math):
    s1, sr = lib.sin(phi), lib.sin(r * phi)
    return (r * r * s1 * s1 + (r + 1) * sr * sr - r * sr * lib.sin((r + 2) * phi)) / (sr * sr)


def rho_deriv_at(r, phi, lib=math):
    s1, sr, sr1 = lib.sin(phi), lib.sin(r * phi), lib.sin((r + 1) * phi)
    # exact rearrangement of r^2 s1^2 - 2 r s1 sr cos((r+1)phi) + sr^2 as a
    # sum of squares; the expanded form cancels to zero in doubles near 0
    half = r * s1 - sr * lib.cos((r + 1) * phi)
    num = half * half + sr * sr * sr1 * sr1
    return -num * sr1**r / (s1 * s1 * sr ** (r + 1))


def hess_quartic_at(r, phi, lib=math):
    """Squared modulus of 1 - (r sin(phi)/sin(r phi)) e^{i(r+1)phi}.

    This is the bracket raised to the -1/4 power in the oscillatory
    amplitude; it stays strictly positive on the open interval.
    """
    s1, sr, sr1 = lib.sin(phi), lib.sin(r * phi), lib.sin((r + 1) * phi)
    re = 1 - r * s1 * lib.cos((r + 1) * phi) / sr
    im = r * s1 * sr1 / sr
    return re * re + im * im


def g_shift_at(r, nu, phi, lib=math):
    s1, sr, sr1 = lib.sin(phi), lib.sin(r * phi), lib.sin((r + 1) * phi)
    atan2 = getattr(lib, "atan2", None) or lib.arctan2
    arg = atan2(-r * s1 * sr1 / sr, 1 - r * s1 * lib.cos((r + 1) * phi) / sr)
    return -(r * phi / 2 + sum(nu) * phi) - arg / 2


# ---------------------------------------------------------------------------
# coordinate-level surface

def _check(c: PhiCoordinate) -> PhiCoordinate:
    if not isinstance(c, PhiCoordinate):
        raise DomainError(f"expected a PhiCoordinate, got {type(c)!r}")
    return c


def rho(c: PhiCoordinate) -> float:
    """x = rho(phi), strictly decreasing from x_star(r) to 0."""
    _check(c)
    return rho_at(c.r, c.phi)


def f_phase(c: PhiCoordinate) -> float:
    """Oscillation phase f(phi), strictly increasing from 0 to pi."""
    _check(c)
    return f_at(c.r, c.phi)


def f_phase_deriv(c: PhiCoordinate) -> float:
    _check(c)
    return f_deriv_at(c.r, c.phi)


def rho_deriv(c: PhiCoordinate) -> float:
    _check(c)
    return rho_deriv_at(c.r, c.phi)


def g_shift(c: PhiCoordinate, nu) -> float:
    """Phase shift -(r/2 + sum(nu)) phi - Arg(1 - (r sin phi/sin r phi) e^{i(r+1)phi}) / 2.

    The principal complex argument reproduces the arctan of the same
    ratio while staying continuous when its denominator vanishes.
    """
    _check(c)
    return g_shift_at(c.r, tuple(nu), c.phi)


def rho_inv(r: int, x: float) -> PhiCoordinate:
    """Invert rho by bisection; |rho(phi) - x| <= 1e-14 max(1, x)."""
    xs = float(x_star(r))
    if not (0.0 < x < xs):
        raise DomainError(f"x must lie in (0, {xs}) for r={r}, got {x!r}")
    lo, hi = 5e-324, math.pi / (r + 1)
    # rho decreases: rho(lo) ~ x_star, rho(hi) ~ 0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if rho_at(r, mid) > x:
            lo = mid
        else:
            hi = mid
    phi = 0.5 * (lo + hi)
    if abs(rho_at(r, phi) - x) > 1e-14 * max(1.0, x):
        raise ConvergenceFailure(f"rho inversion stalled at phi={phi!r}")
    return PhiCoordinate(r, phi)


def saddle_points(c: PhiCoordinate) -> SaddleData:
    """Conjugate saddles a(phi) e^{+-i phi} with Hessian determinants.

    Checks the trinomial residual at x = rho(phi) and that the
    determinant of the real part of the Hessian is strictly positive.
    """
    _check(c)
    r, phi = c.r, c.phi
    s1, sr, sr1 = math.sin(phi), math.sin(r * phi), math.sin((r + 1) * phi)
    a = sr1 / sr
    w_plus = complex(a * math.cos(phi), a * math.sin(phi))
    w_minus = w_plus.conjugate()
    ratio = r * s1 / sr
    d_factor = 1 - ratio * complex(math.cos((r + 1) * phi), math.sin((r + 1) * phi))
    hess_det = (a * complex(math.cos(phi), math.sin(phi))) ** r * d_factor
    re_hess_det = (
        a**r * math.cos(phi) ** (r - 1)
        * (math.cos(phi) - r * s1 * math.cos((r + 2) * phi) / sr)
    )
    x = rho_at(r, phi)
    for w in (w_plus, w_minus):
        res = abs(w ** (r + 1) - x * w + x)
        if res > _SADDLE_RESIDUAL_REL * (1 + abs(x)) * (1 + abs(w) ** (r + 1)):
            raise ConvergenceFailure(f"saddle residual {res} too large at phi={phi}")
    if not re_hess_det > 0:
        raise ConvergenceFailure(f"re_hess_det={re_hess_det} not positive at phi={phi}")
    return SaddleData(w_plus, w_minus, hess_det, re_hess_det, a)


def solve_trinomial(r: int, x: complex) -> list[complex]:
    """All r+1 roots of w^(r+1) - x w + x = 0.

    Companion-matrix eigenvalues followed by two Newton polish steps per
    root; robust up to the double root at the real edge x = x_star(r).
    """
    if x == 0:
        raise DomainError("x must be nonzero")
    x = complex(x)
    coeffs = [1.0] + [0.0] * (r - 1) + [-x, x]
    roots = [complex(w) for w in np.roots(coeffs)]
    polished = []
    for w in roots:
        for _ in range(2):
            fw = w ** (r + 1) - x * w + x
            dfw = (r + 1) * w**r - x
            if abs(dfw) > 1e-8 * (1 + abs(w) ** r) * (1 + abs(x)):
                w = w - fw / dfw
        polished.append(w)
    scale = (1 + abs(x)) * (1 + max(abs(w) for w in polished) ** (r + 1))
    worst = max(abs(w ** (r + 1) - x * w + x) for w in polished)
    if worst > _TRINOMIAL_RESIDUAL_REL * scale:
        raise ConvergenceFailure(
            f"trinomial residual {worst} above tolerance after polish "
            f"(r={r}, x={x}, 2 Newton steps per root)"
        )
    return polished
