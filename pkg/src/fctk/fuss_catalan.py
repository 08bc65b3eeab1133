"""The Fuss-Catalan distribution of order r.

Supported on (0, (r+1)^(r+1)/r^r) with n-th moment binom(rn+n, n)/(rn+1);
order 1 is the Marchenko-Pastur law.  Everything routes through the angle
coordinate of fctk.geometry, where the density and distribution function
have elementary closed forms:

    density(rho(phi)) = sin(phi)^2 sin(r phi)^(r-1) / (pi sin((r+1)phi)^r)
    cdf(rho(phi))     = 1 - f(phi)/pi

The Stieltjes transform F(z) satisfies w^(r+1) - z w + z = 0 for
w = z F(z) on the branch with w -> 1 at infinity; the branch is selected
by tracking roots along a ray from a distant anchor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np
from scipy.integrate import quad

from . import geometry, rng
from .errors import BranchAmbiguity, DomainError, QuadratureFailure
from .geometry import PhiCoordinate, x_star

_QUAD_REL_TARGET = 1e-12
_STIELTJES_ANCHOR = 1e6
_BRANCH_POINT_CLEARANCE = 1e-6


def _quad(func, lo, hi, rel=_QUAD_REL_TARGET):
    value, err, info, *tail = quad(
        func, lo, hi, epsabs=0.0, epsrel=rel, limit=200, full_output=1
    )
    if tail:
        raise QuadratureFailure(
            f"quadrature flagged: {tail[0]} (achieved error estimate {err})"
        )
    if err > 1e3 * rel * max(abs(value), 1e-300):
        raise QuadratureFailure(f"error estimate {err} too large for value {value}")
    return value


def _phi_grid_from_p(r: int, targets: np.ndarray) -> np.ndarray:
    """Vectorized inversion of f(phi) = pi (1 - p) by bisection."""
    lo = np.full_like(targets, 5e-324)
    hi = np.full_like(targets, math.pi / (r + 1))
    want = math.pi * (1.0 - targets)
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        less = geometry.f_at(r, mid, np) < want
        lo = np.where(less, mid, lo)
        hi = np.where(less, hi, mid)
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class FussCatalanDist:
    """Order-r Fuss-Catalan distribution."""

    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise DomainError(f"order r must be a positive integer, got {self.r!r}")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, float(x_star(self.r)))

    # -- density and distribution function ---------------------------------

    def density_phi(self, c: PhiCoordinate) -> float:
        """Density at x = rho(phi) in the closed trigonometric form."""
        if c.r != self.r:
            raise DomainError(f"coordinate has r={c.r}, distribution has r={self.r}")
        r, phi = self.r, c.phi
        s1, sr, sr1 = math.sin(phi), math.sin(r * phi), math.sin((r + 1) * phi)
        return s1 * s1 * sr ** (r - 1) / (math.pi * sr1**r)

    def density_x(self, x: float) -> float:
        """Density at x; 0 outside the open support by convention."""
        if not (0.0 < x < self.support[1]):
            return 0.0
        return self.density_phi(geometry.rho_inv(self.r, x))

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        if x >= self.support[1]:
            return 1.0
        return 1.0 - geometry.f_phase(geometry.rho_inv(self.r, x)) / math.pi

    def quantile(self, p: float) -> float:
        """x with |cdf(x) - p| <= 1e-12, by bisection in the angle."""
        if not (0.0 < p < 1.0):
            raise DomainError(f"p must lie in (0, 1), got {p!r}")
        phi = float(_phi_grid_from_p(self.r, np.asarray([p]))[0])
        return geometry.rho_at(self.r, phi)

    # -- moments ------------------------------------------------------------

    def moment_exact(self, n: int) -> Fraction:
        """binom(rn + n, n) / (rn + 1), exactly."""
        if n < 0:
            raise DomainError(f"moment index must be >= 0, got {n}")
        return Fraction(math.comb(self.r * n + n, n), self.r * n + 1)

    def moment_quadrature(self, n: int) -> float:
        """(1/pi) integral of rho(phi)^n f'(phi) over the angle interval."""
        if n < 0:
            raise DomainError(f"moment index must be >= 0, got {n}")
        r = self.r
        top = math.pi / (r + 1)

        def integrand(phi):
            if phi <= 0.0:
                # rho -> x_star and f' -> (r-1)(r+2)/r as phi -> 0
                return float(x_star(r)) ** n * (r - 1) * (r + 2) / r / math.pi
            if phi >= top:
                return 0.0 if n else (r + 1) ** 2 / math.pi
            return geometry.rho_at(r, phi) ** n * geometry.f_deriv_at(r, phi) / math.pi

        return _quad(integrand, 0.0, top)

    # -- sampling -----------------------------------------------------------

    def sample(self, count: int, seed: int) -> np.ndarray:
        """count i.i.d. draws by inverse-CDF; deterministic given seed."""
        if count < 0:
            raise DomainError(f"count must be >= 0, got {count}")
        if count == 0:
            return np.empty(0)
        u = rng.uniforms(seed, count)
        phi = _phi_grid_from_p(self.r, u)
        return np.asarray(geometry.rho_at(self.r, phi, np))

    # -- Stieltjes transform --------------------------------------------------

    def _track_w1(self, z: complex, steps: int = 96) -> complex:
        """Follow the w -> 1 branch of w^(r+1) - z w + z = 0 from the anchor."""
        anchor = _STIELTJES_ANCHOR * z / abs(z)
        # clearance of the straight path from both branch points (0 and x_star)
        for bp in (0.0, self.support[1]):
            t = np.clip(
                np.real((bp - anchor) * np.conj(z - anchor)) / abs(z - anchor) ** 2
                if z != anchor
                else 0.0,
                0.0,
                1.0,
            )
            nearest = anchor + t * (z - anchor)
            if abs(nearest - bp) < _BRANCH_POINT_CLEARANCE:
                raise BranchAmbiguity(
                    f"continuation path passes within {_BRANCH_POINT_CLEARANCE} "
                    f"of the branch point {bp}"
                )
        w = 1.0 + 0.0j
        for s in np.linspace(0.0, 1.0, steps)[1:]:
            zz = anchor * (z / anchor) ** s
            roots = geometry.solve_trinomial(self.r, zz)
            w = min(roots, key=lambda rt: abs(rt - w))
        return w

    def stieltjes(self, z: complex) -> complex:
        """F(z) = w1(z)/z off the support, with z F(z) -> 1 at infinity."""
        z = complex(z)
        if z == 0:
            raise DomainError("z = 0 is a branch point")
        if z.imag == 0.0 and 0.0 <= z.real <= self.support[1]:
            raise DomainError(f"z={z} lies on the support cut [0, {self.support[1]}]")
        w = self._track_w1(z)
        # polish on the defining trinomial at fixed z
        for _ in range(8):
            fw = w ** (self.r + 1) - z * w + z
            dfw = (self.r + 1) * w**self.r - z
            w = w - fw / dfw
        return w / z

    def _stieltjes_mp(self, z, dps: int = 50) -> mp.mpc:
        """High-precision w1(z): double-precision seed, mp Newton polish.

        z may be an exact mpc circle node; only the branch-tracking seed
        rounds it to double.
        """
        w = self._track_w1(complex(z))
        with mp.workdps(dps):
            zz = mp.mpc(z)
            wm = mp.mpc(w)
            for _ in range(80):
                fw = wm ** (self.r + 1) - zz * wm + zz
                dfw = (self.r + 1) * wm**self.r - zz
                step = fw / dfw
                wm = wm - step
                if abs(step) < mp.mpf(10) ** (-dps + 4):
                    break
            return wm

    def stieltjes_moments(self, n_max: int, radius: float = 1e4, points: int = 32) -> list[float]:
        """Moments from the large-z expansion of z F(z).

        Fourier extraction on a circle |z| = radius.  The n-th coefficient
        of the expansion in 1/z contributes radius^(-n), far below double
        rounding for n >= 3 at radius 1e4, so the circle nodes and the
        transform values both stay in mpmath until the final average.
        """
        if points <= n_max:
            raise DomainError("need more circle points than moments")
        with mp.workdps(60):
            vals = []
            for k in range(points):
                zk = radius * mp.e ** (1j * 2 * mp.pi * k / points)
                vals.append(self._stieltjes_mp(zk, dps=60))
            out = []
            for n in range(n_max + 1):
                acc = mp.mpc(0)
                for k in range(points):
                    acc += vals[k] * mp.e ** (1j * 2 * mp.pi * k * n / points)
                out.append(float(mp.re(acc) / points * mp.mpf(radius) ** n))
        return out


def identity_check(r: int, n: int) -> tuple[float, Fraction]:
    """Integral of sin(pi t)^((r+1)n) / (sin(pi t/(r+1))^n sin(r pi t/(r+1))^(rn))
    over (0, 1) against its exact value binom((r+1)n, n)."""
    if r < 1 or n < 0:
        raise DomainError(f"need r >= 1 and n >= 0, got r={r}, n={n}")
    xs = float(x_star(r))

    def integrand(t):
        if t <= 0.0:
            return xs**n
        if t >= 1.0:
            return 0.0 if n else 1.0
        return math.sin(math.pi * t) ** ((r + 1) * n) / (
            math.sin(math.pi * t / (r + 1)) ** n
            * math.sin(r * math.pi * t / (r + 1)) ** (r * n)
        )

    lhs = _quad(integrand, 0.0, 1.0)
    rhs = Fraction(math.comb((r + 1) * n, n))
    return lhs, rhs
