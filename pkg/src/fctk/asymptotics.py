"""Oscillatory large-n approximation of the rescaled polynomials.

For x = rho(phi) the rescaled polynomial F_n(n^r x) behaves like

    prefactor(n, phi) * ( cos(n (r a(phi) sin phi - (r+1) phi) + g) + o(1) ),

with a(phi) = sin((r+1)phi)/sin(r phi) and the phase shift g from
fctk.geometry.  The prefactor grows like exp(Theta(n)), so all magnitude
bookkeeping is done in log-domain with an explicit sign bit and only the
final assembly touches big floats.  The normalized polynomial
(exact value divided by the full prefactor) is computed through the
exact-rational evaluator at a rational approximant of rho(phi), which
sidesteps the catastrophic cancellation of the alternating sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from . import geometry, poly
from .errors import DomainError, NonConvergence
from .geometry import PhiCoordinate
from .poly import ExactPolynomial, ModelParams

# Denominator cap for the rational approximant of rho(phi) and the
# absolute error budget it must meet on the normalized scale.
RHO_APPROX_DENOMINATOR_CAP = 10**40
RHO_APPROX_ERROR_BUDGET = 1e-30

# Flagship grid reproduction: r=3, nu=(2,4,5), n=150 on [0.5 pi/4, 0.55 pi/4].
FIG1_PARAMS = ModelParams(r=3, nu=(2, 4, 5), n=150)
FIG1_PHI_LO = 0.5 * math.pi / 4
FIG1_PHI_HI = 0.55 * math.pi / 4
FIG1_COUNT = 200


@dataclass(frozen=True)
class PRValue:
    """Log-domain oscillatory value: sign * exp(log_magnitude) * oscillation."""

    log_magnitude: float
    sign_parity: int
    oscillation: float | None = None
    assembled: mp.mpf | None = None

    @property
    def sign(self) -> int:
        return -1 if self.sign_parity else 1


def _match(params: ModelParams, c: PhiCoordinate):
    if params.r != c.r:
        raise DomainError(f"params.r={params.r} does not match coordinate r={c.r}")


def _log_prefactor(params: ModelParams, phi):
    """log of the positive part of the amplitude at the current mp precision."""
    r, n, snu = params.r, params.n, params.nu_sum
    s1, sr, sr1 = mp.sin(phi), mp.sin(r * phi), mp.sin((r + 1) * phi)
    return (
        mp.log(2)
        - r * mp.log(2 * mp.pi) / 2
        + (mp.mpf(r) / 2 + snu) * (mp.log(sr) - mp.log(n) - mp.log(sr1))
        + n * r * (sr1 / sr) * mp.cos(phi)
        + n * (mp.log(sr) - mp.log(s1))
        - mp.log(geometry.hess_quartic_at(r, phi, mp)) / 4
    )


def _cos_argument(params: ModelParams, phi):
    r, n = params.r, params.n
    a = geometry.saddle_modulus_at(r, phi, mp)
    return n * (r * a * mp.sin(phi) - (r + 1) * phi) + geometry.g_shift_at(
        r, params.nu, phi, mp
    )


def _working_prec(params: ModelParams, c: PhiCoordinate) -> int:
    """Bits needed to assemble exp(log_magnitude) with ~20 guard digits."""
    with mp.workprec(128):
        lm = _log_prefactor(params, mp.mpf(c.phi))
        prec = max(128, 20 + int(mp.ceil(abs(lm) / mp.log(2))) + 64)
    cap = poly.precision_cap_bits()
    if prec > cap:
        raise NonConvergence(
            f"assembly needs {prec} bits, above the cap of {cap} "
            f"(set FCTK_PRECISION_CAP to raise it)"
        )
    return prec


def cosine_approximant(params: ModelParams, c: PhiCoordinate) -> float:
    """cos(n (r a sin(phi) - (r+1) phi) + g(r, nu, phi)), in [-1, 1]."""
    _match(params, c)
    with mp.workprec(128):
        return float(mp.cos(_cos_argument(params, mp.mpf(c.phi))))


def pr_prefactor_log(params: ModelParams, c: PhiCoordinate) -> PRValue:
    """Amplitude of the oscillatory approximation, oscillation unset.

    log_magnitude collects 2/(2 pi)^(r/2), the (sin r phi/(n sin(r+1)phi))
    power, the exponential factor, |sin r phi / sin phi|^n and the inverse
    quartic root; sign_parity records (-1)^n from the negative base.
    """
    _match(params, c)
    if params.n < 1:
        raise DomainError("prefactor requires degree n >= 1")
    with mp.workprec(256):
        lm = _log_prefactor(params, mp.mpf(c.phi))
    return PRValue(log_magnitude=float(lm), sign_parity=params.n % 2)


def pr_approx(params: ModelParams, c: PhiCoordinate) -> PRValue:
    """Full oscillatory approximation with the o(1) term dropped."""
    _match(params, c)
    if params.n < 1:
        raise DomainError("approximation requires degree n >= 1")
    prec = _working_prec(params, c)
    with mp.workprec(prec):
        phi = mp.mpf(c.phi)
        lm = _log_prefactor(params, phi)
        osc = mp.cos(_cos_argument(params, phi))
        assembled = (-1) ** params.n * mp.e**lm * osc
    return PRValue(
        log_magnitude=float(lm),
        sign_parity=params.n % 2,
        oscillation=float(osc),
        assembled=assembled,
    )


@lru_cache(maxsize=16)
def _rescaled_f(params: ModelParams) -> ExactPolynomial:
    return poly.rescale_arg(poly.build_f(params), params)


def _rational_rho(r: int, phi_mp) -> Fraction:
    """Best rational approximant of rho(phi) with bounded denominator."""
    x_exact = poly._to_fraction(geometry.rho_at(r, phi_mp, mp))
    return x_exact.limit_denominator(RHO_APPROX_DENOMINATOR_CAP)


def normalized_poly(params: ModelParams, c: PhiCoordinate) -> float:
    """Exact F_n(n^r rho(phi)) divided by the full prefactor; O(1) in n.

    The evaluation point is a rational approximant of rho(phi); its
    first-order effect on the normalized value, delta moved through the
    angle (delta/|rho'|) times the phase derivative (~ n f'), must stay
    below RHO_APPROX_ERROR_BUDGET.  (A derivative bound from raw
    coefficient norms would overshoot the oscillatory scale by exp(c n)
    and reject perfectly good approximants.)
    """
    _match(params, c)
    if params.n < 1:
        raise DomainError("normalization requires degree n >= 1")
    prec = _working_prec(params, c)
    rescaled = _rescaled_f(params)
    with mp.workprec(prec):
        phi = mp.mpf(c.phi)
        x_mp = geometry.rho_at(params.r, phi, mp)
        x_rat = _rational_rho(params.r, phi)
        delta = float(abs(x_mp - mp.mpf(x_rat.numerator) / x_rat.denominator))
        value = poly.eval_exact(rescaled, x_rat)
        lm = _log_prefactor(params, phi)
        ratio = (mp.mpf(value.numerator) / value.denominator) / mp.e**lm
    phi_shift = delta / abs(geometry.rho_deriv_at(params.r, c.phi))
    sensitivity = (params.n * abs(geometry.f_deriv_at(params.r, c.phi)) + 30.0)
    if sensitivity * phi_shift > RHO_APPROX_ERROR_BUDGET:
        raise NonConvergence(
            "rational approximant of rho(phi) too coarse for the "
            "normalized-polynomial error budget"
        )
    return float((-1) ** params.n * ratio)


def fig1_row(params: ModelParams, phi: float) -> tuple[float, float, float]:
    """One grid row (phi, normalized polynomial, cosine approximant)."""
    c = PhiCoordinate(params.r, phi)
    return (phi, normalized_poly(params, c), cosine_approximant(params, c))


def _fig1_task(args) -> tuple[float, float, float]:
    r, nu, n, phi = args
    return fig1_row(ModelParams(r=r, nu=nu, n=n), phi)


def fig1_dataset(
    params: ModelParams,
    phi_lo: float,
    phi_hi: float,
    count: int,
    workers: int = 1,
) -> list[tuple[float, float, float]]:
    """Rows (phi, F_tilde, c_n) at `count` equally spaced phi values."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    top = math.pi / (params.r + 1)
    if not (0.0 < phi_lo < phi_hi < top):
        raise DomainError(
            f"window must satisfy 0 < phi_lo < phi_hi < pi/{params.r + 1}"
        )
    if count == 1:
        grid = [phi_lo]
    else:
        step = (phi_hi - phi_lo) / (count - 1)
        grid = [phi_lo + i * step for i in range(count)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        tasks = [(params.r, params.nu, params.n, phi) for phi in grid]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_fig1_task, tasks, chunksize=8))
    return [fig1_row(params, phi) for phi in grid]
