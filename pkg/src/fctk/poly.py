"""Exact construction and evaluation of the hypergeometric polynomials.

The degree-n polynomial built here is

    F_n(x) = sum_k  binom(n, k) (-x)^k / ((k + nu_1)! ... (k + nu_r)!),

together with its monic companion P_n = (-1)^n prod_j (n + nu_j)! F_n.
Coefficients are kept as exact rationals: the alternating sum loses all
significance in fixed precision once n is moderately large and the
argument is of order n^r, so every downstream oracle (root isolation,
contour quadrature, normalized-polynomial plots) evaluates through this
module's exact or escalating big-float paths.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import NonConvergence

# Escalation for eval_bigfloat starts here and doubles until the cap.
START_PRECISION_BITS = 128
DEFAULT_PRECISION_CAP_BITS = 16384


def precision_cap_bits() -> int:
    """Big-float precision cap in bits; FCTK_PRECISION_CAP overrides."""
    return int(os.environ.get("FCTK_PRECISION_CAP", DEFAULT_PRECISION_CAP_BITS))


@dataclass(frozen=True)
class ModelParams:
    """Number of Ginibre factors r, dimension offsets nu, and degree n."""

    r: int
    nu: tuple[int, ...]
    n: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"r must be a positive integer, got {self.r!r}")
        nu = tuple(int(v) for v in self.nu)
        object.__setattr__(self, "nu", nu)
        if len(nu) != self.r:
            raise ValueError(f"nu must have length r={self.r}, got {nu}")
        if any(v < 0 for v in nu):
            raise ValueError(f"offsets nu must be nonnegative, got {nu}")
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"degree n must be a nonnegative integer, got {self.n!r}")

    @property
    def nu_sum(self) -> int:
        return sum(self.nu)


@dataclass(frozen=True)
class ExactPolynomial:
    """Dense univariate polynomial with exact rational coefficients.

    coeffs[k] multiplies x^k; the leading coefficient is nonzero.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if len(self.coeffs) > 1 and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def build_f(params: ModelParams) -> ExactPolynomial:
    """Exact coefficients (-1)^k binom(n,k) / prod_j (k + nu_j)!."""
    n = params.n
    coeffs = []
    for k in range(n + 1):
        den = math.prod(math.factorial(k + v) for v in params.nu)
        coeffs.append(Fraction((-1) ** k * math.comb(n, k), den))
    return ExactPolynomial(tuple(coeffs))


def build_p(params: ModelParams) -> ExactPolynomial:
    """Monic companion (-1)^n prod_j (n + nu_j)! times build_f output."""
    scale = (-1) ** params.n * math.prod(
        math.factorial(params.n + v) for v in params.nu
    )
    f = build_f(params)
    return ExactPolynomial(tuple(c * scale for c in f.coeffs))


def rescale_arg(poly: ExactPolynomial, params: ModelParams) -> ExactPolynomial:
    """Substitute x -> n^r x: coefficient k is multiplied exactly by n^(r k)."""
    base = params.n ** params.r if params.n > 0 else 1
    return ExactPolynomial(
        tuple(c * base**k for k, c in enumerate(poly.coeffs))
    )


def eval_exact(poly: ExactPolynomial, x) -> Fraction:
    """Horner evaluation over the rationals; no rounding anywhere."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(poly.coeffs):
        acc = acc * x + c
    return acc


def _to_fraction(x) -> Fraction:
    """Exact rational value of x (int, Fraction, float, or mpmath mpf)."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, mp.mpf):
        sign, man, exp, _ = mp.mpf(x)._mpf_
        if man == 0:
            if x == 0:
                return Fraction(0)
            raise ValueError(f"cannot convert non-finite value {x!r}")
        q = Fraction(man, 1) * Fraction(2) ** exp
        return -q if sign else q
    raise TypeError(f"unsupported evaluation point type {type(x)!r}")


def bigfloat(value, precision_bits: int = START_PRECISION_BITS) -> mp.mpf:
    """Round an exact rational (or float) to an mpf at the given precision."""
    q = _to_fraction(value)
    with mp.workprec(precision_bits):
        return mp.mpf(q.numerator) / q.denominator


def eval_bigfloat(poly: ExactPolynomial, x, precision_bits: int = START_PRECISION_BITS) -> mp.mpf:
    """Evaluate with escalating precision until two rounds agree.

    The evaluation point is taken exactly (floats and mpf values are
    dyadic rationals).  Working precision doubles from 128 bits until two
    successive Horner evaluations agree to 2^(-precision_bits/2) relative
    error, which also pins the sign for any nonzero value.  Hitting the
    precision cap raises NonConvergence: the point is then within
    cap-resolution of a root and the caller should fall back to
    eval_exact on a rational approximant.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    xq = _to_fraction(x)
    cap = precision_cap_bits()
    target = Fraction(1, 2 ** (precision_bits // 2))
    prev = None
    prec = START_PRECISION_BITS
    while prec <= cap:
        with mp.workprec(prec):
            xv = mp.mpf(xq.numerator) / xq.denominator
            acc = mp.mpf(0)
            for c in reversed(poly.coeffs):
                acc = acc * xv + mp.mpf(c.numerator) / c.denominator
        if prev is not None and acc != 0 and prev != 0:
            if abs(acc - prev) <= float(target) * abs(acc):
                with mp.workprec(precision_bits):
                    return +acc
        prev = acc
        prec *= 2
    raise NonConvergence(
        f"no agreement below {cap} bits; evaluation point is within "
        f"cap-resolution of a root"
    )


def poly_to_json(params: ModelParams, poly: ExactPolynomial) -> str:
    """Serialize as {r, nu, n, coeffs} with coefficients as 'num/den' strings."""
    payload = {
        "r": params.r,
        "nu": list(params.nu),
        "n": params.n,
        "coeffs": [str(c) for c in poly.coeffs],
    }
    return json.dumps(payload)


def poly_from_json(text: str) -> tuple[ModelParams, ExactPolynomial]:
    data = json.loads(text)
    params = ModelParams(r=data["r"], nu=tuple(data["nu"]), n=data["n"])
    coeffs = tuple(Fraction(s) for s in data["coeffs"])
    return params, ExactPolynomial(coeffs)
