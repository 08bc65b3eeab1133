"""Independent oracles on the integral representation of F_n(n^r x).

On the torus [-pi, pi]^r with contour radius a(phi) the rescaled
polynomial equals

    (2 pi)^(-r) (sin r phi / (n sin (r+1) phi))^(nu_1+...+nu_r)
        * integral of exp(n a sum_j e^{i t_j})
                      (1 - b e^{-i sum_j t_j})^n e^{-i sum_j nu_j t_j} dt,

with a = sin((r+1)phi)/sin(r phi) and b = sin((r+1)phi)/sin(phi).  The
integrand is entire and 2 pi periodic, so the plain tensor-product
trapezoid sum converges spectrally in the per-axis point count.  The
saddle-point value assembled from the Hessian data provides the matching
large-n approximation, and a brute grid search verifies that the
modulus-squared profile peaks exactly at (+-phi, ..., +-phi).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from . import geometry
from .errors import AsymmetryWarning, DomainError, GuardExceeded
from .geometry import PhiCoordinate
from .poly import ModelParams

NODE_GUARD = 10**8
_IMAG_RESIDUAL_REL = 1e-10


@dataclass(frozen=True)
class QuadratureGrid:
    """Equispaced periodic nodes on [-pi, pi] per axis; m^r total points."""

    r: int
    m: int

    def __post_init__(self):
        if self.r < 1:
            raise DomainError(f"dimension r must be >= 1, got {self.r}")
        if self.m < 8:
            raise GuardExceeded(f"need at least 8 points per axis, got {self.m}")
        if self.m**self.r > NODE_GUARD:
            raise GuardExceeded(
                f"m^r = {self.m ** self.r} exceeds the node guard {NODE_GUARD}"
            )

    @property
    def nodes(self) -> np.ndarray:
        return -math.pi + 2.0 * math.pi * np.arange(self.m) / self.m


def _axis_sums(values_per_axis: list[np.ndarray]) -> np.ndarray:
    """Broadcast sum over a tensor grid, one 1-d array per axis."""
    total = values_per_axis[0]
    for axis_vals in values_per_axis[1:]:
        total = total[..., None] + axis_vals
    return total


def contour_eval(params: ModelParams, x: float, grid: QuadratureGrid) -> float:
    """Trapezoid value of the torus integral; matches eval_exact spectrally.

    The imaginary part must vanish by t -> -t symmetry and is checked
    against a relative bound; exceeding it emits AsymmetryWarning.
    """
    if grid.r != params.r:
        raise DomainError(f"grid dimension {grid.r} != params.r {params.r}")
    if params.n < 1:
        raise DomainError("contour representation requires degree n >= 1")
    r, n = params.r, params.n
    xs = float(geometry.x_star(r))
    if not (0.0 < float(x) < xs):
        raise DomainError(f"x must lie in (0, {xs}), got {x}")
    phi = geometry.rho_inv(r, float(x)).phi
    a = geometry.saddle_modulus_at(r, phi)
    b = math.sin((r + 1) * phi) / math.sin(phi)

    t = grid.nodes
    eit = np.exp(1j * t)
    # accumulate slabs along the first axis in fixed order (deterministic,
    # and keeps peak memory at m^(r-1) nodes)
    total = 0.0 + 0.0j
    l1 = 0.0
    if r == 1:
        integrand = np.exp(n * a * eit) * (1 - b * np.exp(-1j * t)) ** n
        integrand = integrand * np.exp(-1j * params.nu[0] * t)
        total = integrand.sum()
        l1 = np.abs(integrand).sum()
    else:
        inner_e = _axis_sums([eit] * (r - 1))
        inner_t = _axis_sums([t] * (r - 1))
        # phase of the q factor over the trailing r-1 axes
        inner_q = _axis_sums([params.nu[j] * t for j in range(1, r)])
        for i in range(grid.m):
            s_e = eit[i] + inner_e
            s_t = t[i] + inner_t
            slab = np.exp(n * a * s_e) * (1 - b * np.exp(-1j * s_t)) ** n
            slab = slab * np.exp(-1j * (params.nu[0] * t[i] + inner_q))
            total += slab.sum()
            l1 += np.abs(slab).sum()
    prefactor = (math.sin(r * phi) / (n * math.sin((r + 1) * phi))) ** params.nu_sum
    value = total / grid.m**r * prefactor
    # imaginary part vanishes by t -> -t symmetry up to rounding; compare
    # against the larger of the value and the quadrature noise floor
    noise_scale = max(abs(value.real), 1e-3 * l1 / grid.m**r * prefactor)
    if noise_scale > 0 and abs(value.imag) > _IMAG_RESIDUAL_REL * noise_scale:
        warnings.warn(
            f"imaginary residual {value.imag} exceeds {_IMAG_RESIDUAL_REL} relative",
            AsymmetryWarning,
        )
    return float(value.real)


def msp_value(params: ModelParams, c: PhiCoordinate) -> mp.mpf:
    """Saddle-point approximation of F_n(n^r rho(phi)).

    Both conjugate saddle contributions are assembled from
    exp(-n p(saddle)), q(saddle) and det Hess p; the square root takes
    the principal branch of each Hessian eigenvalue, the choice fixed by
    the Gaussian integral normalization.  Equals the oscillatory
    approximation of fctk.asymptotics identically.
    """
    from . import asymptotics  # local import; cycle with pr consistency tests

    if params.r != c.r:
        raise DomainError(f"params.r={params.r} does not match coordinate r={c.r}")
    if params.n < 1:
        raise DomainError("saddle approximation requires degree n >= 1")
    r, n = params.r, params.n
    prec = asymptotics._working_prec(params, c)
    with mp.workprec(prec):
        phi = mp.mpf(c.phi)
        s1, sr, sr1 = mp.sin(phi), mp.sin(r * phi), mp.sin((r + 1) * phi)
        a = sr1 / sr
        p_saddle = -a * r * mp.e ** (1j * phi) - mp.log(1 - (sr1 / s1) * mp.e ** (-1j * r * phi))
        q_saddle = mp.e ** (-1j * sum(params.nu) * phi)
        d_factor = 1 - (r * s1 / sr) * mp.e ** (1j * (r + 1) * phi)
        # principal square roots of the eigenvalues a e^{i phi} (x r-1) and
        # a e^{i phi} d_factor
        sqrt_det = (mp.sqrt(a) * mp.e ** (1j * phi / 2)) ** (r - 1) * mp.sqrt(
            a * mp.e ** (1j * phi) * d_factor
        )
        i_plus = (2 * mp.pi / n) ** (mp.mpf(r) / 2) * mp.e ** (-n * p_saddle) * q_saddle / sqrt_det
        value = (
            (sr / (n * sr1)) ** params.nu_sum
            / (2 * mp.pi) ** r
            * 2
            * mp.re(i_plus)
        )
        return +value


def h_profile(c: PhiCoordinate, points: np.ndarray) -> np.ndarray:
    """Modulus-squared profile h at an array of torus points (last axis = r)."""
    r, phi = c.r, c.phi
    a = geometry.saddle_modulus_at(r, phi)
    s1, sr1 = math.sin(phi), math.sin((r + 1) * phi)
    cos_sum = np.cos(points).sum(axis=-1)
    coord_sum = points.sum(axis=-1)
    return np.exp(2 * a * cos_sum) * (
        s1 * s1 + sr1 * sr1 - 2 * s1 * sr1 * np.cos(coord_sum)
    )


def verify_h_max(c: PhiCoordinate, grid_m: int):
    """Grid argmax of h and its distance to the nearer of (+-phi, ..., +-phi).

    The distance must stay within one grid cell diagonal, 2 pi sqrt(r)/m.
    """
    if grid_m < 64:
        raise DomainError(f"grid_m must be >= 64, got {grid_m}")
    grid = QuadratureGrid(c.r, grid_m)  # reuses the m^r node guard
    t = grid.nodes
    r, phi = c.r, c.phi
    a = geometry.saddle_modulus_at(r, phi)
    s1, sr1 = math.sin(phi), math.sin((r + 1) * phi)

    best_val = -math.inf
    best_idx = None
    if r == 1:
        vals = np.exp(2 * a * np.cos(t)) * (
            s1 * s1 + sr1 * sr1 - 2 * s1 * sr1 * np.cos(t)
        )
        best_idx = (int(np.argmax(vals)),)
        best_val = float(vals[best_idx[0]])
    else:
        inner_cos = _axis_sums([np.cos(t)] * (r - 1))
        inner_sum = _axis_sums([t] * (r - 1))
        for i in range(grid_m):
            vals = np.exp(2 * a * (math.cos(t[i]) + inner_cos)) * (
                s1 * s1 + sr1 * sr1 - 2 * s1 * sr1 * np.cos(t[i] + inner_sum)
            )
            flat = int(np.argmax(vals))
            if vals.flat[flat] > best_val:
                best_val = float(vals.flat[flat])
                best_idx = (i,) + np.unravel_index(flat, vals.shape)
    argmax = np.array([t[i] for i in best_idx])
    d_plus = float(np.linalg.norm(argmax - phi))
    d_minus = float(np.linalg.norm(argmax + phi))
    return argmax, min(d_plus, d_minus)
