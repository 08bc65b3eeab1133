"""Monte Carlo spectra of products of rectangular complex Ginibre matrices.

Each factor X_j has shape (n + nu_j) x (n + nu_{j-1}) with nu_0 = 0 and
independent complex Gaussian entries of unit variance, so the squared
singular values of Y = X_r ... X_1 divided by n^r converge to the
Fuss-Catalan law of order r with no extra constant.  Singular values are
taken from an SVD of the full product; forming Y*Y would square the
condition number.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng
from .errors import DecompositionFailure
from .poly import ModelParams
from .zeros import EmpiricalMeasure

# stream indices inside one spectrum draw: two Gaussian streams per factor
_STREAMS_PER_FACTOR = 2


@dataclass(frozen=True)
class SpectrumSample:
    """Squared singular values of one product draw, divided by n^r, sorted."""

    params: ModelParams
    values: np.ndarray
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))


def sample_spectrum(params: ModelParams, seed: int, scale: float = 1.0) -> SpectrumSample:
    """One draw of the n rescaled squared singular values.

    scale multiplies every matrix entry (spectra transform as
    |scale|^(2r)); it exists for the covariance check and defaults to 1.
    """
    if params.n < 1:
        raise ValueError("need n >= 1 to draw a spectrum")
    dims = [params.n] + [params.n + v for v in params.nu]
    y = None
    for j in range(1, params.r + 1):
        x = rng.complex_gaussians(
            seed, (dims[j], dims[j - 1]), stream=_STREAMS_PER_FACTOR * j
        )
        if scale != 1.0:
            x = scale * x
        y = x if y is None else x @ y
    try:
        singular = np.linalg.svd(y, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise DecompositionFailure(f"SVD failed for seed {seed}: {exc}") from exc
    values = np.sort(singular * singular) / float(params.n) ** params.r
    return SpectrumSample(params=params, values=values, seed=seed)


def aggregate_measure(params: ModelParams, trials: int, seed: int) -> EmpiricalMeasure:
    """Pool `trials` independent spectra; trial t uses seed + t."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    pooled = np.concatenate(
        [sample_spectrum(params, seed + t).values for t in range(trials)]
    )
    return EmpiricalMeasure(tuple(np.sort(pooled)))


def mean_moment(m: EmpiricalMeasure, k: int) -> float:
    """k-th raw moment of the empirical measure."""
    if k < 0:
        raise ValueError(f"moment order must be >= 0, got {k}")
    if m.n == 0:
        raise ValueError("empty measure has no moments")
    pts = np.asarray(m.points)
    return float(np.mean(pts**k))
