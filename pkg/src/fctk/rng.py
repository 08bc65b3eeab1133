"""Reproducible random streams on a counter-based generator.

Streams are keyed by (seed, stream-index) pairs fed to a 64-bit Philox
counter generator, so parallel draws are deterministic across platforms.
Uniforms come from the generator's 53-bit mantissa path; Gaussians are
produced by an explicit Box-Muller transform on those uniforms.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def generator(seed: int, stream: int = 0) -> np.random.Generator:
    key = [np.uint64(seed & _MASK64), np.uint64(stream & _MASK64)]
    return np.random.Generator(np.random.Philox(key=key))


def uniforms(seed: int, count: int, stream: int = 0) -> np.ndarray:
    """count uniforms in [0, 1) with 53-bit mantissas."""
    return generator(seed, stream).random(count)


def normals(seed: int, count: int, stream: int = 0) -> np.ndarray:
    """count standard normals via Box-Muller."""
    half = (count + 1) // 2
    u = uniforms(seed, 2 * half, stream)
    u1 = 1.0 - u[:half]  # shift into (0, 1] so the log is finite
    u2 = u[half:]
    radius = np.sqrt(-2.0 * np.log(u1))
    z = np.concatenate([radius * np.cos(2 * np.pi * u2), radius * np.sin(2 * np.pi * u2)])
    return z[:count]


def complex_gaussians(seed: int, shape: tuple[int, ...], stream: int = 0) -> np.ndarray:
    """Complex Gaussians with unit variance: Re, Im ~ N(0, 1/2) independent."""
    count = int(np.prod(shape))
    re = normals(seed, count, stream)
    im = normals(seed, count, stream + 1)
    return ((re + 1j * im) / np.sqrt(2.0)).reshape(shape)
