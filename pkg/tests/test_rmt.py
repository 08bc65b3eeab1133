import math

import numpy as np
import pytest

from fctk.fuss_catalan import FussCatalanDist
from fctk.poly import ModelParams
from fctk.rmt import aggregate_measure, mean_moment, sample_spectrum
from fctk.rng import normals, uniforms
from fctk.zeros import EmpiricalMeasure, ks_distance


def test_uniform_stream_determinism():
    a = uniforms(42, 1000)
    assert np.array_equal(a, uniforms(42, 1000))
    assert not np.array_equal(a, uniforms(42, 1000, stream=1))
    assert ((a >= 0) & (a < 1)).all()


def test_normals_moments():
    z = normals(7, 200_000)
    assert abs(z.mean()) < 0.01
    assert abs(z.std() - 1) < 0.01


def test_spectrum_shape_and_determinism():
    params = ModelParams(2, (1, 2), 30)
    s = sample_spectrum(params, seed=5)
    assert len(s.values) == 30
    assert (s.values >= 0).all()
    assert np.array_equal(s.values, np.sort(s.values))
    assert np.array_equal(s.values, sample_spectrum(params, seed=5).values)
    assert not np.array_equal(s.values, sample_spectrum(params, seed=6).values)


def test_single_entry_is_exponential():
    # r=1, nu=(0), n=1: |complex gaussian|^2 is Exp(1)
    params = ModelParams(1, (0,), 1)
    draws = np.array([sample_spectrum(params, seed=s).values[0] for s in range(30_000)])
    assert abs(draws.mean() - 1.0) < 0.02
    assert (draws >= 0).all()


def test_scale_covariance():
    params = ModelParams(2, (0, 0), 40)
    base = sample_spectrum(params, seed=42).values
    doubled = sample_spectrum(params, seed=42, scale=2.0).values
    assert np.array_equal(doubled, 2 ** (2 * params.r) * base)


def test_aggregate_and_moments():
    params = ModelParams(2, (0, 0), 100)
    m = aggregate_measure(params, trials=20, seed=7)
    assert m.n == 2000
    d = FussCatalanDist(2)
    pts = np.asarray(m.points)
    for k in (1, 2, 3):
        exact = float(d.moment_exact(k))
        se = pts**k
        stderr = se.std() / math.sqrt(len(se))
        assert abs(mean_moment(m, k) - exact) <= 3 * stderr
    assert mean_moment(m, 0) == 1.0


def test_ks_improvement():
    d = FussCatalanDist(1)
    big = aggregate_measure(ModelParams(1, (0,), 200), trials=10, seed=3)
    small = aggregate_measure(ModelParams(1, (0,), 50), trials=40, seed=3)
    assert big.n == small.n == 2000
    assert ks_distance(big, d) < ks_distance(small, d)
    assert ks_distance(big, d) < 0.05


def test_moment_convergence_full_size():
    # n = 200, 50 trials: first three moments within 3 standard errors
    for r in (1, 2, 3):
        params = ModelParams(r, (0,) * r, 200)
        m = aggregate_measure(params, trials=50, seed=91)
        d = FussCatalanDist(r)
        pts = np.asarray(m.points)
        for k in (1, 2, 3):
            exact = float(d.moment_exact(k))
            stderr = (pts**k).std() / math.sqrt(pts.size)
            assert abs(mean_moment(m, k) - exact) <= 3 * stderr, (r, k)


def test_decomposition_failure_records_seed(monkeypatch):
    from fctk.errors import DecompositionFailure

    def boom(*args, **kwargs):
        raise np.linalg.LinAlgError("did not converge")

    monkeypatch.setattr(np.linalg, "svd", boom)
    with pytest.raises(DecompositionFailure, match="seed 123"):
        sample_spectrum(ModelParams(1, (0,), 4), seed=123)


def test_mean_moment_validation():
    with pytest.raises(ValueError):
        mean_moment(EmpiricalMeasure(()), 1)
    with pytest.raises(ValueError):
        aggregate_measure(ModelParams(1, (0,), 5), trials=0, seed=1)
