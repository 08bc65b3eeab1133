import math
from fractions import Fraction

import pytest

from fctk.errors import DomainError
from fctk.geometry import (
    PhiCoordinate,
    f_at,
    f_phase,
    f_phase_deriv,
    g_shift,
    rho,
    rho_at,
    rho_deriv,
    rho_inv,
    saddle_points,
    solve_trinomial,
    x_star,
)


def test_phi_domain_is_strictly_open():
    PhiCoordinate(2, 1e-12)
    with pytest.raises(DomainError):
        PhiCoordinate(2, 0.0)
    with pytest.raises(DomainError):
        PhiCoordinate(2, math.pi / 3)
    with pytest.raises(DomainError):
        PhiCoordinate(0, 0.1)


def test_x_star():
    assert x_star(1) == 4
    assert x_star(2) == Fraction(27, 4)
    assert x_star(3) == Fraction(256, 27)


def test_rho_values():
    assert rho(PhiCoordinate(1, math.pi / 4)) == pytest.approx(2.0, abs=1e-14)
    assert rho(PhiCoordinate(2, math.pi / 6)) == pytest.approx(8 / 3, rel=1e-14)
    # r=1 closed form rho = 4 cos^2(phi), limit x_star at phi -> 0
    assert rho(PhiCoordinate(1, 1e-8)) == pytest.approx(4.0, rel=1e-12)


def test_rho_inv_examples_and_round_trip():
    assert rho_inv(1, 2.0).phi == pytest.approx(math.pi / 4, rel=1e-13)
    assert rho_inv(2, 8 / 3).phi == pytest.approx(math.pi / 6, rel=1e-13)
    assert rho_inv(1, 3.999999).phi < 1e-3
    with pytest.raises(DomainError):
        rho_inv(1, 4.0)
    with pytest.raises(DomainError):
        rho_inv(2, -0.5)
    import random

    rnd = random.Random(8)
    for r in (1, 2, 3, 4):
        top = math.pi / (r + 1)
        for _ in range(100):
            phi = rnd.uniform(0.001, 0.999) * top
            back = rho_inv(r, rho_at(r, phi)).phi
            assert abs(back - phi) <= 1e-12


def test_f_phase():
    assert f_phase(PhiCoordinate(1, math.pi / 4)) == pytest.approx(math.pi / 2 - 1, abs=1e-15)
    for r in (1, 2, 3, 4):
        top = math.pi / (r + 1)
        assert f_at(r, 1e-9 * top) == pytest.approx(0.0, abs=1e-8)
        assert f_at(r, (1 - 1e-9) * top) == pytest.approx(math.pi, abs=1e-7)


def test_monotonicity_grids():
    for r in (1, 2, 3, 4):
        top = math.pi / (r + 1)
        grid = [(i + 1) * top / (10**4 + 2) for i in range(10**4)]
        rho_vals = [rho_at(r, p) for p in grid]
        f_vals = [f_at(r, p) for p in grid]
        assert all(a > b for a, b in zip(rho_vals, rho_vals[1:]))
        assert all(a < b for a, b in zip(f_vals, f_vals[1:]))


def test_g_shift():
    # 1 - (r sin(phi)/sin(r phi)) e^{i(r+1)phi} = 1 - i at r=1, phi=pi/4,
    # so the argument term contributes +pi/8 and g vanishes there
    assert g_shift(PhiCoordinate(1, math.pi / 4), (0,)) == pytest.approx(0.0, abs=1e-15)
    # closed form for r=1, nu=(0): g = pi/4 - phi
    for phi in (0.3, 0.7, 1.1, 1.5):
        assert g_shift(PhiCoordinate(1, phi), (0,)) == pytest.approx(
            math.pi / 4 - phi, abs=1e-13
        )
    # continuity on a dense grid (the atan2 form has no branch jumps)
    for r in (1, 2, 3, 4):
        top = math.pi / (r + 1)
        prev = None
        for i in range(1, 2000):
            val = g_shift(PhiCoordinate(r, i * top / 2000), (1,) * r)
            assert math.isfinite(val)
            if prev is not None:
                assert abs(val - prev) < 0.05
            prev = val


def test_laguerre_phase_convention():
    # r=1, nu=(0): n f + g equals -(n(sin 2phi - 2phi) + phi - pi/4), and the
    # literal cosine argument -n f + g is the classical phase itself
    n = 37
    for phi in (0.4, 0.9, 1.3):
        c = PhiCoordinate(1, phi)
        classical = n * (math.sin(2 * phi) - 2 * phi) - phi + math.pi / 4
        assert n * f_phase(c) + g_shift(c, (0,)) == pytest.approx(-(
            n * (math.sin(2 * phi) - 2 * phi) + phi - math.pi / 4
        ), abs=1e-10)
        assert -n * f_phase(c) + g_shift(c, (0,)) == pytest.approx(classical, abs=1e-10)


def test_saddle_points_examples():
    s = saddle_points(PhiCoordinate(1, math.pi / 4))
    assert s.w_plus == pytest.approx(1 + 1j, abs=1e-14)
    assert s.w_minus == s.w_plus.conjugate()
    assert abs(s.w_plus**2 - 2 * s.w_plus + 2) < 1e-13

    s = saddle_points(PhiCoordinate(2, math.pi / 6))
    a = math.sin(math.pi / 2) / math.sin(math.pi / 3)
    assert abs(s.w_plus) == pytest.approx(a, rel=1e-14)
    assert s.modulus == pytest.approx(a, rel=1e-14)
    x = 8 / 3
    assert abs(s.w_plus**3 - x * s.w_plus + x) < 1e-12

    assert saddle_points(PhiCoordinate(3, math.pi / 8)).re_hess_det > 0


def test_saddle_residual_random():
    import random

    rnd = random.Random(4)
    for r in (1, 2, 3, 4):
        top = math.pi / (r + 1)
        for _ in range(100):
            c = PhiCoordinate(r, rnd.uniform(0.01, 0.99) * top)
            s = saddle_points(c)
            x = rho(c)
            for w in (s.w_plus, s.w_minus):
                res = abs(w ** (r + 1) - x * w + x)
                assert res <= 1e-12 * (1 + abs(x)) * (1 + abs(w) ** (r + 1))
            assert s.re_hess_det > 0
            assert s.w_minus == s.w_plus.conjugate()


def test_solve_trinomial():
    roots = sorted(solve_trinomial(1, 2), key=lambda z: z.imag)
    assert roots[0] == pytest.approx(1 - 1j, abs=1e-12)
    assert roots[1] == pytest.approx(1 + 1j, abs=1e-12)

    # double root at the edge: w^2 - 4w + 4 = (w - 2)^2
    for w in solve_trinomial(1, 4):
        assert w == pytest.approx(2.0, abs=1e-6)

    for w in solve_trinomial(2, 27 / 4):
        assert abs(w**3 - 27 / 4 * w + 27 / 4) < 1e-9
    close = [w for w in solve_trinomial(2, 27 / 4) if abs(w - 1.5) < 1e-5]
    assert len(close) == 2

    with pytest.raises(DomainError):
        solve_trinomial(2, 0)


def test_trinomial_contains_saddles():
    import random

    rnd = random.Random(11)
    for r in (1, 2, 3, 4):
        top = math.pi / (r + 1)
        for _ in range(25):
            c = PhiCoordinate(r, rnd.uniform(0.02, 0.98) * top)
            s = saddle_points(c)
            roots = solve_trinomial(r, rho(c))
            for target in (s.w_plus, s.w_minus):
                assert min(abs(w - target) for w in roots) < 1e-10


def test_derivative_formulas_match_finite_differences():
    h = 1e-6
    for r in (1, 2, 3, 4):
        top = math.pi / (r + 1)
        for frac in (0.15, 0.4, 0.65, 0.9):
            phi = frac * top
            c = PhiCoordinate(r, phi)
            fd_f = (f_at(r, phi + h) - f_at(r, phi - h)) / (2 * h)
            fd_rho = (rho_at(r, phi + h) - rho_at(r, phi - h)) / (2 * h)
            assert f_phase_deriv(c) == pytest.approx(fd_f, rel=1e-7, abs=1e-7)
            assert rho_deriv(c) == pytest.approx(fd_rho, rel=1e-7)
