import math
from fractions import Fraction

import mpmath as mp
import pytest

from fctk.errors import NonConvergence
from fctk.poly import (
    ExactPolynomial,
    ModelParams,
    bigfloat,
    build_f,
    build_p,
    eval_bigfloat,
    eval_exact,
    poly_from_json,
    poly_to_json,
    rescale_arg,
)


def laguerre_recurrence(n, x, prec=256):
    """Independent oracle: L_n^(0)(x) by the three-term recurrence."""
    with mp.workprec(prec):
        x = mp.mpf(x)
        prev, cur = mp.mpf(1), 1 - x
        if n == 0:
            return prev
        for k in range(1, n):
            prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
        return cur


def test_build_f_examples():
    assert build_f(ModelParams(1, (0,), 0)).coeffs == (Fraction(1),)
    assert build_f(ModelParams(1, (0,), 1)).coeffs == (Fraction(1), Fraction(-1))
    assert build_f(ModelParams(2, (0, 0), 2)).coeffs == (
        Fraction(1),
        Fraction(-2),
        Fraction(1, 4),
    )


def test_build_p_examples():
    assert build_p(ModelParams(1, (0,), 1)).coeffs == (Fraction(-1), Fraction(1))
    assert build_p(ModelParams(1, (0,), 2)).coeffs[-1] == 1


def test_monicity_sweep():
    # leading coefficient of the monic companion is exactly 1
    for r in (1, 2, 3, 4):
        for nu in ((0,) * r, (5,) + (0,) * (r - 1), tuple(range(r)), (5,) * r):
            for n in (0, 1, 5, 17, 30):
                p = build_p(ModelParams(r, nu, n))
                assert p.coeffs[-1] == 1
                assert p.degree == n


def test_constant_term_and_sign_pattern():
    for r, nu, n in ((1, (3,), 7), (2, (1, 2), 9), (3, (0, 2, 5), 6)):
        f = build_f(ModelParams(r, nu, n))
        assert f.coeffs[0] == Fraction(1, math.prod(math.factorial(v) for v in nu))
        for k, c in enumerate(f.coeffs):
            assert (c > 0) == (k % 2 == 0)


def test_rescale_examples():
    # pure coefficient transform: multiply coeff k by n^(r k)
    given = ExactPolynomial((Fraction(1), Fraction(-2), Fraction(1, 4)))
    assert rescale_arg(given, ModelParams(1, (0,), 2)).coeffs == (
        Fraction(1),
        Fraction(-4),
        Fraction(1),
    )
    p1 = ModelParams(3, (1, 1, 1), 1)
    f1 = build_f(p1)
    assert rescale_arg(f1, p1).coeffs == f1.coeffs  # n = 1 leaves it unchanged
    p22 = ModelParams(2, (0, 0), 2)
    assert rescale_arg(build_f(p22), p22).coeffs[2] == Fraction(1, 4) * 2**4


def test_eval_exact_examples():
    assert eval_exact(build_f(ModelParams(1, (0,), 1)), 1) == 0
    assert eval_exact(build_f(ModelParams(1, (0,), 2)), 2) == -1
    f = build_f(ModelParams(2, (1, 3), 4))
    assert eval_exact(f, 0) == Fraction(1, math.factorial(1) * math.factorial(3))
    # Horner over rationals is exact: compare against direct summation
    x = Fraction(7, 3)
    direct = sum(c * x**k for k, c in enumerate(f.coeffs))
    assert eval_exact(f, x) == direct


def test_eval_bigfloat_basics():
    f1 = build_f(ModelParams(1, (0,), 1))
    assert eval_bigfloat(f1, 0.5) == mp.mpf("0.5")
    # sign changes across the root 2 - sqrt(2) of 1 - 2x + x^2/2
    f2 = build_f(ModelParams(1, (0,), 2))
    root = 2 - math.sqrt(2)
    assert eval_bigfloat(f2, root - 1e-6) > 0
    assert eval_bigfloat(f2, root + 1e-6) < 0


def test_eval_bigfloat_matches_eval_exact():
    params = ModelParams(2, (1, 2), 15)
    f = rescale_arg(build_f(params), params)
    for x in (Fraction(1, 3), Fraction(17, 7), Fraction(99, 16)):
        got = eval_bigfloat(f, x, precision_bits=128)
        want = bigfloat(eval_exact(f, x), 128)
        assert got == want or abs(got - want) <= abs(want) * mp.mpf(2) ** -126


def test_eval_bigfloat_nonconvergence_at_root():
    f1 = build_f(ModelParams(1, (0,), 1))
    with pytest.raises(NonConvergence):
        eval_bigfloat(f1, 1)  # x = 1 is an exact root
    # caller fallback: the exact path settles it
    assert eval_exact(f1, 1) == 0


def test_bigfloat_conversion_ulp():
    q = Fraction(1, 3)
    v = bigfloat(q, 128)
    with mp.workprec(300):
        ref = mp.mpf(1) / 3
        assert abs(v - ref) <= mp.mpf(2) ** -128  # within 1 ulp at 128 bits


def test_laguerre_specialization():
    # P_n = (-1)^n n! L_n^(0) for r=1, nu=(0)
    for n in (1, 5, 20, 50):
        params = ModelParams(1, (0,), n)
        p = build_p(params)
        for x in (0.5, 1, 2, 3):
            if eval_exact(p, Fraction(x)) == 0:
                # x = 1 is the zero of L_1; the big-float path signals it
                with pytest.raises(NonConvergence):
                    eval_bigfloat(p, x, precision_bits=128)
                continue
            mine = eval_bigfloat(p, x, precision_bits=128)
            with mp.workprec(300):
                ref = (-1) ** n * math.factorial(n) * laguerre_recurrence(n, x)
                assert abs(mine - ref) <= 1e-20 * abs(ref)


def test_json_round_trip():
    params = ModelParams(2, (0, 3), 4)
    f = build_f(params)
    params2, f2 = poly_from_json(poly_to_json(params, f))
    assert params2 == params
    assert f2 == f
    assert '"coeffs"' in poly_to_json(params, f)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(0, (), 1)
    with pytest.raises(ValueError):
        ModelParams(2, (0,), 1)
    with pytest.raises(ValueError):
        ModelParams(1, (-1,), 1)
    with pytest.raises(ValueError):
        ModelParams(1, (0,), -1)
    with pytest.raises(ValueError):
        ExactPolynomial(())
