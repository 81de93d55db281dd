"""Rational-function arithmetic, partial fractions, antiderivatives, roots."""

import random

import pytest

from heunops.field import fe, ONE, ZERO
from heunops.poly import P_ONE, P_X, Polynomial, poly_x_minus
from heunops.ratfunc import (LogObstructionError, PoleError, RationalFunction,
                             UnexplainedFactorError, antiderivative,
                             laurent_series, partial_fractions, pole_order,
                             poly_roots, rf)


def one_over(poly):
    return RationalFunction(P_ONE, poly)


def rand_rf(rng, max_deg=3):
    num = Polynomial([fe(rng.randint(-3, 3), rng.randint(1, 3))
                      for _ in range(rng.randint(1, max_deg + 1))])
    den = Polynomial([fe(rng.randint(-3, 3), rng.randint(1, 3))
                      for _ in range(rng.randint(1, max_deg))]
                     + [fe(1)])
    if num.is_zero:
        num = P_ONE
    return RationalFunction(num, den)


def test_common_factor_cancellation():
    f = RationalFunction(P_X * P_X - P_ONE, poly_x_minus(ONE))
    assert f == RationalFunction.from_polynomial(P_X + P_ONE)


def test_simple_pole_sum():
    f = one_over(P_X) + one_over(poly_x_minus(ONE))
    want = RationalFunction(Polynomial([fe(-1), fe(2)]),
                            P_X * poly_x_minus(ONE))
    assert f == want


def test_add_sub_roundtrip_200_random():
    rng = random.Random(17)
    for _ in range(200):
        a = rand_rf(rng)
        b = rand_rf(rng)
        assert (a + b) - b == a


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        rf(1) / RationalFunction.from_polynomial(Polynomial([]))


def test_derivative_trivials():
    a = fe(3)
    f = one_over(poly_x_minus(a))
    assert f.derivative() == -one_over(poly_x_minus(a) ** 2)
    cube = RationalFunction.from_polynomial(Polynomial.monomial(3))
    assert cube.derivative() == RationalFunction.from_polynomial(
        Polynomial.monomial(2, fe(3)))


def test_derivative_matches_finite_differences():
    rng = random.Random(23)
    h = 1e-6
    for _ in range(20):
        f = rand_rf(rng)
        df = f.derivative()
        checked = 0
        for px, py in ((0.3, 0.1), (-0.7, 0.4), (1.9, -0.2), (0.05, -0.8),
                       (2.6, 0.9)):
            x = complex(px, py)
            try:
                approx = (f.eval_complex(x + h) - f.eval_complex(x - h)) / (2 * h)
                exact = df.eval_complex(x)
            except PoleError:
                continue
            if abs(exact) > 1e-3:
                assert abs(approx - exact) / abs(exact) < 1e-6
                checked += 1
        assert checked >= 3


def test_derivative_product_rule_200_random():
    rng = random.Random(29)
    for _ in range(200):
        a = rand_rf(rng, 2)
        b = rand_rf(rng, 2)
        assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_partial_fractions_trivials():
    f = one_over(P_X * poly_x_minus(ONE))
    form = partial_fractions(f, [ZERO, ONE])
    terms = {(str(p), k): c for p, k, c in form.pole_terms}
    assert terms == {("0", 1): fe(-1), ("1", 1): fe(1)}

    g = RationalFunction(Polynomial([fe(-1), fe(2)]), P_X * poly_x_minus(ONE))
    form = partial_fractions(g, [ZERO, ONE])
    terms = {(str(p), k): c for p, k, c in form.pole_terms}
    assert terms == {("0", 1): fe(1), ("1", 1): fe(1)}


def test_partial_fractions_random_roundtrip():
    rng = random.Random(31)
    pole_pool = [fe(0), fe(1), fe(-1), fe(2), fe(1, 2)]
    for _ in range(50):
        terms = []
        total = RationalFunction.from_polynomial(
            Polynomial([fe(rng.randint(-2, 2))]))
        chosen = rng.sample(pole_pool, rng.randint(1, 3))
        for p in chosen:
            order = rng.randint(1, 3)
            coeff = fe(rng.randint(1, 5), rng.randint(1, 3))
            terms.append((p, order, coeff))
            total = total + RationalFunction(
                Polynomial([coeff]), poly_x_minus(p) ** order)
        form = partial_fractions(total, pole_pool)
        assert form.reassemble() == total
        got = {(str(p), k): c for p, k, c in form.pole_terms}
        want = {(str(p), k): c for p, k, c in terms}
        assert got == want


def test_partial_fractions_unexplained_factor():
    f = one_over(P_X * poly_x_minus(fe(5)))
    with pytest.raises(UnexplainedFactorError):
        partial_fractions(f, [ZERO])


def test_partial_fractions_higher_order_pole():
    f = RationalFunction(Polynomial([fe(2), fe(1)]),
                         P_X ** 3 * poly_x_minus(ONE))
    form = partial_fractions(f, [ZERO, ONE])
    assert form.reassemble() == f


def test_antiderivative_pure_rational():
    f = one_over(P_X ** 2)
    assert antiderivative(f) == -one_over(P_X)
    g = RationalFunction.from_polynomial(Polynomial([fe(1), fe(2)]))
    ag = antiderivative(g)
    assert ag.derivative() == g


def test_antiderivative_random_roundtrip():
    rng = random.Random(37)
    for _ in range(40):
        # build an integrand as derivative of a random rational function
        f = rand_rf(rng)
        target = f.derivative()
        back = antiderivative(target)
        assert back.derivative() == target


def test_antiderivative_log_obstruction():
    with pytest.raises(LogObstructionError):
        antiderivative(one_over(P_X))
    with pytest.raises(LogObstructionError):
        antiderivative(one_over(P_X ** 2 * poly_x_minus(ONE)))


def test_laurent_series_matches_pole_structure():
    f = one_over(P_X ** 2 * poly_x_minus(ONE))
    start, coeffs = laurent_series(f, ZERO, 4)
    assert start == -2
    # 1/(x^2 (x-1)) = -1/x^2 - 1/x - 1 - x - ...
    assert [str(c) for c in coeffs] == ["-1", "-1", "-1", "-1"]
    assert pole_order(f, ZERO) == 2
    assert pole_order(f, fe(2)) == 0


def test_poly_roots_exact_and_numeric():
    p = P_X ** 2 - Polynomial([fe(1)])  # roots 1, -1
    exact, numeric = poly_roots(p)
    assert not numeric
    assert {str(r) for r, _ in exact} == {"1", "-1"}
    # double root
    p2 = poly_x_minus(fe(1, 2)) ** 2
    exact, numeric = poly_roots(p2)
    assert exact == [(fe(1, 2), 2)] and not numeric
    # irrational roots stay numeric
    p3 = P_X ** 2 - Polynomial([fe(2)])
    exact, numeric = poly_roots(p3)
    assert not exact and len(numeric) == 2
    assert sorted(round(abs(z), 6) for z in numeric) == [1.414214, 1.414214]


def test_subst_inverse():
    f = one_over(poly_x_minus(fe(2)))
    g = f.subst_inverse()  # 1/(1/x - 2) = x/(1-2x)
    x = 0.37
    assert abs(g.eval_complex(x) - 1 / (1 / x - 2)) < 1e-12
