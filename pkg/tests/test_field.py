"""Field-level invariants: exact Gaussian rationals with one quadratic root."""

import random

import pytest

from heunops.field import (ExtensionMismatchError, FieldElement, I, ONE, ZERO,
                           fe, quadratic_roots)


def rand_gaussian(rng):
    return FieldElement.make(
        fe(rng.randint(-5, 5), rng.randint(1, 4)).ar,
        fe(rng.randint(-5, 5), rng.randint(1, 4)).ar)


def rand_extension(rng, d):
    el = FieldElement.make(
        fe(rng.randint(-5, 5), rng.randint(1, 4)).ar,
        fe(rng.randint(-3, 3), rng.randint(1, 4)).ar,
        fe(rng.randint(-5, 5), rng.randint(1, 4)).ar,
        fe(rng.randint(-3, 3), rng.randint(1, 4)).ar,
        d)
    return el


def test_field_axioms_500_random_triples():
    rng = random.Random(42)
    d = (fe(3).ar, fe(1).ar)  # sqrt(3+i), not a perfect square
    for _ in range(500):
        a = rand_extension(rng, d)
        b = rand_extension(rng, d)
        c = rand_extension(rng, d)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == ZERO
        if not a.is_zero:
            assert a * a.inverse() == ONE


def test_extension_norm_lands_in_base_field():
    rng = random.Random(7)
    d = (fe(2).ar, fe(0).ar)
    for _ in range(100):
        a = rand_extension(rng, d)
        norm = a * a.conjugate_ext()
        assert norm.is_gaussian


def test_sqrt_folds_perfect_squares():
    assert fe(9, 4).sqrt() == fe(3, 2)
    assert fe(-4).sqrt() == fe(2) * I
    assert fe(0).sqrt() == ZERO
    # (1+i)^2 = 2i
    z = FieldElement.make(0, 2)
    root = z.sqrt()
    assert root.is_gaussian
    assert root * root == z


def test_sqrt_extension_squares_back():
    for value in (fe(2), fe(-3), FieldElement.make(1, 1), fe(5, 7)):
        root = value.sqrt()
        assert root * root == value


def test_extension_mismatch_rejected():
    r2 = fe(2).sqrt()
    r3 = fe(3).sqrt()
    with pytest.raises(ExtensionMismatchError):
        _ = r2 + r3
    with pytest.raises(ExtensionMismatchError):
        _ = r2 * r3
    # but they are comparable (and different)
    assert r2 != r3


def test_nested_sqrt_rejected():
    with pytest.raises(ExtensionMismatchError):
        fe(2).sqrt().sqrt()


def test_make_folds_square_discriminant():
    el = FieldElement.make(1, 0, 1, 0, (fe(4).ar, fe(0).ar))
    assert el == fe(3)
    assert el.is_rational


def test_quadratic_roots_rational_and_extension():
    rp, rm = quadratic_roots(fe(1), fe(-1), fe(-2))
    assert {rp, rm} == {fe(2), fe(-1)}
    rp, rm = quadratic_roots(fe(2), fe(1), fe(-1))
    for root in (rp, rm):
        assert 2 * root * root + root - 1 == ZERO


def test_pow_and_division():
    a = fe(3, 2)
    assert a ** 0 == ONE
    assert a ** 3 == a * a * a
    assert a ** -2 == (a * a).inverse()
    assert (ONE / a) * a == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_hash_consistency():
    a = fe(1, 2) + fe(1, 2) * I
    b = FieldElement.make(fe(1, 2).ar, fe(1, 2).ar)
    assert a == b and hash(a) == hash(b)


def test_numeric_embedding():
    z = (fe(1) + fe(2) * I).to_complex()
    assert z == 1 + 2j
    root = fe(2).sqrt().to_complex()
    assert abs(root - 2 ** 0.5) < 1e-15
