"""Family constructors and singularity classification."""

import pytest

from heunops.field import fe, ONE, ZERO
from heunops.poly import P_X, Polynomial, poly_x_minus
from heunops.ratfunc import RationalFunction, partial_fractions, rf
from heunops.diffop import DiffOp
from heunops.families import (INFINITY, IRREGULAR_SINGULAR,
                              REGULAR_SINGULAR, BiconfluentParams,
                              ConfluentParams, DoubleConfluentParams,
                              HeunParams, ParameterError,
                              ReducedConfluentParams,
                              ReducedTriconfluentParams, TriconfluentParams,
                              classify_singularities, make_params)


def test_heun_vanishing_accessory_product():
    p = HeunParams(a=fe(2), q=fe(0), alpha=fe(0), beta=fe(1), gamma=fe(0),
                   delta=fe(0)).build()
    assert p.is_monic() and p.order == 2
    assert p.coeff(1) == RationalFunction(Polynomial([fe(2)]),
                                          poly_x_minus(fe(2)))
    assert p.coeff(0).is_zero


def test_heun_pole_structure_matches_parameter_weights():
    params = HeunParams(a=fe(3), q=fe(1, 3), alpha=fe(1, 2), beta=fe(1, 3),
                        gamma=fe(1, 2), delta=fe(1, 4))
    p = params.build()
    form = partial_fractions(p.coeff(1), [ZERO, ONE, fe(3)])
    weights = {str(pole): c for pole, k, c in form.pole_terms if k == 1}
    assert weights == {"0": params.gamma, "1": params.delta,
                       "3": params.epsilon}
    assert form.polynomial_part.is_zero
    # p0 has only simple poles at 0, 1, a
    form0 = partial_fractions(p.coeff(0), [ZERO, ONE, fe(3)])
    assert form0.polynomial_part.is_zero
    assert all(k == 1 for _, k, _ in form0.pole_terms)


def test_epsilon_recomputed_not_stored():
    params = HeunParams(a=fe(2), q=fe(0), alpha=fe(1), beta=fe(1),
                        gamma=fe(1, 2), delta=fe(1, 2))
    assert params.epsilon == fe(2)
    with pytest.raises(TypeError):
        HeunParams(a=fe(2), q=fe(0), alpha=fe(1), beta=fe(1),
                   gamma=fe(1, 2), delta=fe(1, 2), epsilon=fe(5))


def test_heun_rejects_merged_singularities():
    for bad_a in (fe(0), fe(1)):
        with pytest.raises(ParameterError, match="confluent"):
            HeunParams(a=bad_a, q=fe(0), alpha=fe(1), beta=fe(1),
                       gamma=fe(1), delta=fe(1))


def test_triconfluent_coefficients():
    sigma, alpha, q = fe(2), fe(1, 2), fe(1, 3)
    p = TriconfluentParams(sigma=sigma, alpha=alpha, q=q).build()
    assert p.coeff(1) == RationalFunction.from_polynomial(
        Polynomial([sigma, ZERO, fe(-1)]))
    assert p.coeff(0) == RationalFunction.from_polynomial(
        Polynomial([-q, alpha]))


def test_biconfluent_degenerate_coefficients():
    alpha = fe(3, 4)
    p = BiconfluentParams(tau=fe(0), nu=fe(0), alpha=alpha, q=fe(0)).build()
    assert p.coeff(1) == rf(-1)
    assert p.coeff(0) == RationalFunction.constant(-alpha)


def test_confluent_and_reduced_confluent_shapes():
    p = ConfluentParams(p=fe(2), q=fe(1), alpha=fe(1, 2), gamma=fe(1),
                        delta=fe(1)).build()
    num = Polynomial([fe(-1), fe(1)])  # p*alpha*x - q with p=2, alpha=1/2
    assert p.coeff(0) == RationalFunction(num, P_X * poly_x_minus(ONE))
    r = ReducedConfluentParams(kappa=fe(2), gamma=fe(1), delta=fe(1),
                               q=fe(3)).build()
    assert r.coeff(0) == RationalFunction(Polynomial([fe(3), fe(2)]),
                                          P_X * poly_x_minus(ONE))


def test_reduced_triconfluent_quartic():
    p = ReducedTriconfluentParams(A0=fe(1), A1=fe(2), A2=fe(3)).build()
    assert p.coeff(1).is_zero
    assert p.coeff(0) == RationalFunction.from_polynomial(
        Polynomial([fe(1), fe(2), fe(3), ZERO, fe(-9, 4)]))


def test_double_confluent_double_pole():
    p = DoubleConfluentParams(tau=fe(1), nu=fe(2), alpha=fe(1),
                              q=fe(1)).build()
    from heunops.ratfunc import pole_order
    assert pole_order(p.coeff(0), ZERO) == 2
    assert pole_order(p.coeff(1), ZERO) == 2


def test_every_family_builds_monic_order_two():
    builders = {
        "heun": HeunParams(a=fe(2), q=fe(1, 3), alpha=fe(1, 2), beta=fe(1, 3),
                           gamma=fe(1, 2), delta=fe(1, 4)),
        "confluent": ConfluentParams(p=fe(1), q=fe(1, 3), alpha=fe(1, 2),
                                     gamma=fe(1, 2), delta=fe(1, 4)),
        "reduced_confluent": ReducedConfluentParams(kappa=fe(1), gamma=fe(1, 2),
                                                    delta=fe(1, 4), q=fe(1, 3)),
        "biconfluent": BiconfluentParams(tau=fe(1, 2), nu=fe(1, 3),
                                         alpha=fe(1, 4), q=fe(1, 5)),
        "double_confluent": DoubleConfluentParams(tau=fe(1, 2), nu=fe(1, 3),
                                                  alpha=fe(1, 4), q=fe(1, 5)),
        "triconfluent": TriconfluentParams(sigma=fe(1, 2), alpha=fe(1, 3),
                                           q=fe(1, 4)),
        "reduced_triconfluent": ReducedTriconfluentParams(A0=fe(1), A1=fe(2),
                                                          A2=fe(3)),
    }
    for family, params in builders.items():
        op = params.build()
        assert op.order == 2 and op.is_monic(), family
        assert params.family == family


def test_make_params_validation():
    with pytest.raises(ParameterError, match="unknown family"):
        make_params("nope", {})
    with pytest.raises(ParameterError, match="missing"):
        make_params("heun", {"a": fe(2)})


def test_classify_generic_heun():
    p = HeunParams(a=fe(3), q=fe(1, 3), alpha=fe(1, 2), beta=fe(1, 3),
                   gamma=fe(1, 2), delta=fe(1, 2)).build()
    got = {str(loc): kind for loc, kind in classify_singularities(p)}
    assert got == {"0": REGULAR_SINGULAR, "1": REGULAR_SINGULAR,
                   "3": REGULAR_SINGULAR, "infinity": REGULAR_SINGULAR}


def test_classify_triconfluent():
    p = TriconfluentParams(sigma=fe(1), alpha=fe(1), q=fe(0)).build()
    assert classify_singularities(p) == [(INFINITY, IRREGULAR_SINGULAR)]


def test_classify_degree2_companion_irregular_at_infinity():
    # the degree-2 companion of a generic four-point operator keeps the
    # finite points regular but makes infinity irregular
    p = HeunParams(a=fe(2), q=fe(1, 3), alpha=fe(1, 2), beta=fe(1, 3),
                   gamma=fe(1, 2), delta=fe(1, 2)).build()
    companion = p.scale(fe(1)) + DiffOp([rf(-1)])  # P + mu with mu = -1
    got = {str(loc): kind for loc, kind in classify_singularities(companion)}
    assert got == {"0": REGULAR_SINGULAR, "1": REGULAR_SINGULAR,
                   "2": REGULAR_SINGULAR, "infinity": IRREGULAR_SINGULAR}


def test_classify_biconfluent_irregular_origin():
    p = BiconfluentParams(tau=fe(1), nu=fe(1, 2), alpha=fe(1), q=fe(1)).build()
    got = {str(loc): kind for loc, kind in classify_singularities(p)}
    assert got["0"] == IRREGULAR_SINGULAR
    assert got["infinity"] == IRREGULAR_SINGULAR
