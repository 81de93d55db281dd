"""Constructors for the seven operators of the Heun class.

Each parameter set builds the monic second-order operator d^2 + p1 d + p0
with the standard coefficient tables:

    heun                   p1 = gamma/x + delta/(x-1) + epsilon/(x-a)
                           p0 = (alpha*beta*x - q) / (x(x-1)(x-a))
                           epsilon = alpha + beta + 1 - delta - gamma
    confluent              p1 = p + gamma/x + delta/(x-1)
                           p0 = (p*alpha*x - q) / (x(x-1))
    reduced confluent      p1 = gamma/x + delta/(x-1)
                           p0 = (kappa*x + q) / (x(x-1))
    biconfluent            p1 = tau/x + nu/x^2 - 1,  p0 = -(alpha*x + q)/x
    double confluent       p1 = tau/x + nu/x^2 - 1,  p0 = -(alpha*x + q)/x^2
    triconfluent           p1 = sigma - x^2,         p0 = alpha*x - q
    reduced triconfluent   p1 = 0,  p0 = A0 + A1 x + A2 x^2 - (9/4) x^4

epsilon is always recomputed from the accessory parameters (it is not a
stored field), and a in {0, 1} is rejected: merged-singularity requests are
served by the confluent constructors, which build that operator directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldElement, ONE, ZERO, fe
from .diffop import DiffOp
from .poly import P_X, Polynomial, poly_x_minus
from .ratfunc import RF_ZERO, RationalFunction, pole_order, poly_roots


class ParameterError(ValueError):
    pass


INFINITY = "infinity"

ORDINARY = "ordinary"
REGULAR_SINGULAR = "regular-singular"
IRREGULAR_SINGULAR = "irregular-singular"


def _fe(value) -> FieldElement:
    el = FieldElement._coerce(value)
    if el is None:
        raise ParameterError(f"not an exact scalar: {value!r}")
    return el


def _over(num: Polynomial, den: Polynomial) -> RationalFunction:
    return RationalFunction(num, den)


@dataclass(frozen=True)
class HeunParams:
    a: FieldElement
    q: FieldElement
    alpha: FieldElement
    beta: FieldElement
    gamma: FieldElement
    delta: FieldElement

    family = "heun"

    def __post_init__(self):
        for name in ("a", "q", "alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, _fe(getattr(self, name)))
        if self.a == ZERO or self.a == ONE:
            raise ParameterError(
                "heun requires a not in {0, 1}; for the merged-singularity "
                "operator use the confluent/reduced-confluent constructors")

    @property
    def epsilon(self) -> FieldElement:
        return self.alpha + self.beta + 1 - self.delta - self.gamma

    def build(self) -> DiffOp:
        x, x1, xa = P_X, poly_x_minus(ONE), poly_x_minus(self.a)
        p1 = (_over(Polynomial.constant(self.gamma), x)
              + _over(Polynomial.constant(self.delta), x1)
              + _over(Polynomial.constant(self.epsilon), xa))
        p0 = _over(Polynomial([-self.q, self.alpha * self.beta]), x * x1 * xa)
        return DiffOp([p0, p1, ONE])


@dataclass(frozen=True)
class ConfluentParams:
    p: FieldElement
    q: FieldElement
    alpha: FieldElement
    gamma: FieldElement
    delta: FieldElement

    family = "confluent"

    def __post_init__(self):
        for name in ("p", "q", "alpha", "gamma", "delta"):
            object.__setattr__(self, name, _fe(getattr(self, name)))

    def build(self) -> DiffOp:
        x, x1 = P_X, poly_x_minus(ONE)
        p1 = (RationalFunction.constant(self.p)
              + _over(Polynomial.constant(self.gamma), x)
              + _over(Polynomial.constant(self.delta), x1))
        p0 = _over(Polynomial([-self.q, self.p * self.alpha]), x * x1)
        return DiffOp([p0, p1, ONE])


@dataclass(frozen=True)
class ReducedConfluentParams:
    kappa: FieldElement
    gamma: FieldElement
    delta: FieldElement
    q: FieldElement

    family = "reduced_confluent"

    def __post_init__(self):
        for name in ("kappa", "gamma", "delta", "q"):
            object.__setattr__(self, name, _fe(getattr(self, name)))

    def build(self) -> DiffOp:
        x, x1 = P_X, poly_x_minus(ONE)
        p1 = (_over(Polynomial.constant(self.gamma), x)
              + _over(Polynomial.constant(self.delta), x1))
        p0 = _over(Polynomial([self.q, self.kappa]), x * x1)
        return DiffOp([p0, p1, ONE])


@dataclass(frozen=True)
class BiconfluentParams:
    tau: FieldElement
    nu: FieldElement
    alpha: FieldElement
    q: FieldElement

    family = "biconfluent"

    def __post_init__(self):
        for name in ("tau", "nu", "alpha", "q"):
            object.__setattr__(self, name, _fe(getattr(self, name)))

    def build(self) -> DiffOp:
        x = P_X
        p1 = (_over(Polynomial.constant(self.tau), x)
              + _over(Polynomial.constant(self.nu), x * x)
              - RationalFunction.constant(ONE))
        p0 = -_over(Polynomial([self.q, self.alpha]), x)
        return DiffOp([p0, p1, ONE])


@dataclass(frozen=True)
class DoubleConfluentParams:
    tau: FieldElement
    nu: FieldElement
    alpha: FieldElement
    q: FieldElement

    family = "double_confluent"

    def __post_init__(self):
        for name in ("tau", "nu", "alpha", "q"):
            object.__setattr__(self, name, _fe(getattr(self, name)))

    def build(self) -> DiffOp:
        x = P_X
        p1 = (_over(Polynomial.constant(self.tau), x)
              + _over(Polynomial.constant(self.nu), x * x)
              - RationalFunction.constant(ONE))
        p0 = -_over(Polynomial([self.q, self.alpha]), x * x)
        return DiffOp([p0, p1, ONE])


@dataclass(frozen=True)
class TriconfluentParams:
    sigma: FieldElement
    alpha: FieldElement
    q: FieldElement

    family = "triconfluent"

    def __post_init__(self):
        for name in ("sigma", "alpha", "q"):
            object.__setattr__(self, name, _fe(getattr(self, name)))

    def build(self) -> DiffOp:
        p1 = RationalFunction.from_polynomial(
            Polynomial([self.sigma, ZERO, -ONE]))
        p0 = RationalFunction.from_polynomial(Polynomial([-self.q, self.alpha]))
        return DiffOp([p0, p1, ONE])


@dataclass(frozen=True)
class ReducedTriconfluentParams:
    A0: FieldElement
    A1: FieldElement
    A2: FieldElement

    family = "reduced_triconfluent"

    def __post_init__(self):
        for name in ("A0", "A1", "A2"):
            object.__setattr__(self, name, _fe(getattr(self, name)))

    def build(self) -> DiffOp:
        p0 = RationalFunction.from_polynomial(
            Polynomial([self.A0, self.A1, self.A2, ZERO, fe(-9, 4)]))
        return DiffOp([p0, RF_ZERO, ONE])


FAMILIES = {
    "heun": HeunParams,
    "confluent": ConfluentParams,
    "reduced_confluent": ReducedConfluentParams,
    "biconfluent": BiconfluentParams,
    "double_confluent": DoubleConfluentParams,
    "triconfluent": TriconfluentParams,
    "reduced_triconfluent": ReducedTriconfluentParams,
}

PARAM_NAMES = {
    "heun": ("a", "q", "alpha", "beta", "gamma", "delta"),
    "confluent": ("p", "q", "alpha", "gamma", "delta"),
    "reduced_confluent": ("kappa", "gamma", "delta", "q"),
    "biconfluent": ("tau", "nu", "alpha", "q"),
    "double_confluent": ("tau", "nu", "alpha", "q"),
    "triconfluent": ("sigma", "alpha", "q"),
    "reduced_triconfluent": ("A0", "A1", "A2"),
}


def make_params(family: str, values: dict):
    try:
        cls = FAMILIES[family]
    except KeyError:
        raise ParameterError(f"unknown family {family!r}; "
                             f"known: {', '.join(sorted(FAMILIES))}") from None
    names = PARAM_NAMES[family]
    missing = [n for n in names if n not in values]
    extra = [n for n in values if n not in names]
    if missing or extra:
        raise ParameterError(
            f"{family} expects parameters {names}; "
            f"missing {missing or 'none'}, unexpected {extra or 'none'}")
    return cls(**{n: values[n] for n in names})


def build_P(params) -> DiffOp:
    return params.build()


def classify_singularities(op: DiffOp):
    """Finite singular points (Fuchs criterion) plus the point at infinity.

    An operator d^2 + p1 d + p0 has a regular singular point where p1 has at
    most a simple pole and p0 at most a double pole; infinity is classified
    through the x -> 1/x pullback with coefficients 2/t - p1(1/t)/t^2 and
    p0(1/t)/t^4.
    """
    if op.order != 2:
        raise ValueError("classification implemented for order-2 operators")
    lead = op.coeff(2)
    p1 = op.coeff(1) / lead
    p0 = op.coeff(0) / lead
    den = (p1.den * p0.den) // p1.den.gcd(p0.den)  # lcm of denominators
    exact, numeric = poly_roots(den)
    if numeric:
        raise ValueError(
            f"singular points not resolvable in the active field: {numeric}")
    out = []
    for point, _mult in sorted(exact, key=lambda t: str(t[0])):
        o1 = pole_order(p1, point)
        o0 = pole_order(p0, point)
        if o1 == 0 and o0 == 0:
            kind = ORDINARY
        elif o1 <= 1 and o0 <= 2:
            kind = REGULAR_SINGULAR
        else:
            kind = IRREGULAR_SINGULAR
        if kind != ORDINARY:
            out.append((point, kind))
    # pullback to t = 1/x
    t = P_X
    p1_inf = (RationalFunction(Polynomial.constant(fe(2)), t)
              - p1.subst_inverse() / RationalFunction.from_polynomial(t * t))
    p0_inf = p0.subst_inverse() / RationalFunction.from_polynomial(t ** 4)
    o1 = pole_order(p1_inf, ZERO)
    o0 = pole_order(p0_inf, ZERO)
    if o1 == 0 and o0 == 0:
        kind = ORDINARY
    elif o1 <= 1 and o0 <= 2:
        kind = REGULAR_SINGULAR
    else:
        kind = IRREGULAR_SINGULAR
    out.append((INFINITY, kind))
    return out
