"""Dense univariate polynomials and Laurent polynomials over FieldElement.

Polynomial stores ascending coefficients with a nonzero leading coefficient
(the zero polynomial is the empty tuple).  Everything is schoolbook: catalog
degrees stay far below the point where asymptotics matter.
"""

from __future__ import annotations

from .field import FieldElement, ONE, ZERO


def _coerce_fe(value) -> FieldElement:
    el = FieldElement._coerce(value)
    if el is None:
        raise TypeError(f"cannot coerce {value!r} to FieldElement")
    return el


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce_fe(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs):
        p = object.__new__(cls)
        while cs and cs[-1].is_zero:
            cs.pop()
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=ONE) -> "Polynomial":
        return cls([ZERO] * k + [c])

    # -- structure -----------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> FieldElement:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> FieldElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for k, c in enumerate(b):
            cs[k] = cs[k] + c
        return Polynomial._raw(cs)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(_coerce_fe(other))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial._raw([])
        cs = [ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca.is_zero:
                continue
            for j, cb in enumerate(b):
                cs[i + j] = cs[i + j] + ca * cb
        return Polynomial._raw(cs)

    __rmul__ = __mul__

    def scale(self, c: FieldElement) -> "Polynomial":
        if c.is_zero:
            return Polynomial._raw([])
        return Polynomial._raw([a * c for a in self.coeffs])

    def __pow__(self, n: int):
        result = Polynomial.constant(ONE)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other: "Polynomial"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Polynomial._raw([]), self
        rem = list(self.coeffs)
        dq = self.degree - other.degree
        quot = [ZERO] * (dq + 1)
        inv_lead = other.leading.inverse()
        oc = other.coeffs
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quot[k] = c
            if not c.is_zero:
                for j, b in enumerate(oc):
                    rem[k + j] = rem[k + j] - c * b
        return Polynomial._raw(quot), Polynomial._raw(rem[:other.degree])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero or self.leading.is_one:
            return self
        return self.scale(self.leading.inverse())

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor (Euclid)."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def derivative(self) -> "Polynomial":
        return Polynomial._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift(self, c: FieldElement) -> "Polynomial":
        """Taylor shift: the polynomial p(x + c) (Horner in x + c)."""
        n = len(self.coeffs)
        if n == 0:
            return self
        out = [self.coeffs[-1]]
        for k in range(n - 2, -1, -1):
            new = [ZERO] * (len(out) + 1)
            for j, v in enumerate(out):
                new[j + 1] = new[j + 1] + v
                new[j] = new[j] + v * c
            new[0] = new[0] + self.coeffs[k]
            out = new
        return Polynomial._raw(out)

    def eval(self, x: FieldElement) -> FieldElement:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_complex(self, x: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c.to_complex()
        return acc

    # -- comparisons ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            cs = str(c)
            if k == 0:
                parts.append(cs)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                parts.append(xs if cs == "1" else f"({cs})*{xs}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial[{self}]"


P_ZERO = Polynomial()
P_ONE = Polynomial.constant(ONE)
P_X = Polynomial.monomial(1)


def poly_x_minus(c) -> Polynomial:
    return Polynomial([-_coerce_fe(c), ONE])


class LaurentPolynomial:
    """Finite sum of c_k * x^k with integer k of either sign (no zero terms).

    Used for exponents of exponentials (x, x^3/3 - sigma*x, nu/x, ...): the
    derivative of such an exponent is again Laurent, so the closed-form
    function algebra stays closed under differentiation.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        tidy = {}
        for k, v in (terms or {}).items():
            v = _coerce_fe(v)
            if not v.is_zero:
                tidy[int(k)] = v
        self.terms = tidy

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls({})

    @classmethod
    def monomial(cls, k: int, c=ONE) -> "LaurentPolynomial":
        return cls({k: c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> FieldElement:
        return self.terms.get(0, ZERO)

    def min_exponent(self) -> int:
        return min(self.terms) if self.terms else 0

    def max_exponent(self) -> int:
        return max(self.terms) if self.terms else 0

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return LaurentPolynomial(out)

    def __neg__(self):
        return LaurentPolynomial({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "LaurentPolynomial":
        c = _coerce_fe(c)
        return LaurentPolynomial({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        out: dict[int, FieldElement] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                out[k] = out.get(k, ZERO) + a * b
        return LaurentPolynomial(out)

    def derivative(self) -> "LaurentPolynomial":
        return LaurentPolynomial({k - 1: k * v for k, v in self.terms.items()
                                  if k != 0})

    def eval_complex(self, x: complex) -> complex:
        return sum((v.to_complex() * x ** k for k, v in self.terms.items()), 0j)

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = str(self.terms[k])
            if k == 0:
                parts.append(c)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                parts.append(xs if c == "1" else f"({c})*{xs}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Laurent[{self}]"
