"""Frobenius and Taylor series solutions of second-order operators, and the
residual check that certifies series solutions of composed operators.

The operator is cleared to polynomial coefficients A2 y'' + A1 y' + A0 y and
recentred at the expansion point.  Writing y = t^rho * sum c_k t^k, the
coefficient of each power collapses to a banded recurrence

    sum_k c_k * w_{s-k}(rho + k) = 0,
    w_j(L) = a2_j * L(L-1) + a1_{j-1} * L + a0_{j-2},

where a_{i,j} are the Taylor coefficients of the cleared, shifted A_i.  The
first index v with w_v not identically zero carries the indicial polynomial
w_v(L); the point is regular (two exponents) exactly when that polynomial is
quadratic in L.  Coefficients are solved exactly in the active field; a zero
pivot with a nonzero right-hand side is a genuine resonance and is refused.

series_residual evaluates L applied to the truncated series at exact
rational points of a circle (Pythagorean parametrization, so the points have
radius exactly r) and measures magnitudes with mpmath, so residuals far below
double precision remain meaningful and the N -> residual decay is monotone.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .field import FieldElement, ONE, ZERO, Q
from .diffop import DiffOp
from .poly import Polynomial


class IrregularSingularPointError(ValueError):
    pass


class ResonanceError(ValueError):
    """Integer exponent difference with an inconsistent recurrence row."""


@dataclass(frozen=True)
class FrobeniusSolution:
    x0: FieldElement
    rho: FieldElement
    coeffs: tuple  # c_0 .. c_N, c_0 = 1
    truncation: int

    def derivative_values(self, t: FieldElement, max_order: int):
        """Exact values of S^(j)(x0 + t) / t^(rho - j) for j = 0..max_order.

        Dividing out the common power keeps everything in the field; the
        caller reattaches |t^(rho-j)| numerically.
        """
        out = []
        for j in range(max_order + 1):
            acc = ZERO
            tpow = ONE
            for k, c in enumerate(self.coeffs):
                factor = ONE
                for i in range(j):
                    factor = factor * (self.rho + k - i)
                acc = acc + c * factor * tpow
                tpow = tpow * t
            out.append(acc)
        return out


def _cleared_local_data(op: DiffOp, x0: FieldElement):
    """Shifted polynomial coefficients (A2, A1, A0) with denominators cleared."""
    if op.order != 2:
        raise ValueError("series machinery expects an order-2 operator")
    a2, a1, a0 = op.coeff(2), op.coeff(1), op.coeff(0)
    den = a2.den
    for c in (a1, a0):
        g = den.gcd(c.den)
        den = (den * c.den) // g if g.degree >= 0 else den * c.den
    polys = []
    for c in (a2, a1, a0):
        cleared = c.num * (den // c.den)
        polys.append(cleared.shift(x0))
    return polys


def _w_coeff(polys, j: int):
    """The quadratic w_j as coefficient triple (of L(L-1), L, 1)."""
    a2p, a1p, a0p = polys
    return (a2p.coeff(j), a1p.coeff(j - 1), a0p.coeff(j - 2))


def _w_eval(w, lam: FieldElement) -> FieldElement:
    c2, c1, c0 = w
    return c2 * lam * (lam - 1) + c1 * lam + c0


def _indicial_data(op: DiffOp, x0: FieldElement):
    polys = _cleared_local_data(op, x0)
    max_j = max(p.degree for p in polys if not p.is_zero) + 2
    for v in range(max_j + 1):
        w = _w_coeff(polys, v)
        if not (w[0].is_zero and w[1].is_zero and w[2].is_zero):
            return polys, v, w
    raise ValueError("zero operator has no indicial data")


def indicial_roots(op: DiffOp, x0: FieldElement):
    """Both local exponents at an ordinary or regular singular point."""
    x0 = FieldElement._coerce(x0)
    _, _, w = _indicial_data(op, x0)
    c2, c1, c0 = w
    if c2.is_zero:
        raise IrregularSingularPointError(
            f"irregular singular point at {x0}: indicial polynomial "
            "degenerates below degree 2")
    # c2*L^2 + (c1 - c2)*L + c0
    disc = (c1 - c2) * (c1 - c2) - 4 * c2 * c0
    root = disc.sqrt()
    two = 2 * c2
    return ((-(c1 - c2) + root) / two, (-(c1 - c2) - root) / two)


def frobenius_series(op: DiffOp, x0, rho, n: int) -> FrobeniusSolution:
    """Exact series solution t^rho * (1 + c_1 t + ... + c_N t^N) at x0.

    rho must satisfy the indicial equation.  When the recurrence pivot
    vanishes at some order (integer exponent difference) and the row is
    consistent, that coefficient is set to zero and the recursion continues;
    an inconsistent row raises ResonanceError.
    """
    x0 = FieldElement._coerce(x0)
    rho = FieldElement._coerce(rho)
    if n < 4:
        raise ValueError("truncation order must be at least 4")
    polys, v, w_v = _indicial_data(op, x0)
    if not _w_eval(w_v, rho).is_zero:
        raise ValueError(f"{rho} is not an indicial exponent at {x0}")
    max_band = max(p.degree for p in polys if not p.is_zero) + 2
    w_table = [_w_coeff(polys, j) for j in range(max_band + 1)]
    coeffs = [ONE]
    for s in range(1, n + 1):
        rhs = ZERO
        for k in range(max(0, s - max_band + v), s):
            j = v + s - k
            if j <= max_band:
                w = w_table[j]
                if not (w[0].is_zero and w[1].is_zero and w[2].is_zero):
                    rhs = rhs + coeffs[k] * _w_eval(w, rho + k)
        pivot = _w_eval(w_v, rho + s)
        if pivot.is_zero:
            if rhs.is_zero:
                coeffs.append(ZERO)
                continue
            raise ResonanceError(
                f"resonant exponent at {x0}: order {s} row is inconsistent "
                "(integer exponent difference); choose the larger exponent "
                "or move the expansion point")
        coeffs.append(-rhs / pivot)
    return FrobeniusSolution(x0, rho, tuple(coeffs), n)


def truncation_remainder_valuation(op: DiffOp, sol: FrobeniusSolution) -> int:
    """Lowest k with (op applied to the truncated series) having a t^(rho+k)
    term, or None when the image is identically zero.

    The recurrence guarantees k >= N - 1 for the operator the series solves.
    """
    polys = _cleared_local_data(op, sol.x0)
    v_den = next(k for k, c in enumerate(
        _den_of(op, sol.x0).coeffs) if not c.is_zero)
    total: dict[int, FieldElement] = {}
    for k, c in enumerate(sol.coeffs):
        if c.is_zero:
            continue
        lam = sol.rho + k
        for j, p in enumerate(polys):
            factor = {0: lam * (lam - 1), 1: lam, 2: ONE}[j]
            offset = {0: -2, 1: -1, 2: 0}[j]
            if factor.is_zero:
                continue
            for m, a in enumerate(p.coeffs):
                if a.is_zero:
                    continue
                key = k + offset + m
                total[key] = total.get(key, ZERO) + c * factor * a
    nonzero = sorted(k for k, val in total.items() if not val.is_zero)
    if not nonzero:
        return None
    return nonzero[0] - v_den


def _den_of(op: DiffOp, x0: FieldElement) -> Polynomial:
    a2, a1, a0 = op.coeff(2), op.coeff(1), op.coeff(0)
    den = a2.den
    for c in (a1, a0):
        g = den.gcd(c.den)
        den = (den * c.den) // g
    return den.shift(x0)


def circle_points(radius, count: int):
    """Exact Gaussian-rational points with |x| = radius (rational radius).

    Pythagorean parametrization: for rational s, the point
    radius * ((1-s^2) + 2si) / (1+s^2) has norm exactly radius.
    """
    params = [Q(0), Q(1, 4), Q(1, 2), Q(1), Q(2), Q(-1, 2), Q(-1), Q(-4)]
    if count > len(params):
        # i/(2i+1) is injective and misses the base list
        params = params + [Q(i, 2 * i + 1)
                           for i in range(3, 3 + count - len(params))]
    radius = Q(radius)
    out = []
    for s in params[:count]:
        den = 1 + s * s
        re = radius * (1 - s * s) / den
        im = radius * (2 * s) / den
        out.append(FieldElement.make(re, im))
    return out


@dataclass(frozen=True)
class SeriesResidualResult:
    max_residual: float
    truncation: int
    radius: object
    points: int

    def __float__(self):
        return self.max_residual


def _nearest_pole_distance(op: DiffOp, x0: FieldElement) -> float | None:
    from .ratfunc import poly_roots

    best = None
    x0c = x0.to_complex()
    for c in op.coeffs:
        if c.den.degree < 1:
            continue
        exact, numeric = poly_roots(c.den)
        for root, _m in exact:
            dist = abs(root.to_complex() - x0c)
            if dist > 1e-12 and (best is None or dist < best):
                best = dist
        for root in numeric:
            dist = abs(root - x0c)
            if dist > 1e-12 and (best is None or dist < best):
                best = dist
    return best


def series_residual(op: DiffOp, sol: FrobeniusSolution, radius,
                    points: int = 8, dps: int = 60) -> SeriesResidualResult:
    """max_j |op(S_N)(x_j)| over exact circle points around the expansion.

    Everything except the final magnitude is computed exactly: the truncated
    series and its derivatives are field values at the rational points, and
    the operator coefficients are evaluated exactly, so cancellation below
    double precision is not lost.  The radius must stay strictly inside the
    distance to the nearest other singularity of the operator.
    """
    limit = _nearest_pole_distance(op, sol.x0)
    if limit is not None and float(radius) >= limit - 1e-12:
        raise ValueError(
            f"radius {radius} reaches the nearest singularity "
            f"(distance {limit:.6g})")
    order = op.order
    worst = mpmath.mpf(0)
    with mpmath.workdps(dps):
        for t in circle_points(radius, points):
            x = sol.x0 + t
            derivs = sol.derivative_values(t, order)
            tm = t.to_mpc(mpmath.mp)
            # reattach the principal power t^(rho-j) split off by
            # derivative_values
            logt = mpmath.log(tm)
            acc = mpmath.mpc(0)
            for j in range(order + 1):
                c = op.coeff(j)
                if c.is_zero:
                    continue
                cval = c.eval(x).to_mpc(mpmath.mp)
                rho_j = (sol.rho - j).to_mpc(mpmath.mp)
                scale = mpmath.exp(rho_j * logt)
                acc += cval * derivs[j].to_mpc(mpmath.mp) * scale
            total = abs(acc)
            if total > worst:
                worst = total
    return SeriesResidualResult(float(worst), sol.truncation, radius, points)
