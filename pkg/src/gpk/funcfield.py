"""Exact computation in the Hermitian function field k(x, y), x^q + x = y^(q+1).

Polynomials are kept in the canonical form with y-degree <= q, obtained by
rewriting y^(q+1) -> x^q + x until exhaustion; distinct canonical monomials
x^i y^j then have pairwise distinct pole orders (q+1)i + qj at the point at
infinity, which turns valuations there into a minimum over the support.
Valuations at affine points go through a translation moving the point to
the origin followed by a truncated power-series expansion in the local
uniformizer y.
"""

from __future__ import annotations

from gpk.groups import translation_matrix
from gpk.projective import ProjMatrix

SERIES_PRECISION_CAP = 1 << 16


class FuncFieldError(ValueError):
    """Raised for invalid function-field operations."""


# --------------------------------------------------------------------------
# canonical polynomials
# --------------------------------------------------------------------------

class CurvePoly:
    """Sparse polynomial in x, y reduced modulo y^(q+1) = x^q + x."""

    __slots__ = ("curve", "terms")

    def __init__(self, curve, terms):
        # terms must already be canonical: j <= q, no zero coefficients
        self.curve = curve
        self.terms = terms

    @classmethod
    def from_terms(cls, curve, raw):
        """Build from arbitrary (i, j) -> coefficient data, then reduce."""
        ctx = curve.field
        acc = {}
        for (i, j), c in raw.items():
            enc = c.v if hasattr(c, "v") else c
            if enc == 0:
                continue
            acc[(i, j)] = ctx.add_enc(acc.get((i, j), 0), enc)
        return cls(curve, _reduce_terms(curve, acc))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, CurvePoly)
            and other.curve.field is self.curve.field
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((id(self.curve.field), tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        ctx = self.curve.field
        out = dict(self.terms)
        for key, enc in other.terms.items():
            s = ctx.add_enc(out.get(key, 0), enc)
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return CurvePoly(self.curve, out)

    def __neg__(self):
        ctx = self.curve.field
        return CurvePoly(self.curve, {k: ctx.neg_enc(v) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ctx = self.curve.field
        acc = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                acc[key] = ctx.add_enc(acc.get(key, 0), ctx.mul_enc(c1, c2))
        return CurvePoly(self.curve, _reduce_terms(self.curve, acc))

    def scale(self, c):
        enc = c.v if hasattr(c, "v") else c
        if enc == 0:
            return CurvePoly(self.curve, {})
        ctx = self.curve.field
        return CurvePoly(self.curve, {k: ctx.mul_enc(v, enc) for k, v in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise FuncFieldError("negative power of a polynomial")
        result = const_poly(self.curve, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def valuation_at_infinity(self):
        """min over the support of -((q+1) i + q j); distinct per monomial."""
        if not self.terms:
            raise FuncFieldError("valuation of the zero polynomial")
        q = self.curve.q
        return min(-((q + 1) * i + q * j) for i, j in self.terms)

    def evaluate(self, xv, yv):
        """Value at affine coordinates, possibly over a tower extension."""
        ctx = xv.ctx
        if ctx is self.curve.field:
            lift = None
        else:
            lift = self.curve.field.embedding_into(ctx)
        acc = 0
        xcache = {0: 1}
        ycache = {0: 1}
        for (i, j), c in self.terms.items():
            if i not in xcache:
                xcache[i] = ctx.pow_enc(xv.v, i)
            if j not in ycache:
                ycache[j] = ctx.pow_enc(yv.v, j)
            cv = c if lift is None else lift.map(self.curve.field.el(c)).v
            acc = ctx.add_enc(acc, ctx.mul_enc(cv, ctx.mul_enc(xcache[i], ycache[j])))
        return ctx.el(acc)

    def serialize(self):
        return [
            [i, j, self.curve.field.el(c).coeffs()]
            for (i, j), c in sorted(self.terms.items())
        ]

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in sorted(self.terms.items()):
            part = f"{self.curve.field.el(c).digit_string()}"
            if i:
                part += f"*x^{i}" if i > 1 else "*x"
            if j:
                part += f"*y^{j}" if j > 1 else "*y"
            bits.append(part)
        return " + ".join(bits)


def _reduce_terms(curve, raw):
    """Rewrite y^(q+1) -> x^q + x until every y-degree is <= q."""
    ctx = curve.field
    q = curve.q
    pending = dict(raw)
    out = {}
    while pending:
        (i, j), c = pending.popitem()
        if c == 0:
            continue
        if j <= q:
            s = ctx.add_enc(out.get((i, j), 0), c)
            if s:
                out[(i, j)] = s
            else:
                out.pop((i, j), None)
            continue
        # c x^i y^j = c x^(i+q) y^(j-q-1) + c x^(i+1) y^(j-q-1)
        for key in ((i + q, j - q - 1), (i + 1, j - q - 1)):
            s = ctx.add_enc(pending.get(key, 0), c)
            if s:
                pending[key] = s
            else:
                pending.pop(key, None)
    return out


def const_poly(curve, c):
    enc = c.v if hasattr(c, "v") else c
    return CurvePoly(curve, {(0, 0): enc} if enc else {})


def x_poly(curve):
    return CurvePoly(curve, {(1, 0): 1})


def y_poly(curve):
    return CurvePoly(curve, {(0, 1): 1})


# --------------------------------------------------------------------------
# rational functions
# --------------------------------------------------------------------------

class CurveFunction:
    """Fraction of canonical polynomials; equality is cross-multiplied."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = const_poly(num.curve, 1)
        if den.is_zero():
            raise FuncFieldError("zero denominator")
        self.num = num
        self.den = den

    @property
    def curve(self):
        return self.num.curve

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CurveFunction):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None  # equality is not representation-based

    def __add__(self, other):
        return CurveFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return CurveFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return CurveFunction(-self.num, self.den)

    def __mul__(self, other):
        return CurveFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise FuncFieldError("division by the zero function")
        return CurveFunction(self.num * other.den, self.den * other.num)

    def reciprocal(self):
        if self.is_zero():
            raise FuncFieldError("reciprocal of the zero function")
        return CurveFunction(self.den, self.num)

    def __pow__(self, k):
        if k < 0:
            return self.reciprocal() ** (-k)
        return CurveFunction(self.num ** k, self.den ** k)

    def serialize(self):
        return {
            "num": self.num.serialize(),
            "den": self.den.serialize(),
            "field": self.curve.field.describe(),
        }

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


def x_function(curve):
    return CurveFunction(x_poly(curve))


def y_function(curve):
    return CurveFunction(y_poly(curve))


def poly_function(poly):
    return CurveFunction(poly)


# --------------------------------------------------------------------------
# automorphism pullbacks
# --------------------------------------------------------------------------

_PRESERVE_MEMO = {}


def _linear_form(curve, row):
    m0, m1, m2 = (e.v for e in row)
    terms = {}
    if m0:
        terms[(1, 0)] = m0
    if m1:
        terms[(0, 1)] = m1
    if m2:
        terms[(0, 0)] = m2
    return CurvePoly(curve, terms)


def preserves_curve(curve, mat):
    """Whether the projectivity maps the Hermitian curve into itself."""
    key = (id(curve.field), curve.q, mat.ent)
    hit = _PRESERVE_MEMO.get(key)
    if hit is not None:
        return hit
    rows = mat.rows
    a = _linear_form(curve, rows[0])
    b = _linear_form(curve, rows[1])
    lf = _linear_form(curve, rows[2])
    q = curve.q
    transformed = a ** q * lf + a * lf ** q - b ** (q + 1)
    ok = transformed.is_zero()
    _PRESERVE_MEMO[key] = ok
    return ok


def pullback(mat, fn):
    """sigma^* fn = fn o sigma, for sigma stabilizing the curve.

    Fractional-linear substitution with denominators cleared by the same
    power of the Z-row linear form for numerator and denominator, so the
    result stays a fraction of canonical polynomials for any projectivity.
    """
    curve = fn.curve
    if mat.ctx is not curve.field:
        raise FuncFieldError("pullback matrix must live over the curve's base field")
    if not preserves_curve(curve, mat):
        raise FuncFieldError("projectivity does not preserve the curve relation")
    rows = mat.rows
    a = _linear_form(curve, rows[0])
    b = _linear_form(curve, rows[1])
    lf = _linear_form(curve, rows[2])
    degree = 0
    for poly in (fn.num, fn.den):
        for i, j in poly.terms:
            degree = max(degree, i + j)
    apow = _power_cache(a)
    bpow = _power_cache(b)
    lpow = _power_cache(lf)

    def transform(poly):
        out = CurvePoly(curve, {})
        for (i, j), c in poly.terms.items():
            term = apow(i) * bpow(j) * lpow(degree - i - j)
            out = out + term.scale(c)
        return out

    num = transform(fn.num)
    den = transform(fn.den)
    if den.is_zero():
        raise FuncFieldError("pullback produced a zero denominator")
    return CurveFunction(num, den)


def _power_cache(poly):
    cache = {0: const_poly(poly.curve, 1), 1: poly}

    def power(k):
        if k not in cache:
            cache[k] = power(k - 1) * poly
        return cache[k]

    return power


def is_invariant(fn, group):
    """sigma^* fn = fn for every generator (hence for the whole group)."""
    return all(pullback(g, fn) == fn for g in group.effective_generators())


# --------------------------------------------------------------------------
# valuations
# --------------------------------------------------------------------------

def valuation_at_infinity(fn):
    """v at the point at infinity, by the distinct-monomial-order minimum."""
    if fn.is_zero():
        raise FuncFieldError("valuation of the zero function")
    return fn.num.valuation_at_infinity() - fn.den.valuation_at_infinity()


def swap_matrix(curve):
    """(X:Y:Z) -> (Z:Y:X): swaps the origin and the point at infinity."""
    return ProjMatrix(curve.field, (0, 0, 1, 0, 1, 0, 1, 0, 0))


def translation_to(curve, point):
    """An automorphism tau with tau(origin) = point.

    Affine points use the translation sigma_{y0, x0}; the point at infinity
    uses the coordinate swap.
    """
    if point == curve.point_at_infinity:
        return swap_matrix(curve)
    aff = point.affine_coords()
    if aff is None or not curve.on_curve(point):
        raise FuncFieldError("expected a rational point of the curve")
    x0, y0 = aff
    return translation_matrix(curve, y0, x0)


_X_SERIES_MEMO = {}


def _x_series(curve, prec):
    """x as a power series in the uniformizer y at the origin."""
    key = (id(curve.field), curve.q, prec)
    hit = _X_SERIES_MEMO.get(key)
    if hit is not None:
        return hit
    ctx = curve.field
    q = curve.q
    series = [0] * prec
    # iterate x <- y^(q+1) - x^q; the error valuation multiplies by q each pass
    guard = 0
    while True:
        nxt = [0] * prec
        # x^q term
        for k, c in enumerate(series):
            if c and k * q < prec:
                nxt[k * q] = ctx.add_enc(nxt[k * q], ctx.neg_enc(ctx.pow_enc(c, q)))
        if q + 1 < prec:
            nxt[q + 1] = ctx.add_enc(nxt[q + 1], 1)
        if nxt == series:
            _X_SERIES_MEMO[key] = series
            return series
        series = nxt
        guard += 1
        if guard > prec:
            raise FuncFieldError("x-series iteration failed to stabilize")


def _series_mul(ctx, a, b, prec):
    out = [0] * prec
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj and i + j < prec:
                    out[i + j] = ctx.add_enc(out[i + j], ctx.mul_enc(ai, bj))
                elif i + j >= prec:
                    break
    return out


def _poly_series(poly, prec):
    """Series of a canonical polynomial at the origin, truncated at prec."""
    ctx = poly.curve.field
    xs = _x_series(poly.curve, prec)
    xpow = {0: [1] + [0] * (prec - 1)}
    out = [0] * prec
    for (i, j), c in sorted(poly.terms.items()):
        if i not in xpow:
            base = max(k for k in xpow if k <= i)
            cur = xpow[base]
            for k in range(base, i):
                cur = _series_mul(ctx, cur, xs, prec)
                xpow[k + 1] = cur
        xi = xpow[i]
        # multiply by y^j: shift, then scale by c
        for k, ak in enumerate(xi):
            if ak and k + j < prec:
                out[k + j] = ctx.add_enc(out[k + j], ctx.mul_enc(c, ak))
    return out


def _series_leading(poly, start_prec):
    """(order, leading coefficient) of the series of poly at the origin."""
    if poly.is_zero():
        raise FuncFieldError("series of the zero polynomial")
    bound = -poly.valuation_at_infinity()
    prec = max(4, start_prec)
    while True:
        series = _poly_series(poly, prec)
        for k, c in enumerate(series):
            if c:
                return k, poly.curve.field.el(c)
        if prec > bound:
            raise FuncFieldError("nonzero polynomial with identically zero series")
        prec = min(2 * prec, max(bound + 1, prec + 1))
        if prec > SERIES_PRECISION_CAP:
            raise FuncFieldError("series precision cap exceeded")


def _start_precision(curve, fn):
    size = len(fn.num.terms) + len(fn.den.terms)
    return 4 * (curve.q + 1) * max(1, size)


def leading_data_at_point(fn, point):
    """(valuation, leading coefficient) of fn at a rational point.

    The leading coefficient is taken with respect to the pulled-back
    uniformizer, so ratios of leading data at one point are well defined
    across different functions.
    """
    curve = fn.curve
    if fn.is_zero():
        raise FuncFieldError("valuation of the zero function")
    tau = translation_to(curve, point)
    moved = pullback(tau, fn)
    start = _start_precision(curve, moved)
    nord, nlead = _series_leading(moved.num, start)
    dord, dlead = _series_leading(moved.den, start)
    return nord - dord, nlead / dlead


def valuation_at_point(fn, point):
    """v_P(fn) for an affine rational point P."""
    if point == fn.curve.point_at_infinity:
        return valuation_at_infinity(fn)
    return leading_data_at_point(fn, point)[0]


def valuation_at(fn, point):
    if point == fn.curve.point_at_infinity:
        return valuation_at_infinity(fn)
    return valuation_at_point(fn, point)


# --------------------------------------------------------------------------
# rationality witnesses
# --------------------------------------------------------------------------

class Witness:
    """An invariant function presented as base^power with a declared pole.

    Keeping the power split out lets valuations use additivity, so the
    series work always happens on the small base function.
    """

    __slots__ = ("base", "power", "pole", "_materialized")

    def __init__(self, base, power, pole):
        if power < 1:
            raise FuncFieldError("witness power must be positive")
        self.base = base
        self.power = power
        self.pole = pole
        self._materialized = None

    @property
    def curve(self):
        return self.base.curve

    def function(self):
        if self._materialized is None:
            self._materialized = self.base ** self.power
        return self._materialized

    def valuation_at(self, point):
        return self.power * valuation_at(self.base, point)

    def serialize(self):
        return {
            "base": self.base.serialize(),
            "power": self.power,
            "pole": self.pole.serialize(),
        }


def witness_at_infinity(curve):
    """y^(q^2) - y: invariant under the translations fixing infinity,
    with divisor (sum of affine rational points) - q^3 * infinity."""
    q2 = curve.q ** 2
    return poly_function(
        CurvePoly.from_terms(curve, {(0, q2): 1, (0, 1): curve.field.neg_enc(1)})
    )


def witness_at_origin(curve):
    """(y/x)^(q^2) - y/x: the image of the infinity witness under the
    coordinate swap; its pole sits at the origin."""
    q2 = curve.q ** 2
    u = y_function(curve) / x_function(curve)
    return u ** q2 - u


def standard_witnesses(curve, m):
    """The built-in witness pair for the translation-by-torus groups."""
    return (
        Witness(witness_at_infinity(curve), m, curve.point_at_infinity),
        Witness(witness_at_origin(curve), m, curve.origin),
    )


class RationalityCertificate:
    """Outcome of the three-clause fixed-field check for one witness."""

    __slots__ = ("valid", "clauses", "pole_orders", "group_order", "failure")

    def __init__(self, valid, clauses, pole_orders, group_order, failure=None):
        self.valid = valid
        self.clauses = clauses
        self.pole_orders = pole_orders
        self.group_order = group_order
        self.failure = failure

    def serialize(self):
        return {
            "valid": self.valid,
            "clauses": self.clauses,
            "pole_orders": [[pt.serialize(), order] for pt, order in self.pole_orders],
            "group_order": self.group_order,
            "failure": self.failure,
        }


def _as_witness(witness, pole_point=None):
    if isinstance(witness, Witness):
        return witness
    if pole_point is None:
        raise FuncFieldError("a bare function witness needs an explicit pole point")
    return Witness(witness, 1, pole_point)


def rationality_witness(group, witness, pole_point=None):
    """Certify that the fixed field of the group is k(witness), hence rational.

    Clauses: (i) invariance under the group, (ii) pole order -|G| at the
    declared pole, (iii) the witness has no other pole: every zero of the
    denominator is accounted for at rational points, and the total pole
    degree over rational points equals |G|.  Together these force
    [k(X):k(witness)] = |G| and k(X)^G = k(witness).
    """
    w = _as_witness(witness, pole_point)
    curve = w.curve
    clauses = {"invariant": False, "pole_order": False, "pole_accounting": False}

    one = poly_function(const_poly(curve, 1))
    for g in group.effective_generators():
        ratio = pullback(g, w.base) / w.base
        if not (ratio ** w.power) == one:
            return RationalityCertificate(
                False, clauses, [], group.order, failure="invariant"
            )
    clauses["invariant"] = True

    pole_val = w.valuation_at(w.pole)
    clauses["pole_order"] = pole_val == -group.order
    if not clauses["pole_order"]:
        return RationalityCertificate(
            False, clauses, [(w.pole, pole_val)], group.order, failure="pole_order"
        )

    ok, pole_orders = _pole_accounting(w)
    clauses["pole_accounting"] = ok
    total = sum(-v for _, v in pole_orders if v < 0)
    if not ok or total != group.order:
        clauses["pole_accounting"] = False
        return RationalityCertificate(
            False, clauses, pole_orders, group.order, failure="pole_accounting"
        )
    return RationalityCertificate(True, clauses, pole_orders, group.order)


def _pole_accounting(w):
    """Locate every pole of base^power over the rational points.

    Both num and den are polynomials, so poles can only sit at the point
    at infinity or at zeros of the denominator.  The denominator's zero
    divisor has total degree -v_infinity(den); if that degree is exhausted
    by rational points, no pole hides anywhere else.
    """
    curve = w.curve
    den = w.base.den
    pole_orders = []
    v_inf = w.valuation_at(curve.point_at_infinity)
    pole_orders.append((curve.point_at_infinity, v_inf))
    den_zero_budget = -den.valuation_at_infinity() if not _is_constant(den) else 0
    found = 0
    for pt in curve.rational_points():
        if pt == curve.point_at_infinity:
            continue
        aff = pt.affine_coords()
        if den.evaluate(aff[0], aff[1]).v != 0:
            continue
        den_ord, _ = _series_leading(
            pullback(translation_to(curve, pt), poly_function(den)).num,
            _start_precision(curve, w.base),
        )
        found += den_ord
        pole_orders.append((pt, w.valuation_at(pt)))
    if found != den_zero_budget:
        return False, pole_orders
    return True, pole_orders


def _is_constant(poly):
    return all(key == (0, 0) for key in poly.terms)
