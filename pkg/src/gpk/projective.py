"""Points of P^2, projectivized 3x3 matrices, and the Hermitian curve.

Points and matrices are stored in a canonical normalization: the first
nonzero coordinate (or first nonzero entry in row-major order) is scaled
to 1, so equality in projective space is plain tuple equality and both
types can sit in sets and dict keys.
"""

from __future__ import annotations

from gpk.ffield import FieldError, build_field, solve_additive


class ProjPoint:
    """Point of P^2 over a field context, canonically normalized."""

    __slots__ = ("ctx", "trip")

    def __init__(self, ctx, coords):
        coords = tuple(coords)
        if len(coords) != 3:
            raise ValueError("a projective point needs three coordinates")
        enc = tuple(c.v if hasattr(c, "v") else c for c in coords)
        if all(v == 0 for v in enc):
            raise ValueError("(0:0:0) is not a projective point")
        lead = next(v for v in enc if v != 0)
        if lead != 1:
            inv = ctx.inv_enc(lead)
            enc = tuple(ctx.mul_enc(inv, v) for v in enc)
        self.ctx = ctx
        self.trip = enc

    @property
    def coords(self):
        return tuple(self.ctx.el(v) for v in self.trip)

    def lift_to(self, big):
        if big is self.ctx:
            return self
        emb = self.ctx.embedding_into(big)
        return ProjPoint(big, [emb.map(c).v for c in self.coords])

    def affine_coords(self):
        """(X/Z, Y/Z) for points off the line Z = 0, else None."""
        if self.trip[2] == 0:
            return None
        zi = self.ctx.inv_enc(self.trip[2])
        return (
            self.ctx.el(self.ctx.mul_enc(self.trip[0], zi)),
            self.ctx.el(self.ctx.mul_enc(self.trip[1], zi)),
        )

    def serialize(self):
        return [c.coeffs() for c in self.coords]

    def digit_string(self):
        return ",".join(c.digit_string() for c in self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and other.ctx is self.ctx
            and other.trip == self.trip
        )

    def __hash__(self):
        return hash((id(self.ctx), self.trip))

    def __repr__(self):
        return f"({self.trip[0]}:{self.trip[1]}:{self.trip[2]})"


class ProjMatrix:
    """Invertible 3x3 matrix modulo scalars, canonically normalized."""

    __slots__ = ("ctx", "ent")

    def __init__(self, ctx, entries):
        entries = tuple(entries)
        if len(entries) != 9:
            raise ValueError("a 3x3 matrix needs nine entries")
        enc = tuple(e.v if hasattr(e, "v") else e for e in entries)
        if _det3(ctx, enc) == 0:
            raise ValueError("matrix is singular")
        lead = next(v for v in enc if v != 0)
        if lead != 1:
            inv = ctx.inv_enc(lead)
            enc = tuple(ctx.mul_enc(inv, v) for v in enc)
        self.ctx = ctx
        self.ent = enc

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, (1, 0, 0, 0, 1, 0, 0, 0, 1))

    @property
    def rows(self):
        e = [self.ctx.el(v) for v in self.ent]
        return [e[0:3], e[3:6], e[6:9]]

    def __matmul__(self, other):
        if not isinstance(other, ProjMatrix) or other.ctx is not self.ctx:
            raise ValueError("matrix product requires matching contexts")
        ctx = self.ctx
        a, b = self.ent, other.ent
        out = []
        for i in range(3):
            for j in range(3):
                acc = 0
                for k in range(3):
                    acc = ctx.add_enc(acc, ctx.mul_enc(a[3 * i + k], b[3 * k + j]))
                out.append(acc)
        return ProjMatrix(ctx, out)

    def inverse(self):
        ctx = self.ctx
        m = self.ent
        c = _cofactors(ctx, m)
        # adjugate = transpose of cofactor matrix; projective scaling absorbs 1/det
        adj = (c[0], c[3], c[6], c[1], c[4], c[7], c[2], c[5], c[8])
        return ProjMatrix(ctx, adj)

    def apply(self, point):
        """Image of a point; contexts may differ by a tower embedding."""
        ctx = point.ctx
        ent = self.ent
        if ctx is not self.ctx:
            emb = self.ctx.embedding_into(ctx)
            ent = tuple(emb.map(self.ctx.el(v)).v for v in ent)
        out = []
        for i in range(3):
            acc = 0
            for k in range(3):
                acc = ctx.add_enc(acc, ctx.mul_enc(ent[3 * i + k], point.trip[k]))
            out.append(acc)
        return ProjPoint(ctx, out)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = ProjMatrix.identity(self.ctx)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def serialize(self):
        return [self.ctx.el(v).coeffs() for v in self.ent]

    def __eq__(self, other):
        return (
            isinstance(other, ProjMatrix)
            and other.ctx is self.ctx
            and other.ent == self.ent
        )

    def __hash__(self):
        return hash((id(self.ctx), self.ent))

    def __repr__(self):
        return f"PGL3{self.ent}"


def _det3(ctx, m):
    def mul(a, b):
        return ctx.mul_enc(a, b)

    def sub(a, b):
        return ctx.add_enc(a, ctx.neg_enc(b))

    t0 = sub(mul(m[4], m[8]), mul(m[5], m[7]))
    t1 = sub(mul(m[3], m[8]), mul(m[5], m[6]))
    t2 = sub(mul(m[3], m[7]), mul(m[4], m[6]))
    return sub(ctx.add_enc(mul(m[0], t0), mul(m[2], t2)), mul(m[1], t1))


def _cofactors(ctx, m):
    def mul(a, b):
        return ctx.mul_enc(a, b)

    def sub(a, b):
        return ctx.add_enc(a, ctx.neg_enc(b))

    idx = [(1, 2, 1, 2), (1, 2, 0, 2), (1, 2, 0, 1),
           (0, 2, 1, 2), (0, 2, 0, 2), (0, 2, 0, 1),
           (0, 1, 1, 2), (0, 1, 0, 2), (0, 1, 0, 1)]
    out = []
    for pos, (r0, r1, c0, c1) in enumerate(idx):
        minor = sub(mul(m[3 * r0 + c0], m[3 * r1 + c1]), mul(m[3 * r0 + c1], m[3 * r1 + c0]))
        if (pos // 3 + pos % 3) % 2:
            minor = ctx.neg_enc(minor)
        out.append(minor)
    return out


class HermitianCurve:
    """The curve X^q Z + X Z^q - Y^(q+1) = 0 over GF(q^2), q = p^e.

    P1 = (1:0:0) is the unique point at infinity; P2 = (0:0:1) is the
    affine origin.  Rational-point enumeration is deterministic: P1 first,
    then affine points sorted by the (y, x) encoding pair.
    """

    def __init__(self, p, e):
        self.p = p
        self.e = e
        self.q = p ** e
        self.field = build_field(p, 2 * e)

    @property
    def point_at_infinity(self):
        return ProjPoint(self.field, (1, 0, 0))

    @property
    def origin(self):
        return ProjPoint(self.field, (0, 0, 1))

    def on_curve(self, point):
        """Whether the defining form vanishes; works over any tower level."""
        ctx = point.ctx
        if ctx is not self.field and (ctx.p != self.p or ctx.n % (2 * self.e) != 0):
            raise FieldError("point coordinates do not live over the curve's tower")
        x, y, z = (ctx.el(v) for v in point.trip)
        q = self.q
        return (x ** q * z + x * z ** q - y ** (q + 1)).v == 0

    def affine_point(self, x, y):
        return ProjPoint(x.ctx, (x.v, y.v, 1))

    def rational_points(self, field=None):
        """All points over the given tower level (default GF(q^2))."""
        ctx = field if field is not None else self.field
        pts = [ProjPoint(ctx, (1, 0, 0))]
        q = self.q
        for y_enc in range(ctx.order):
            y = ctx.el(y_enc)
            c = y ** (q + 1)
            for x in solve_additive(c, ctx, q=q):
                pts.append(ProjPoint(ctx, (x.v, y.v, 1)))
        # enumeration emits (y, x) sorted affine points after the infinite one
        return pts
