"""Finite subgroups of PGL_3 over GF(q^2), stored by full element sets.

Groups here stay small (closure is capped, default 10^6 elements or the
GPK_MAX_GROUP_ORDER environment override), so everything is exact set
arithmetic: intersection, normality, the subgroup search between two
nested groups, orbits and stabilizers.
"""

from __future__ import annotations

import os

from gpk.ffield import hermitian_pair_check, solve_additive
from gpk.projective import ProjMatrix

DEFAULT_CLOSURE_CAP = 10 ** 6
SUBGROUP_ENUM_CAP = 10 ** 4
GENERIC_LATTICE_CAP = 100


class GroupError(ValueError):
    """Raised for invalid group constructions or queries."""


class MatrixGroup:
    """A finite subgroup of PGL_3: canonical element set plus generators."""

    __slots__ = ("ctx", "elements", "generators", "order")

    def __init__(self, ctx, elements, generators=()):
        self.ctx = ctx
        self.elements = frozenset(elements)
        self.generators = tuple(generators)
        self.order = len(self.elements)
        if self.order == 0:
            raise GroupError("a group needs at least the identity")

    def __contains__(self, m):
        return m in self.elements

    def __le__(self, other):
        return self.elements <= other.elements

    def __eq__(self, other):
        return isinstance(other, MatrixGroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __iter__(self):
        return iter(self.sorted_elements())

    def __len__(self):
        return self.order

    def sorted_elements(self):
        return sorted(self.elements, key=lambda m: m.ent)

    def effective_generators(self):
        """Generators if given, else the full element list."""
        return self.generators if self.generators else tuple(self.sorted_elements())

    def serialize(self, dump_elements=False):
        out = {
            "order": self.order,
            "generators": [g.serialize() for g in self.effective_generators()],
        }
        if dump_elements:
            out["elements"] = [m.serialize() for m in self.sorted_elements()]
        return out

    def __repr__(self):
        return f"MatrixGroup(order={self.order})"


def closure_cap():
    raw = os.environ.get("GPK_MAX_GROUP_ORDER")
    if raw is None:
        return DEFAULT_CLOSURE_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise GroupError(f"GPK_MAX_GROUP_ORDER={raw!r} is not an integer") from exc


def trivial_group(ctx):
    ident = ProjMatrix.identity(ctx)
    return MatrixGroup(ctx, {ident}, ())


def closure(gens, cap=None, ctx=None):
    """Smallest subgroup containing the generators, by product saturation.

    The saturation is breadth-first over canonical forms, so the element
    set is independent of generator order.
    """
    gens = list(gens)
    if not gens:
        if ctx is None:
            raise GroupError("closure of an empty set needs an explicit field context")
        return trivial_group(ctx)
    ctx = gens[0].ctx
    if any(g.ctx is not ctx for g in gens):
        raise GroupError("generators live over different field contexts")
    if cap is None:
        cap = closure_cap()
    ident = ProjMatrix.identity(ctx)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = m @ g
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if len(seen) > cap:
                        raise GroupError(f"group order exceeds cap {cap}")
        frontier = nxt
    # generated monoid of a finite cancellative structure is the group itself
    return MatrixGroup(ctx, seen, gens)


def translation_matrix(curve, a, b):
    """sigma_{a,b}: (X:Y:Z) -> (X + a^q Y + b Z : Y + a Z : Z), fixing P1."""
    if not hermitian_pair_check(a, b, curve.q):
        raise GroupError("(a, b) is not a valid Hermitian pair")
    one, zero = 1, 0
    aq = (a ** curve.q).v
    return ProjMatrix(curve.field, (one, aq, b.v, zero, one, a.v, zero, zero, one))


def opposite_translation_matrix(curve, a, b):
    """(X:Y:Z) -> (X : aX + Y : bX + a^q Y + Z), fixing P2."""
    if not hermitian_pair_check(a, b, curve.q):
        raise GroupError("(a, b) is not a valid Hermitian pair")
    aq = (a ** curve.q).v
    return ProjMatrix(curve.field, (1, 0, 0, a.v, 1, 0, b.v, aq, 1))


def _hermitian_pairs(curve):
    ctx = curve.field
    for a in ctx.elements():
        for b in solve_additive(a ** (curve.q + 1), ctx, q=curve.q):
            yield a, b


def _translation_generators(curve, maker):
    """A small generating set: one matrix per basis vector of GF(q^2),
    plus the additive kernel elements with a = 0."""
    ctx = curve.field
    gens = []
    for i in range(ctx.n):
        a = ctx.from_coeffs([1 if j == i else 0 for j in range(ctx.n)])
        b = solve_additive(a ** (curve.q + 1), ctx, q=curve.q)[0]
        gens.append(maker(curve, a, b))
    for b in solve_additive(ctx.zero, ctx, q=curve.q):
        if b:
            gens.append(maker(curve, ctx.zero, b))
    return gens


def n1_subgroup(curve):
    """The order-q^3 group of translations fixing the point at infinity."""
    ctx = curve.field
    elems = {translation_matrix(curve, a, b) for a, b in _hermitian_pairs(curve)}
    group = MatrixGroup(ctx, elems, _translation_generators(curve, translation_matrix))
    assert group.order == curve.q ** 3
    return group


def n2_subgroup(curve):
    """The order-q^3 group fixing the affine origin."""
    ctx = curve.field
    elems = {opposite_translation_matrix(curve, a, b) for a, b in _hermitian_pairs(curve)}
    group = MatrixGroup(ctx, elems, _translation_generators(curve, opposite_translation_matrix))
    assert group.order == curve.q ** 3
    return group


def diagonal_matrix(curve, c):
    """eta_c: (X:Y:Z) -> (c^(q+1) X : c Y : Z)."""
    if not c:
        raise GroupError("eta_c needs a nonzero c")
    return ProjMatrix(curve.field, ((c ** (curve.q + 1)).v, 0, 0, 0, c.v, 0, 0, 0, 1))


def cyclic_subgroup(curve, m):
    """The order-m subgroup of the diagonal torus, m | q^2 - 1.

    Generated by eta_{c0} with c0 = c^((q^2-1)/m) for the deterministically
    chosen primitive element c (smallest in encoding order).
    """
    full = curve.q ** 2 - 1
    if m < 1 or full % m != 0:
        raise GroupError(f"m={m} does not divide q^2 - 1 = {full}")
    if m == 1:
        return trivial_group(curve.field)
    c = curve.field.smallest_primitive()
    c0 = c ** (full // m)
    gen = diagonal_matrix(curve, c0)
    group = closure([gen])
    assert group.order == m
    return group


def intersect(g1, g2):
    """Exact set intersection; plain subgroup of both."""
    if g1.ctx is not g2.ctx:
        raise GroupError("intersection requires a common field context")
    common = g1.elements & g2.elements
    return MatrixGroup(g1.ctx, common, ())


def is_normal(n, g):
    """Whether gNg^-1 = N for every generator g (hence for all of G)."""
    if not n.elements <= g.elements:
        raise GroupError("normality check requires N to be a subset of G")
    for gen in g.effective_generators():
        inv = gen.inverse()
        for m in n.elements:
            if (gen @ m) @ inv not in n.elements:
                return False
    return True


def _cyclic_generator(h):
    return next((m for m in h.sorted_elements() if element_order(m) == h.order), None)


def element_order(m):
    ident = ProjMatrix.identity(m.ctx)
    k, cur = 1, m
    while cur != ident:
        cur = cur @ m
        k += 1
    return k


def subgroups_between(n, h):
    """All subgroups H' with N <= H' <= H.

    Cyclic H has one subgroup per divisor of |H|; otherwise fall back to
    subset closure over a small H (order capped).
    """
    if not n.elements <= h.elements:
        raise GroupError("expected N <= H")
    if h.order > SUBGROUP_ENUM_CAP:
        raise GroupError(f"|H|={h.order} exceeds the enumeration cap {SUBGROUP_ENUM_CAP}")
    gen = _cyclic_generator(h)
    if gen is not None:
        out = []
        for d in sorted(_divisors(h.order)):
            sub = closure([gen ** (h.order // d)], ctx=h.ctx)
            if n.elements <= sub.elements:
                out.append(sub)
        return out
    if h.order > GENERIC_LATTICE_CAP:
        raise GroupError(
            f"non-cyclic H of order {h.order} exceeds the generic lattice cap {GENERIC_LATTICE_CAP}"
        )
    found = {}
    base = closure(list(n.effective_generators()), ctx=h.ctx) if n.order > 1 else trivial_group(h.ctx)
    stack = [base]
    found[base.elements] = base
    while stack:
        cur = stack.pop()
        for m in h.sorted_elements():
            if m in cur.elements:
                continue
            bigger = closure(list(cur.effective_generators()) + [m], ctx=h.ctx)
            if not bigger.elements <= h.elements:
                continue
            if bigger.elements not in found:
                found[bigger.elements] = bigger
                stack.append(bigger)
    return sorted(found.values(), key=lambda s: (s.order, tuple(m.ent for m in s.sorted_elements())))


def _divisors(k):
    out = set()
    d = 1
    while d * d <= k:
        if k % d == 0:
            out.add(d)
            out.add(k // d)
        d += 1
    return out


def normal_subgroups_between(n, h, g):
    """Subgroups H' with N <= H' <= H that are normal in G."""
    if not h.elements <= g.elements:
        raise GroupError("expected H <= G")
    return [sub for sub in subgroups_between(n, h) if is_normal(sub, g)]


def check_semidirect(g, n, h):
    """True iff G = N x| H: N normal, trivial intersection, orders multiply."""
    if not (n.elements <= g.elements and h.elements <= g.elements):
        raise GroupError("semidirect check requires N, H <= G")
    if not is_normal(n, g):
        return False
    if len(n.elements & h.elements) != 1:
        return False
    return n.order * h.order == g.order


def orbit(g, point):
    return frozenset(m.apply(point) for m in g.elements)


def stabilizer(g, point):
    stab = {m for m in g.elements if m.apply(point) == point}
    return MatrixGroup(g.ctx, stab, ())
