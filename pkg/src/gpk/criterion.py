"""Divisor arithmetic on curve points and the five-condition criterion.

A tuple (N1, N2, H, G1, G2, P1, P2) passes when

  (a) the fixed fields of G1 and G2 are rational (certified by witnesses),
  (b) G1 and G2 intersect exactly in H,
  (c) the only normal-in-G_i subgroup between N_i and H is N_i itself,
  (d) the two mixed orbit-sum divisors agree exactly, and
  (e) the H-orbits of P1 and P2 differ;

the reward is a birational plane model of X/H of degree (G1:H) + 1 whose
projections from the two marked points share the same Galois closure.
Verdicts carry their evidence so failed runs are debuggable from the report
alone.
"""

from __future__ import annotations

from types import SimpleNamespace

from gpk.funcfield import Witness, rationality_witness, standard_witnesses, preserves_curve
from gpk.groups import (
    check_semidirect,
    closure,
    cyclic_subgroup,
    intersect,
    is_normal,
    n1_subgroup,
    n2_subgroup,
    normal_subgroups_between,
    orbit,
    trivial_group,
)

SCHEMA_VERSION = 1


class CriterionError(ValueError):
    """Raised when a query is structurally invalid (not a mere false verdict)."""


# --------------------------------------------------------------------------
# divisors
# --------------------------------------------------------------------------

class Divisor:
    """Finite formal Z-combination of curve points; exact and hashable-free."""

    __slots__ = ("support",)

    def __init__(self, support=None):
        self.support = {pt: m for pt, m in (support or {}).items() if m != 0}

    @classmethod
    def of_point(cls, point, mult=1):
        return cls({point: mult})

    @property
    def degree(self):
        return sum(self.support.values())

    def __add__(self, other):
        out = dict(self.support)
        for pt, m in other.support.items():
            out[pt] = out.get(pt, 0) + m
        return Divisor(out)

    def __sub__(self, other):
        out = dict(self.support)
        for pt, m in other.support.items():
            out[pt] = out.get(pt, 0) - m
        return Divisor(out)

    def __rmul__(self, k):
        return Divisor({pt: k * m for pt, m in self.support.items()})

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.support == other.support

    __hash__ = None

    def lift_to(self, ctx):
        return Divisor({pt.lift_to(ctx): m for pt, m in self.support.items()})

    def serialize(self):
        entries = sorted(self.support.items(), key=lambda kv: kv[0].trip)
        return [[pt.serialize(), m] for pt, m in entries]

    def __repr__(self):
        if not self.support:
            return "Div(0)"
        return " + ".join(f"{m}*{pt!r}" for pt, m in sorted(self.support.items(), key=lambda kv: kv[0].trip))


def orbit_sum(group, point):
    """The divisor sum of sigma(point) over the group: each orbit point
    carries the stabilizer order, so the degree is exactly |G|."""
    orb = orbit(group, point)
    if group.order % len(orb):
        raise CriterionError("orbit size does not divide the group order")
    mult = group.order // len(orb)
    return Divisor({pt: mult for pt in orb})


def _join_ctx(a, b):
    if a is b:
        return a
    if a.p != b.p:
        raise CriterionError("points live over incompatible characteristics")
    if a.n % b.n == 0:
        return a
    if b.n % a.n == 0:
        return b
    raise CriterionError("points live over incomparable tower levels")


# --------------------------------------------------------------------------
# per-condition verdicts
# --------------------------------------------------------------------------

class ConditionResult:
    __slots__ = ("name", "ok", "evidence")

    def __init__(self, name, ok, evidence=None):
        self.name = name
        self.ok = bool(ok)
        self.evidence = evidence or {}

    def serialize(self):
        return {"condition": self.name, "ok": self.ok, "evidence": self.evidence}

    def __repr__(self):
        return f"ConditionResult({self.name}, ok={self.ok})"


def condition_a(group, witness, label="a"):
    """Rationality of the fixed field, certified by the supplied witness."""
    if not isinstance(witness, Witness):
        raise CriterionError("condition (a) needs a Witness carrying its pole point")
    cert = rationality_witness(group, witness)
    return ConditionResult(
        label,
        cert.valid,
        {"witness": witness.serialize(), "certificate": cert.serialize()},
    )


def condition_b(g1, g2, h):
    inter = intersect(g1, g2)
    ok = inter.elements == h.elements
    return ConditionResult(
        "b",
        ok,
        {"intersection_order": inter.order, "h_order": h.order,
         "intersection": inter.serialize()},
    )


def condition_c(n, h, g, label="c"):
    survivors = normal_subgroups_between(n, h, g)
    ok = len(survivors) == 1 and survivors[0].elements == n.elements
    return ConditionResult(
        label,
        ok,
        {"surviving_orders": [s.order for s in survivors],
         "survivors": [s.serialize() for s in survivors]},
    )


def condition_d(h, g1, g2, p1, p2, curve=None):
    ctx = _join_ctx(p1.ctx, p2.ctx)
    q1 = p1.lift_to(ctx)
    q2 = p2.lift_to(ctx)
    lhs = orbit_sum(h, q1) + orbit_sum(g1, q2)
    rhs = orbit_sum(h, q2) + orbit_sum(g2, q1)
    if curve is not None:
        for div in (lhs, rhs):
            for pt in div.support:
                if not curve.on_curve(pt):
                    raise CriterionError("orbit escaped the curve's point set")
    ok = lhs == rhs
    return ConditionResult(
        "d",
        ok,
        {"lhs": lhs.serialize(), "rhs": rhs.serialize(),
         "lhs_degree": lhs.degree, "rhs_degree": rhs.degree},
    )


def condition_e(h, p1, p2):
    ctx = _join_ctx(p1.ctx, p2.ctx)
    orb1 = orbit(h, p1.lift_to(ctx))
    orb2 = orbit(h, p2.lift_to(ctx))
    ok = orb1 != orb2
    return ConditionResult(
        "e",
        ok,
        {"orbit1": sorted(pt.serialize() for pt in orb1),
         "orbit2": sorted(pt.serialize() for pt in orb2)},
    )


def check_outer_point(curve, g1, g2, point):
    """The 6-tuple variant: do the two full orbit sums of one outer point agree?"""
    if not curve.on_curve(point):
        raise CriterionError("the outer point must lie on the curve")
    lhs = orbit_sum(g1, point)
    rhs = orbit_sum(g2, point)
    return ConditionResult(
        "outer",
        lhs == rhs,
        {"lhs": lhs.serialize(), "rhs": rhs.serialize(),
         "lhs_degree": lhs.degree, "rhs_degree": rhs.degree},
    )


# --------------------------------------------------------------------------
# the aggregated report
# --------------------------------------------------------------------------

class CriterionReport:
    def __init__(self):
        self.preconditions = []
        self.conditions = {}
        self.overall = False
        self.galois = {}

    @property
    def preconditions_ok(self):
        return all(item["ok"] for item in self.preconditions)

    def serialize(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "preconditions": self.preconditions,
            "conditions": {k: v.serialize() for k, v in sorted(self.conditions.items())},
            "overall": self.overall,
            "galois": self.galois,
        }


def _precondition(report, name, ok, detail=""):
    report.preconditions.append({"name": name, "ok": bool(ok), "detail": detail})
    return bool(ok)


def verify_tuple(curve, n1, n2, h, g1, g2, p1, p2, witnesses, structure=None):
    """Run the whole criterion for one tuple and return the evidence report.

    witnesses: pair of Witness objects certifying condition (a) for G1, G2.
    structure: optional pair of subgroups (S1, S2); when given, the report
    also certifies G_i = S_i x| H, the shape the projection Galois groups
    take for the built-in instances.
    """
    report = CriterionReport()
    ok = True
    ok &= _precondition(report, "n1_in_h", n1.elements <= h.elements, "N1 must sit inside H")
    ok &= _precondition(report, "n2_in_h", n2.elements <= h.elements, "N2 must sit inside H")
    ok &= _precondition(report, "h_in_g1", h.elements <= g1.elements, "H must sit inside G1")
    ok &= _precondition(report, "h_in_g2", h.elements <= g2.elements, "H must sit inside G2")
    for label, grp in (("g1", g1), ("g2", g2)):
        good = all(preserves_curve(curve, m) for m in grp.effective_generators())
        ok &= _precondition(report, f"{label}_preserves_curve", good,
                            "group generators must stabilize the curve")
    for label, pt in (("p1", p1), ("p2", p2)):
        ok &= _precondition(report, f"{label}_on_curve", curve.on_curve(pt),
                            "marked points must lie on the curve")
    if ok:
        ok &= _precondition(report, "n1_normal_in_g1", is_normal(n1, g1), "N1 must be normal in G1")
        ok &= _precondition(report, "n2_normal_in_g2", is_normal(n2, g2), "N2 must be normal in G2")
    if not ok:
        report.overall = False
        return report

    w1, w2 = witnesses
    report.conditions["a1"] = condition_a(g1, w1, label="a1")
    report.conditions["a2"] = condition_a(g2, w2, label="a2")
    report.conditions["b"] = condition_b(g1, g2, h)
    report.conditions["c1"] = condition_c(n1, h, g1, label="c1")
    report.conditions["c2"] = condition_c(n2, h, g2, label="c2")
    report.conditions["d"] = condition_d(h, g1, g2, p1, p2, curve=curve)
    report.conditions["e"] = condition_e(h, p1, p2)
    report.overall = all(c.ok for c in report.conditions.values())

    if report.overall:
        degree = g1.order // h.order + 1
        report.galois = {
            "degree": degree,
            "projection_degree": degree - 1,
            "galois_group_orders": [g1.order // n1.order, g2.order // n2.order],
        }
        if structure is not None:
            s1, s2 = structure
            report.galois["semidirect"] = {
                "g1": check_semidirect(g1, s1, h),
                "g2": check_semidirect(g2, s2, h),
                "normal_part_order": s1.order,
                "complement_order": h.order,
            }
    return report


# --------------------------------------------------------------------------
# the built-in instance
# --------------------------------------------------------------------------

def standard_instance(curve, m):
    """The explicit tuple for the Hermitian curve: Sylow translation groups
    N_i extended by the order-m torus H, marked points at infinity/origin."""
    n1s = n1_subgroup(curve)
    n2s = n2_subgroup(curve)
    h = cyclic_subgroup(curve, m)
    g1 = closure(list(n1s.generators) + list(h.generators), ctx=curve.field)
    g2 = closure(list(n2s.generators) + list(h.generators), ctx=curve.field)
    w1, w2 = standard_witnesses(curve, m)
    return SimpleNamespace(
        curve=curve,
        m=m,
        sylow1=n1s,
        sylow2=n2s,
        h=h,
        g1=g1,
        g2=g2,
        p1=curve.point_at_infinity,
        p2=curve.origin,
        witnesses=(w1, w2),
        trivial=trivial_group(curve.field),
    )


def verify_standard_instance(curve, m):
    inst = standard_instance(curve, m)
    return verify_tuple(
        curve,
        inst.trivial,
        inst.trivial,
        inst.h,
        inst.g1,
        inst.g2,
        inst.p1,
        inst.p2,
        inst.witnesses,
        structure=(inst.sylow1, inst.sylow2),
    )
