"""Independent elimination oracle for the q=2, m=3 plane model.

This intentionally avoids the package's interpolation pipeline: it reduces
the witness powers to univariate polynomials with its own rewriting loop,
then eliminates the parameter through a bivariate subresultant PRS.  For
this instance the torus-invariant subfield is generated by x alone, so the
embedding components become rational functions of one variable and the
image relation is a single resultant:

    Res_x( u * D(x) - 1,  v * E(x) - x^8 )

with f = 1/D(x) and g = x^8/E(x) in lowest terms.  The result, normalized
and homogenized to degree 9, is byte-frozen as a fixture and compared with
the interpolation route.

Only used at q = 2 (characteristic 2, so no sign bookkeeping is needed; the
final normalization absorbs constant factors anyway).
"""

from gpk.ffield import build_field


# --- independent canonical reduction over GF(4): y^3 -> x^2 + x --------------

def own_reduce(ctx, terms, q):
    out = {}
    pending = dict(terms)
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
        for key in ((i + q, j - q - 1), (i + 1, j - q - 1)):
            s = ctx.add_enc(pending.get(key, 0), c)
            if s:
                pending[key] = s
            else:
                pending.pop(key, None)
    return out


def poly_mul_xy(ctx, a, b):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            out[key] = ctx.add_enc(out.get(key, 0), ctx.mul_enc(c1, c2))
    return {k: v for k, v in out.items() if v}


def poly_pow_xy(ctx, a, k):
    out = {(0, 0): 1}
    for _ in range(k):
        out = poly_mul_xy(ctx, out, a)
    return out


def to_univariate(terms):
    """Require y-degree zero; return the dense x-coefficient list."""
    assert all(j == 0 for (_, j) in terms), "expected a polynomial in x alone"
    deg = max(i for (i, _) in terms)
    out = [0] * (deg + 1)
    for (i, _), c in terms.items():
        out[i] = c
    return out


# --- bivariate coefficients in (u, v) -----------------------------------------

def biv_add(ctx, a, b):
    out = dict(a)
    for k, c in b.items():
        s = ctx.add_enc(out.get(k, 0), c)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def biv_mul(ctx, a, b):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            s = ctx.add_enc(out.get(key, 0), ctx.mul_enc(c1, c2))
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def biv_neg(ctx, a):
    return {k: ctx.neg_enc(c) for k, c in a.items()}


def biv_pow(ctx, a, k):
    out = {(0, 0): 1}
    for _ in range(k):
        out = biv_mul(ctx, out, a)
    return out


def biv_div_exact(ctx, f, d):
    """Exact division in GF[u, v]; raises if the division is not exact."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    f = dict(f)
    dl = max(d)  # lex-leading exponent pair
    dc = d[dl]
    dc_inv = ctx.inv_enc(dc)
    quotient = {}
    while f:
        fl = max(f)
        if fl[0] < dl[0] or fl[1] < dl[1]:
            raise ArithmeticError("inexact bivariate division")
        qe = (fl[0] - dl[0], fl[1] - dl[1])
        qc = ctx.mul_enc(f[fl], dc_inv)
        quotient[qe] = qc
        f = biv_add(ctx, f, biv_neg(ctx, biv_mul(ctx, {qe: qc}, d)))
    return quotient


# --- polynomials in x with bivariate coefficients ------------------------------

def xdeg(poly):
    return len(poly) - 1


def xtrim(poly):
    poly = list(poly)
    while poly and not poly[-1]:
        poly.pop()
    return poly


def xscale(ctx, poly, biv):
    return xtrim([biv_mul(ctx, c, biv) for c in poly])


def xsub(ctx, a, b):
    out = []
    for idx in range(max(len(a), len(b))):
        ca = a[idx] if idx < len(a) else {}
        cb = b[idx] if idx < len(b) else {}
        out.append(biv_add(ctx, ca, biv_neg(ctx, cb)))
    return xtrim(out)


def xshift(poly, k):
    return [{}] * k + list(poly)


def prem(ctx, a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = xdeg(a), xdeg(b)
    assert db <= da
    lb = b[-1]
    r = list(a)
    steps = 0
    while r and xdeg(r) >= db:
        lr = r[-1]
        r = xsub(ctx, xscale(ctx, r, lb), xscale(ctx, xshift(b, xdeg(r) - db), lr))
        steps += 1
        if not r:
            break
    for _ in range(da - db + 1 - steps):
        r = xscale(ctx, r, lb)
    return r


def subresultant_resultant(ctx, a, b):
    """Resultant of two x-polynomials over GF[u, v], up to sign.

    Classic subresultant PRS; all interior divisions are exact in the
    coefficient ring.  Signs are irrelevant here (characteristic 2 use)."""
    a = xtrim(a)
    b = xtrim(b)
    if not a or not b:
        return {}
    if xdeg(a) < xdeg(b):
        a, b = b, a
    g = {(0, 0): 1}
    h = {(0, 0): 1}
    while xdeg(b) > 0:
        delta = xdeg(a) - xdeg(b)
        r = prem(ctx, a, b)
        if not r:
            return {}
        a = b
        divisor = biv_mul(ctx, g, biv_pow(ctx, h, delta))
        b = xtrim([biv_div_exact(ctx, c, divisor) if c else {} for c in r])
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = biv_div_exact(ctx, biv_pow(ctx, g, delta), biv_pow(ctx, h, delta - 1))
    if not b:
        return {}
    d = xdeg(a)
    num = biv_pow(ctx, b[0], d)
    if d >= 1:
        return biv_div_exact(ctx, num, biv_pow(ctx, h, d - 1))
    return num


# --- the oracle driver ------------------------------------------------------------

def oracle_model_q2_m3():
    """Normalized homogeneous degree-9 coefficients over GF(4), by resultants."""
    ctx = build_field(2, 2)
    q, m = 2, 3

    # witness powers reduced with the oracle's own rewriting
    t1 = {(0, 4): 1, (0, 1): 1}  # y^4 + y
    d_terms = own_reduce(ctx, poly_pow_xy(ctx, t1, m), q)
    d_coeffs = to_univariate(d_terms)
    assert len(d_coeffs) - 1 == 8

    # t2 = (y^4 x + y x^4) / x^5; numerator cubed must again be univariate in x
    num2 = own_reduce(ctx, {(1, 4): 1, (4, 1): 1}, q)
    n_terms = own_reduce(ctx, poly_pow_xy(ctx, num2, m), q)
    n_coeffs = to_univariate(n_terms)
    den_pow = 5 * m  # (x^5)^3
    # reduce the fraction x^15 / N(x) by the common power of x
    val = next(i for i, c in enumerate(n_coeffs) if c)
    assert val <= den_pow
    e_coeffs = n_coeffs[val:]
    x_pow = den_pow - val

    # A = u D(x) - 1, B = v E(x) - x^{x_pow}
    a_poly = [{(1, 0): c} if c else {} for c in d_coeffs]
    a_poly[0] = biv_add(ctx, a_poly[0], {(0, 0): ctx.neg_enc(1)})
    b_poly = [{(0, 1): c} if c else {} for c in e_coeffs]
    while len(b_poly) <= x_pow:
        b_poly.append({})
    b_poly[x_pow] = biv_add(ctx, b_poly[x_pow], {(0, 0): ctx.neg_enc(1)})

    res = subresultant_resultant(ctx, a_poly, b_poly)
    assert res, "vanishing resultant"
    degree = q ** 3 + 1
    assert max(i + j for (i, j) in res) == degree

    # homogenize to degree 9 and normalize the lex-greatest monomial to 1
    terms = {(i, j, degree - i - j): c for (i, j), c in res.items()}
    lead = max(terms)
    inv = ctx.inv_enc(terms[lead])
    return {k: ctx.mul_enc(inv, c) for k, c in terms.items()}


def oracle_parametrization_q2_m3():
    """The univariate data (D, E, x_pow) the oracle eliminates against."""
    ctx = build_field(2, 2)
    d_coeffs = to_univariate(own_reduce(ctx, poly_pow_xy(ctx, {(0, 4): 1, (0, 1): 1}, 3), 2))
    num2 = own_reduce(ctx, {(1, 4): 1, (4, 1): 1}, 2)
    n_coeffs = to_univariate(own_reduce(ctx, poly_pow_xy(ctx, num2, 3), 2))
    val = next(i for i, c in enumerate(n_coeffs) if c)
    return d_coeffs, n_coeffs[val:], 15 - val
