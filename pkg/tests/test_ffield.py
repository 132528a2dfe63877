"""Field-arithmetic tests, anchored on brute-force oracles that are
independent of the implementation under test."""

import random

import pytest

from gpk.ffield import (
    FieldError,
    build_field,
    frobenius,
    hermitian_pair_check,
    solve_additive,
)


# --- independent oracle: polynomial arithmetic over GF(p) on plain lists ----

def poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return out


def poly_rem(a, b, p):
    a = list(a)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        c = (a[-1] * pow(b[-1], p - 2, p)) % p
        off = len(a) - len(b)
        for i, bi in enumerate(b):
            a[off + i] = (a[off + i] - c * bi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def monic_polys(p, d):
    for enc in range(p ** d):
        coeffs = []
        e = enc
        for _ in range(d):
            coeffs.append(e % p)
            e //= p
        yield coeffs + [1]


def irreducible_scan(p, n):
    """All monic irreducible degree-n polys over GF(p), little-endian lex order."""
    found = []
    for cand in monic_polys(p, n):
        if cand[0] == 0:
            continue
        if all(poly_rem(cand, d, p) for k in range(1, n // 2 + 1) for d in monic_polys(p, k)):
            found.append(cand)
    return found


# --- modulus choice ----------------------------------------------------------

def test_prime_field_modulus_is_x():
    ctx = build_field(2, 1)
    assert ctx.modulus == (0, 1)
    assert ctx.order == 2


def test_gf4_modulus_matches_scan():
    ctx = build_field(2, 2)
    assert list(ctx.modulus) == [1, 1, 1]  # x^2 + x + 1
    assert list(ctx.modulus) == irreducible_scan(2, 2)[0]


def test_gf81_modulus_matches_scan():
    ctx = build_field(3, 4)
    assert list(ctx.modulus) == irreducible_scan(3, 4)[0]


@pytest.mark.parametrize("p,n", [(2, 3), (2, 4), (3, 2), (5, 2)])
def test_modulus_is_first_irreducible(p, n):
    assert list(build_field(p, n).modulus) == irreducible_scan(p, n)[0]


def test_build_field_is_deterministic_and_cached():
    a = build_field(3, 2)
    b = build_field(3, 2)
    assert a is b
    assert a.modulus == b.modulus


def test_build_field_rejects_bad_input():
    with pytest.raises(FieldError):
        build_field(4, 2)
    with pytest.raises(FieldError):
        build_field(2, 30)
    with pytest.raises(FieldError):
        build_field(2, 0)


# --- arithmetic --------------------------------------------------------------

def test_gf4_multiplication_table():
    ctx = build_field(2, 2)
    w = ctx.el(2)  # the class of x
    w1 = ctx.el(3)  # x + 1
    assert w * w == w1
    assert w * w1 == ctx.one
    assert w1 * w1 == w


def test_inverse_axiom_exhaustive_small_fields():
    for p, n in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]:
        ctx = build_field(p, n)
        for x in ctx.elements():
            if x:
                assert x * x.inverse() == ctx.one


def test_field_axioms_exhaustive_up_to_256():
    for p, n in [(2, 2), (3, 2), (2, 4)]:
        ctx = build_field(p, n)
        els = list(ctx.elements())
        for a in els:
            for b in els:
                assert a + b == b + a
                assert a * b == b * a
                for c in els[:: max(1, len(els) // 7)]:
                    assert (a + b) + c == a + (b + c)
                    assert (a * b) * c == a * (b * c)
                    assert a * (b + c) == a * b + a * c


def test_field_axioms_sampled_large():
    ctx = build_field(2, 10)
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (ctx.el(rng.randrange(ctx.order)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * a.inverse() == ctx.one


def test_gf9_generator_order_eight():
    ctx = build_field(3, 2)
    g = ctx.smallest_primitive()
    # exhaustive order check
    seen = set()
    cur = g
    for _ in range(8):
        seen.add(cur.v)
        cur = cur * g
    assert len(seen) == 8
    assert g ** 8 == ctx.one
    assert all(g ** k != ctx.one for k in range(1, 8))


def test_pow_square_and_multiply_vs_repeated():
    ctx = build_field(3, 2)
    for x in ctx.elements():
        if not x:
            assert x ** 0 == ctx.one
            assert all((x ** k).v == 0 for k in range(1, 5))
            continue
        acc = ctx.one
        for k in range(10):
            assert x ** k == acc
            acc = acc * x
        assert x ** (-1) == x.inverse()


def test_ctx_mismatch_and_zero_inverse_errors():
    a = build_field(2, 2).one
    b = build_field(3, 1).one
    with pytest.raises(FieldError):
        a + b  # noqa: B018
    with pytest.raises(FieldError):
        build_field(2, 2).zero.inverse()


# --- frobenius ---------------------------------------------------------------

def test_frobenius_squares_in_gf4():
    ctx = build_field(2, 2)
    w = ctx.el(2)
    assert frobenius(w, 1) == ctx.el(3)  # w^2 = w + 1


def test_frobenius_closes_orbit_on_tower_levels():
    for p, e, k in [(2, 1, 1), (2, 1, 2), (3, 1, 1), (2, 2, 1)]:
        ctx = build_field(p, 2 * e * k)
        for x in ctx.elements():
            assert frobenius(x, 2 * e * k) == x


def test_frobenius_is_additive_and_multiplicative():
    ctx = build_field(3, 2)
    for x in ctx.elements():
        for y in ctx.elements():
            assert frobenius(x + y, 1) == frobenius(x, 1) + frobenius(y, 1)
            assert frobenius(x * y, 1) == frobenius(x, 1) * frobenius(y, 1)


# --- hermitian pairs ---------------------------------------------------------

def test_pair_zero_zero():
    ctx = build_field(2, 2)
    assert hermitian_pair_check(ctx.zero, ctx.zero)


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1)])
def test_pair_counts_by_enumeration(p, e):
    q = p ** e
    ctx = build_field(p, 2 * e)
    per_a = {}
    total = 0
    for a in ctx.elements():
        cnt = sum(1 for b in ctx.elements() if hermitian_pair_check(a, b))
        per_a[a.v] = cnt
        total += cnt
    assert all(cnt == q for cnt in per_a.values())
    assert total == q ** 3


# --- additive solver ---------------------------------------------------------

def test_solve_additive_kernel_gf4():
    ctx = build_field(2, 2)
    sols = solve_additive(ctx.zero)
    assert sorted(s.v for s in sols) == [0, 1]


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2)])
def test_solve_additive_solution_counts(p, e):
    q = p ** e
    ctx = build_field(p, 2 * e)
    image = set()
    for c in ctx.elements():
        sols = solve_additive(c)
        assert len(sols) in (0, q)
        for s in sols:
            assert s ** q + s == c
        if sols:
            image.add(c.v)
    assert len(image) == q  # image of x -> x^q + x has size exactly q


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1)])
def test_solve_additive_norm_values_stay_in_base(p, e):
    # solving x^q + x = y^(q+1) inside GF(q^4) only ever lands in GF(q^2)
    q = p ** e
    small = build_field(p, 2 * e)
    big = build_field(p, 4 * e)
    emb = small.embedding_into(big)
    in_image = {emb.map(x).v for x in small.elements()}
    for y in small.elements():
        c = emb.map(y ** (q + 1))
        for s in solve_additive(c, big, q=q):
            assert s.v in in_image


# --- tower embeddings --------------------------------------------------------

@pytest.mark.parametrize("p,e", [(2, 1), (3, 1)])
def test_embedding_is_injective_ring_hom(p, e):
    small = build_field(p, 2 * e)
    big = build_field(p, 4 * e)
    emb = small.embedding_into(big)
    images = set()
    for x in small.elements():
        images.add(emb.map(x).v)
        for y in small.elements():
            assert emb.map(x + y) == emb.map(x) + emb.map(y)
            assert emb.map(x * y) == emb.map(x) * emb.map(y)
    assert len(images) == small.order
    assert emb.map(small.one) == big.one
    # section inverts the embedding
    for x in small.elements():
        assert emb.section(emb.map(x)) == x


def test_serialization_shapes():
    ctx = build_field(2, 2)
    assert ctx.describe() == {"p": 2, "n": 2, "modulus": [1, 1, 1]}
    assert ctx.el(2).coeffs() == [0, 1]
    assert ctx.el(2).digit_string() == "01"
