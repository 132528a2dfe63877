"""Arithmetic in GF(p^n) with a deterministic polynomial-basis representation.

A field is described by a :class:`FieldCtx` holding the characteristic p,
the absolute degree n and the reduction modulus, which is always the
lexicographically smallest monic irreducible polynomial of degree n over
GF(p) (coefficients compared little-endian, so the choice is reproducible
bit for bit across runs).  Elements are coefficient vectors over GF(p),
packed into a single integer in little-endian base p; that integer is also
the canonical "encoding order" used everywhere ordering matters.

Tower levels GF(q^2) inside GF(q^{2k}) are glued by mapping the generator
of the small field to the smallest root (in encoding order) of the small
modulus inside the big field.
"""

from __future__ import annotations

import functools

_DEGREE_CAP = 24
_TABLE_LIMIT = 1 << 16  # exp/log tables only below this field size


class FieldError(ValueError):
    """Raised for invalid field constructions or operations."""


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)

def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return _poly_trim(a)


def _poly_is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    if poly[0] == 0:  # divisible by x
        return False
    for d in range(1, deg // 2 + 1):
        for enc in range(p ** d):
            div = _decode(enc, p, d) + (1,)
            # long division remainder check
            if not _poly_mod(poly, div, p):
                return False
    return True


def _decode(enc, p, n):
    digits = []
    for _ in range(n):
        digits.append(enc % p)
        enc //= p
    return tuple(digits)


def _encode(digits, p):
    v = 0
    for d in reversed(digits):
        v = v * p + d
    return v


def _smallest_irreducible(p, n):
    if n == 1:
        return (0, 1)  # x itself: GF(p) with the trivial relation
    for enc in range(p ** n):
        cand = _decode(enc, p, n) + (1,)
        if _poly_is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial found for p={p}, n={n}")


class FieldCtx:
    """Immutable context for GF(p^n); all element ops are pure functions.

    Construct through :func:`build_field`, which caches contexts so that
    identical (p, n) always share the same object and modulus.
    """

    def __init__(self, p, n, _token=None):
        if _token is not _BUILD_TOKEN:
            raise FieldError("use build_field(p, n) to construct field contexts")
        self.p = p
        self.n = n
        self.order = p ** n
        self.modulus = _smallest_irreducible(p, n)
        self._xpow = self._reduction_table()
        self._exp = self._log = None
        if self.order <= _TABLE_LIMIT:
            self._exp, self._log = self._build_tables()
        self._embeddings = {}

    # -- construction helpers -------------------------------------------------

    def _reduction_table(self):
        """x^k mod modulus for k up to 2(n-1), as encoded ints."""
        p, n = self.p, self.n
        table = []
        cur = [0] * n
        cur[0] = 1
        for _ in range(2 * n - 1):
            table.append(_encode(cur, p))
            cur = [0] + cur  # multiply by x
            if len(cur) > n:
                lead = cur.pop()
                if lead:
                    for i in range(n):
                        cur[i] = (cur[i] - lead * self.modulus[i]) % p
        return table

    def _build_tables(self):
        g = self._find_primitive_raw()
        exp = [1]
        cur = 1
        for _ in range(self.order - 2):
            cur = self._mul_raw(cur, g)
            exp.append(cur)
        log = [0] * self.order
        for i, v in enumerate(exp):
            log[v] = i
        return exp, log

    def _find_primitive_raw(self):
        m = self.order - 1
        fac = []
        x = m
        d = 2
        while d * d <= x:
            if x % d == 0:
                fac.append(d)
                while x % d == 0:
                    x //= d
            d += 1
        if x > 1:
            fac.append(x)
        for cand in range(1, self.order):
            if all(self._pow_raw(cand, m // f) != 1 for f in fac):
                return cand
        raise FieldError("no primitive element found")

    # -- raw ops on integer encodings -----------------------------------------

    def _mul_raw(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._log is not None and self._exp is not None and len(self._exp) == self.order - 1:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        p, n = self.p, self.n
        da = _decode(a, p, n)
        db = _decode(b, p, n)
        acc = [0] * (2 * n - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    if bj:
                        acc[i + j] = (acc[i + j] + ai * bj) % p
        out = 0
        for k, c in enumerate(acc):
            if c:
                out = self.add_enc(out, self._scale_enc(self._xpow[k], c))
        return out

    def _scale_enc(self, a, c):
        if self.p == 2:
            return a if c else 0
        digits = _decode(a, self.p, self.n)
        return _encode(tuple((d * c) % self.p for d in digits), self.p)

    def add_enc(self, a, b):
        if self.p == 2:
            return a ^ b
        da = _decode(a, self.p, self.n)
        db = _decode(b, self.p, self.n)
        return _encode(tuple((x + y) % self.p for x, y in zip(da, db)), self.p)

    def neg_enc(self, a):
        if self.p == 2:
            return a
        digits = _decode(a, self.p, self.n)
        return _encode(tuple((-d) % self.p for d in digits), self.p)

    def mul_enc(self, a, b):
        return self._mul_raw(a, b)

    def inv_enc(self, a):
        if a == 0:
            raise FieldError("inversion of zero")
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self._pow_raw(a, self.order - 2)

    def _pow_raw(self, a, k):
        if k == 0:
            return 1
        if a == 0:
            return 0
        k %= self.order - 1
        if self._log is not None and len(self._exp) == self.order - 1:
            return self._exp[(self._log[a] * k) % (self.order - 1)]
        result = 1
        base = a
        while k:
            if k & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            k >>= 1
        return result

    def pow_enc(self, a, k):
        if k < 0:
            return self._pow_raw(self.inv_enc(a), -k)
        return self._pow_raw(a, k)

    # -- public element API ----------------------------------------------------

    def el(self, value):
        """Element from its integer encoding (0 <= value < order)."""
        if not 0 <= value < self.order:
            raise FieldError(f"encoding {value} out of range for field of order {self.order}")
        return FFElem(self, value)

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            raise FieldError("coefficient vector longer than field degree")
        coeffs += [0] * (self.n - len(coeffs))
        return FFElem(self, _encode(tuple(c % self.p for c in coeffs), self.p))

    def from_int(self, c):
        """Image of the integer c under the prime-field embedding."""
        return self.from_coeffs([c % self.p])

    @property
    def zero(self):
        return FFElem(self, 0)

    @property
    def one(self):
        return FFElem(self, 1)

    @property
    def gen(self):
        """The class of x, i.e. encoding p (zero in degree 1 only)."""
        if self.n == 1:
            return self.one
        return FFElem(self, self.p)

    def elements(self):
        for v in range(self.order):
            yield FFElem(self, v)

    @functools.lru_cache(maxsize=None)
    def smallest_primitive(self):
        """Smallest generator of the multiplicative group, in encoding order."""
        m = self.order - 1
        for cand in sorted(range(1, self.order)):
            k, cur = 1, cand
            while cur != 1:
                cur = self._mul_raw(cur, cand)
                k += 1
            if k == m:
                return FFElem(self, cand)
        raise FieldError("no primitive element")

    def describe(self):
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    def embedding_into(self, big):
        """Ring embedding of this field into a larger tower level."""
        if big is self:
            return _IdentityEmbedding(self)
        key = (big.p, big.n)
        if key not in self._embeddings:
            self._embeddings[key] = FieldEmbedding(self, big)
        return self._embeddings[key]

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (build_field, (self.p, self.n))


_BUILD_TOKEN = object()
_CTX_CACHE = {}


def build_field(p, n, cap=_DEGREE_CAP):
    """Deterministic context for GF(p^n); repeated calls share the object."""
    if not _is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if not 1 <= n <= cap:
        raise FieldError(f"extension degree {n} outside 1..{cap}")
    key = (p, n)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = FieldCtx(p, n, _token=_BUILD_TOKEN)
    return _CTX_CACHE[key]


class _IdentityEmbedding:
    def __init__(self, ctx):
        self.small = ctx
        self.big = ctx

    def map(self, x):
        return x

    def section(self, x):
        return x


class FieldEmbedding:
    """GF(p^m) -> GF(p^n) for m | n, sending x to the smallest root of the
    small modulus (smallest in encoding order, hence deterministic)."""

    def __init__(self, small, big):
        if small.p != big.p or big.n % small.n != 0:
            raise FieldError(f"no tower embedding {small!r} -> {big!r}")
        if big.order > _TABLE_LIMIT:
            raise FieldError("embedding target too large to enumerate roots")
        self.small = small
        self.big = big
        root = None
        for cand in range(big.order):
            acc = 0
            xp = 1
            for c in small.modulus:
                if c:
                    acc = big.add_enc(acc, big._scale_enc(xp, c))
                xp = big.mul_enc(xp, cand)
            if acc == 0:
                root = cand
                break
        if root is None:
            raise FieldError("modulus has no root in target field")
        self._fwd = {}
        for v in range(small.order):
            digits = _decode(v, small.p, small.n)
            acc = 0
            xp = 1
            for d in digits:
                if d:
                    acc = big.add_enc(acc, big._scale_enc(xp, d))
                xp = big.mul_enc(xp, root)
            self._fwd[v] = acc
        self._bwd = {v: k for k, v in self._fwd.items()}

    def map(self, x):
        if x.ctx is not self.small:
            raise FieldError("element not in the embedding's source field")
        return FFElem(self.big, self._fwd[x.v])

    def section(self, x):
        """Preimage in the small field, or None if x is not in the image."""
        if x.ctx is not self.big:
            raise FieldError("element not in the embedding's target field")
        enc = self._bwd.get(x.v)
        return None if enc is None else FFElem(self.small, enc)


class FFElem:
    """Element of GF(p^n): a context reference plus its integer encoding."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx, v):
        self.ctx = ctx
        self.v = v

    def coeffs(self):
        return list(_decode(self.v, self.ctx.p, self.ctx.n))

    def digit_string(self):
        """Little-endian decimal digit string, the I/O literal form."""
        return "".join(str(d) for d in self.coeffs())

    def _check(self, other):
        if not isinstance(other, FFElem):
            raise TypeError(f"cannot combine FFElem with {type(other).__name__}")
        if other.ctx is not self.ctx:
            raise FieldError("field context mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FFElem(self.ctx, self.ctx.add_enc(self.v, other.v))

    def __sub__(self, other):
        other = self._check(other)
        return FFElem(self.ctx, self.ctx.add_enc(self.v, self.ctx.neg_enc(other.v)))

    def __neg__(self):
        return FFElem(self.ctx, self.ctx.neg_enc(self.v))

    def __mul__(self, other):
        other = self._check(other)
        return FFElem(self.ctx, self.ctx.mul_enc(self.v, other.v))

    def __truediv__(self, other):
        other = self._check(other)
        return FFElem(self.ctx, self.ctx.mul_enc(self.v, self.ctx.inv_enc(other.v)))

    def __pow__(self, k):
        return FFElem(self.ctx, self.ctx.pow_enc(self.v, k))

    def inverse(self):
        return FFElem(self.ctx, self.ctx.inv_enc(self.v))

    def __eq__(self, other):
        return isinstance(other, FFElem) and other.ctx is self.ctx and other.v == self.v

    def __hash__(self):
        return hash((id(self.ctx), self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"FF({self.v}@{self.ctx!r})"


def frobenius(x, r):
    """x^(p^r); a field automorphism fixing GF(p)."""
    if r < 0:
        raise FieldError("frobenius power index must be nonnegative")
    return x ** (x.ctx.p ** r)


def _q_for_ctx(ctx, q):
    if q is None:
        if ctx.n % 2 != 0:
            raise FieldError("cannot infer q: field degree is odd")
        q = ctx.p ** (ctx.n // 2)
    e = 0
    t = q
    while t % ctx.p == 0 and t > 1:
        t //= ctx.p
        e += 1
    if t != 1 or e == 0 or ctx.n % e != 0:
        raise FieldError(f"q={q} is not a power of p={ctx.p} compatible with the field")
    return q


def hermitian_pair_check(a, b, q=None):
    """True iff b^q + b = a^(q+1) in GF(q^2) (or any level containing it)."""
    if a.ctx is not b.ctx:
        raise FieldError("field context mismatch")
    q = _q_for_ctx(a.ctx, q)
    return (b ** q + b) == a ** (q + 1)


_ADDITIVE_MEMO = {}


def _additive_system(ctx, q):
    """RREF data for the GF(p)-linear map x -> x^q + x, cached per field."""
    key = (id(ctx), q)
    hit = _ADDITIVE_MEMO.get(key)
    if hit is not None:
        return hit
    p, n = ctx.p, ctx.n
    cols = []
    for i in range(n):
        basis = ctx.el(_encode(tuple(1 if j == i else 0 for j in range(n)), p))
        img = basis ** q + basis
        cols.append(img.coeffs())
    mat = [[cols[i][r] for i in range(n)] for r in range(n)]
    # RREF with a recorded transform T so that per-rhs solves are O(n^2)
    aug = [list(mat[r]) + [1 if i == r else 0 for i in range(n)] for r in range(n)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if aug[r][col] % p), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = pow(aug[row][col], p - 2, p)
        aug[row] = [(x * inv) % p for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] % p:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    reduced = [aug[r][:n] for r in range(n)]
    transform = [aug[r][n:] for r in range(n)]
    kernel = []
    free = [c for c in range(n) if c not in pivots]
    for fcol in free:
        vec = [0] * n
        vec[fcol] = 1
        for r, col in enumerate(pivots):
            vec[col] = (-reduced[r][fcol]) % p
        kernel.append(vec)
    combos = [[0] * n]
    for kv in kernel:
        combos = [
            [(x + t * k) % p for x, k in zip(cb, kv)]
            for cb in combos
            for t in range(p)
        ]
    data = (pivots, transform, combos)
    _ADDITIVE_MEMO[key] = data
    return data


def solve_additive(c, field=None, q=None):
    """All x in the field with x^q + x = c.

    The map x -> x^q + x is GF(p)-linear, so this is one linear solve over
    GF(p) in the polynomial basis.  Returns exactly q solutions when c lies
    in the image of the map and the empty list otherwise, in encoding order.
    """
    ctx = field if field is not None else c.ctx
    if c.ctx is not ctx:
        raise FieldError("element does not belong to the given field")
    q = _q_for_ctx(ctx, q)
    p, n = ctx.p, ctx.n
    pivots, transform, kernel_coset = _additive_system(ctx, q)
    rhs = c.coeffs()
    reduced_rhs = [sum(t * r for t, r in zip(row, rhs)) % p for row in transform]
    for r in range(len(pivots), n):
        if reduced_rhs[r]:
            return []
    sol = [0] * n
    for r, col in enumerate(pivots):
        sol[col] = reduced_rhs[r]
    out = sorted(
        _encode(tuple((s + k) % p for s, k in zip(sol, shift)), p)
        for shift in kernel_coset
    )
    return [ctx.el(v) for v in out]


