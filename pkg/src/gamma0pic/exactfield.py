"""Exact arithmetic in prime fields F_p and extension fields F_{p^k}.

Elements of F_p are stored as an int in [0, p); elements of F_{p^k} as a
tuple of k ints, the coefficients (low degree first) of a polynomial in the
generator modulo the field's irreducible modulus.  Univariate polynomials
over a field are plain lists of elements, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).

All field objects are immutable and cached, so ``GF(p, k)`` always returns
the same representation of F_{p^k}.
"""

from __future__ import annotations

import functools
import itertools
import math
import os

import numpy as np

__all__ = [
    "ZeroInverse",
    "FieldElement",
    "FiniteField",
    "PrimeField",
    "ExtField",
    "GF",
    "inv",
    "roots_of_unity",
    "poly_roots",
    "poly_roots_exhaustive",
    "poly_eval",
    "is_irreducible",
    "find_irreducible",
    "max_field_size",
]

DEFAULT_MAX_FIELD = 10**6


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting the zero element."""


def max_field_size() -> int:
    """Enumeration cap, overridable through ``GAMMA0_MAX_FIELD``."""
    return int(os.environ.get("GAMMA0_MAX_FIELD", DEFAULT_MAX_FIELD))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


class FieldElement:
    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, c):
        self.field = field
        self.c = c

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise TypeError(f"cannot mix elements of {self.field} and {other.field}")
            return other.c
        if isinstance(other, int):
            return self.field._from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._add(self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._sub(self.c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._sub(o, self.c))

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(self.c, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(self.c, self.field._inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(o, self.field._inv(self.c)))

    def __pow__(self, n: int):
        if n < 0:
            return FieldElement(self.field, self.field._pow(self.field._inv(self.c), -n))
        return FieldElement(self.field, self.field._pow(self.c, n))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field._inv(self.c))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.c == other.c and (self.field is other.field or self.field == other.field)
        if isinstance(other, int):
            return self.c == self.field._from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.c))

    def __bool__(self):
        return self.c != self.field._zero

    def key(self) -> tuple[int, ...]:
        """Coefficient vector, lowest degree first; the sort key."""
        return self.field._vector(self.c)

    def __lt__(self, other: FieldElement):
        return self.key() < other.key()

    def is_square(self) -> bool:
        if not self:
            return True
        return self ** ((self.field.order - 1) // 2) == 1

    def multiplicative_order(self) -> int:
        if not self:
            raise ZeroInverse("zero has no multiplicative order")
        n = self.field.order - 1
        order = n
        for r in _prime_factors(n):
            while order % r == 0 and self ** (order // r) == 1:
                order //= r
        return order

    def __repr__(self):
        return f"{self.field.short_name()}({self})"

    def __str__(self):
        vec = self.key()
        if len(vec) == 1:
            return str(vec[0])
        terms = []
        for i, a in enumerate(vec):
            if a == 0:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if not mono:
                terms.append(str(a))
            elif a == 1:
                terms.append(mono)
            else:
                terms.append(f"{a}*{mono}")
        return " + ".join(reversed(terms)) if terms else "0"


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """Common surface of :class:`PrimeField` and :class:`ExtField`."""

    p: int
    k: int
    order: int
    _zero: object
    _one: object

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise TypeError(f"{value!r} is not an element of {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, self._from_int(value))
        return FieldElement(self, self._from_vector(value))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, self._zero)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, self._one)

    def elements(self):
        """All elements in coefficient-vector lexicographic order."""
        if self.order > max_field_size():
            raise ValueError(f"{self} has {self.order} elements, above the enumeration cap")
        for vec in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, self._from_vector(vec))

    def units(self):
        return (a for a in self.elements() if a)

    def short_name(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    def __str__(self):
        return self.short_name()

    def __repr__(self):
        return self.short_name()

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def contains_roots_of_unity(self, n: int) -> bool:
        return (self.order - 1) % n == 0

    # hooks
    def _from_int(self, n: int): ...
    def _from_vector(self, vec): ...
    def _vector(self, c) -> tuple[int, ...]: ...


class PrimeField(FiniteField):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p in (2, 3):
            raise ValueError("characteristic 2 and 3 are not supported")
        self.p = p
        self.k = 1
        self.order = p
        self.modulus = (0, 1)
        self.base = self
        self._zero = 0
        self._one = 1

    def _from_int(self, n):
        return n % self.p

    def _from_vector(self, vec):
        vec = tuple(vec)
        if len(vec) != 1:
            raise ValueError(f"expected a length-1 vector for {self}")
        return vec[0] % self.p

    def _vector(self, c):
        return (c,)

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _pow(self, a, n):
        return pow(a, n, self.p)

    def _inv(self, a):
        if a == 0:
            raise ZeroInverse("inverse of zero")
        return pow(a, -1, self.p)


class ExtField(FiniteField):
    """F_{p^k} = F_p[a]/(modulus), modulus monic irreducible of degree k."""

    def __init__(self, p: int, k: int, modulus=None):
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        self.base = GF(p)
        self.p = p
        self.k = k
        self.order = p**k
        if modulus is None:
            modulus = find_irreducible(p, k)
        modulus = tuple(m % p for m in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible([self.base(m) for m in modulus]):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = modulus
        # a^(k+i) as a vector, for i = 0 .. k-2
        red = []
        cur = [(-m) % p for m in modulus[:-1]]
        for _ in range(k - 1):
            red.append(tuple(cur))
            lead = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - lead * m) % p for c, m in zip(cur, modulus[:-1])]
        self._reduction = red
        self._zero = (0,) * k
        self._one = (1,) + (0,) * (k - 1)

    def gen(self) -> FieldElement:
        """The class of the indeterminate, a root of ``modulus``."""
        if self.k == 1:
            return FieldElement(self, ((-self.modulus[0]) % self.p,))
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def _from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def _from_vector(self, vec):
        vec = tuple(v % self.p for v in vec)
        if len(vec) != self.k:
            raise ValueError(f"expected a length-{self.k} vector for {self}")
        return vec

    def _vector(self, c):
        return c

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _mul(self, a, b):
        k, p = self.k, self.p
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        out = prod[:k]
        for i, coef in enumerate(prod[k:]):
            if coef:
                for j, r in enumerate(self._reduction[i]):
                    out[j] += coef * r
        return tuple(x % p for x in out)

    def _pow(self, a, n):
        result = self._one
        base = a
        while n:
            if n & 1:
                result = self._mul(result, base)
            n >>= 1
            if n:
                base = self._mul(base, base)
        return result

    def _inv(self, a):
        if a == self._zero:
            raise ZeroInverse("inverse of zero")
        # extended Euclid in F_p[t] on (a, modulus), polynomials as int lists
        p = self.p
        r0, r1 = list(self.modulus), _int_trim(list(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _int_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _int_sub(s0, _int_mul(q, s1, p), p)
        c = pow(r1[0], -1, p)
        out = [x * c % p for x in s1] + [0] * self.k
        return tuple(out[: self.k])

    def short_name(self):
        return f"GF({self.p}^{self.k})"

    def frobenius(self, a: FieldElement) -> FieldElement:
        return a**self.p


def _int_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _int_sub(f, g, p):
    n = max(len(f), len(g))
    f = f + [0] * (n - len(f))
    g = g + [0] * (n - len(g))
    return _int_trim([(x - y) % p for x, y in zip(f, g)])


def _int_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] += x * y
    return _int_trim([x % p for x in out])


def _int_divmod(f, g, p):
    f = list(f)
    inv_lead = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    for i in range(len(f) - len(g), -1, -1):
        c = f[i + len(g) - 1] * inv_lead % p
        q[i] = c
        if c:
            for j, y in enumerate(g):
                f[i + j] = (f[i + j] - c * y) % p
    return _int_trim(q), _int_trim(f[: len(g) - 1])


@functools.cache
def GF(p: int, k: int = 1) -> FiniteField:
    """Cached field of order p^k with the deterministic default modulus."""
    if k == 1:
        return PrimeField(p)
    return ExtField(p, k)


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


# ---------------------------------------------------------------------------
# univariate polynomials over a field, lists of elements, lowest degree first


def _trim(f):
    while f and not f[-1]:
        f.pop()
    return f


def poly_eval(f, x: FieldElement) -> FieldElement:
    acc = x.field.zero
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _poly_sub(f, g):
    n = max(len(f), len(g))
    zero = (f or g)[0].field.zero
    out = [(f[i] if i < len(f) else zero) - (g[i] if i < len(g) else zero) for i in range(n)]
    return _trim(out)


def _poly_mul(f, g):
    if not f or not g:
        return []
    zero = f[0].field.zero
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return _trim(out)


def _poly_divmod(f, g):
    if not g:
        raise ZeroInverse("polynomial division by zero")
    f = list(f)
    field = g[0].field
    if len(f) < len(g):
        return [], f
    lead_inv = g[-1].inverse()
    q = [field.zero] * (len(f) - len(g) + 1)
    for i in range(len(f) - len(g), -1, -1):
        coef = f[i + len(g) - 1] * lead_inv
        q[i] = coef
        if coef:
            for j, b in enumerate(g):
                f[i + j] = f[i + j] - coef * b
    return _trim(q), _trim(f[: len(g) - 1])


def _poly_mod(f, g):
    return _poly_divmod(f, g)[1]


def _monic(f):
    lead_inv = f[-1].inverse()
    return [c * lead_inv for c in f]


def _poly_gcd(f, g):
    f, g = list(f), list(g)
    while g:
        f, g = g, _poly_mod(f, g)
    return _monic(f) if f else f


def _poly_powmod(f, n: int, m):
    if m[0].field.k > 1 and len(m) > 2 and m[-1] == 1:
        return _QuotientRing.of(tuple(m)).powmod(f, n)
    result = [m[0].field.one]
    base = _poly_mod(f, m)
    while n:
        if n & 1:
            result = _poly_mod(_poly_mul(result, base), m)
        n >>= 1
        if n:
            base = _poly_mod(_poly_mul(base, base), m)
    return result


class _QuotientRing:
    """F_{p^k}[x]/(g), g monic of degree d, as the F_p-algebra F_p^(d*k).

    An element is the int64 vector of its coefficients, index s*k + t for
    the monomial x^s a^t.  The product is one bilinear map: the outer
    product of the factors dotted with a precomputed table giving x^s a^t
    mod (modulus, g) for every s < 2d - 1, t < 2k - 1.
    """

    _cache: dict = {}

    @classmethod
    def of(cls, g):
        ring = cls._cache.get(g)
        if ring is None:
            if len(cls._cache) > 4096:
                cls._cache.clear()
            ring = cls._cache[g] = cls(list(g))
        return ring

    def __init__(self, g):
        F = g[0].field
        d, k, p = len(g) - 1, F.k, F.p
        self.F, self.d, self.k, self.p = F, d, k, p
        self.g = g
        # x^s mod g for s < 2d - 1
        xs = []
        cur = [F.one] + [F.zero] * (d - 1)
        for _ in range(2 * d - 1):
            xs.append(cur)
            lead = cur[-1]
            cur = [F.zero] + cur[:-1]
            if lead:
                cur = [c - lead * gc for c, gc in zip(cur, g[:-1])]
        gen = F.gen()
        apows = [F.one]
        for _ in range(2 * k - 2):
            apows.append(apows[-1] * gen)
        table = np.zeros(((2 * d - 1) * (2 * k - 1), d * k), dtype=np.int64)
        for s_, xpoly in enumerate(xs):
            for t, at in enumerate(apows):
                row = table[s_ * (2 * k - 1) + t]
                for i, c in enumerate(xpoly):
                    if c:
                        row[i * k : (i + 1) * k] = (c * at).key()
        idx = np.empty((d * k, d * k), dtype=np.int64)
        for i in range(d * k):
            s1, t1 = divmod(i, k)
            for j in range(d * k):
                s2, t2 = divmod(j, k)
                idx[i, j] = (s1 + s2) * (2 * k - 1) + t1 + t2
        self.table = table[idx.ravel()]

    def to_vec(self, f):
        v = np.zeros(self.d * self.k, dtype=np.int64)
        for i, c in enumerate(f):
            v[i * self.k : (i + 1) * self.k] = c.key()
        return v

    def from_vec(self, v):
        k = self.k
        return _trim([self.F(tuple(int(x) for x in v[i * k : (i + 1) * k])) for i in range(self.d)])

    def mul(self, a, b):
        return (np.outer(a, b).ravel() @ self.table) % self.p

    def powmod(self, f, n):
        base = self.to_vec(_poly_mod(f, self.g) if len(f) > self.d else f)
        result = self.to_vec([self.F.one])
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return self.from_vec(result)


def _x_pow_q_minus_x(f, q):
    field = f[0].field
    x = [field.zero, field.one]
    return _poly_sub(_poly_powmod(x, q, f), x)


def is_irreducible(f) -> bool:
    """Ben-Or test over the prime field: no factor of degree <= deg/2."""
    f = _trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    field = f[0].field
    f = _monic(f)
    x = [field.zero, field.one]
    h = x
    for _ in range(n // 2):
        h = _poly_powmod(h, field.order, f)
        if len(_poly_gcd(f, _poly_sub(h, x))) > 1:
            return False
    return True


@functools.cache
def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k in lexicographic coefficient order."""
    F = PrimeField(p)
    if k == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=k):
        coeffs = tail + (1,)
        if coeffs[0] == 0:
            continue
        if is_irreducible([F(c) for c in coeffs]):
            return coeffs
    raise AssertionError(f"no irreducible polynomial of degree {k} over GF({p})")


def _split_linear(g, field):
    """Roots of g, a monic product of distinct linear factors (Cantor-Zassenhaus).

    The splitting shifts are taken in field enumeration order, so the result
    does not depend on any random state.
    """
    if len(g) == 1:
        return []
    if len(g) == 2:
        return [-g[0]]
    e = (field.order - 1) // 2
    for t in _shift_sequence(field):
        h = _poly_powmod([t, field.one], e, g)
        d = _poly_gcd(g, _poly_sub(h, [field.one]))
        if 1 < len(d) < len(g):
            return _split_linear(d, field) + _split_linear(_poly_divmod(g, d)[0], field)
    raise AssertionError("root splitting did not terminate")


def _shift_sequence(field):
    n = 0
    while True:
        vec = []
        m = n
        for _ in range(field.k):
            vec.append(m % field.p)
            m //= field.p
        if m:
            return
        yield field(tuple(vec)) if field.k > 1 else field(vec[0])
        n += 1


def poly_roots(f) -> list[FieldElement]:
    """All roots of f in its coefficient field, repeated by multiplicity, sorted."""
    f = _trim(list(f))
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    field = f[0].field
    if len(f) == 1:
        return []
    f = _monic(f)
    g = _poly_gcd(f, _x_pow_q_minus_x(f, field.order)) if len(f) > 2 else f
    if not g or len(g) == 1:
        return []
    distinct = _split_linear(g, field)
    out = []
    for r in distinct:
        rest = f
        while True:
            q, rem = _poly_divmod(rest, [-r, field.one])
            if rem:
                break
            out.append(r)
            rest = q
    return sorted(out)


def poly_roots_exhaustive(f) -> list[FieldElement]:
    """Reference root finder by evaluation at every element (small fields only)."""
    f = _trim(list(f))
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    field = f[0].field
    out = []
    for x in field.elements():
        rest = f
        while len(rest) > 1 and not poly_eval(rest, x):
            out.append(x)
            rest = _poly_divmod(rest, [-x, field.one])[0]
    return sorted(out)


def roots_of_unity(F: FiniteField, n: int) -> list[FieldElement]:
    """{u in F^x : u^n = 1}, sorted."""
    if n < 1:
        raise ValueError("n must be positive")
    g = math.gcd(n, F.order - 1)
    # u^n = 1 iff u^gcd(n, q-1) = 1 in F^x
    poly = [-F.one] + [F.zero] * (g - 1) + [F.one]
    return sorted(set(poly_roots(poly)))


def sqrt(a: FieldElement) -> list[FieldElement]:
    """Square roots of a in its field (empty, one, or two), sorted.

    Tonelli-Shanks, with the least non-square in enumeration order as the
    auxiliary element.
    """
    F = a.field
    if not a:
        return [a]
    if not a.is_square():
        return []
    q = F.order
    s, odd = 0, q - 1
    while odd % 2 == 0:
        s, odd = s + 1, odd // 2
    z = next(t for t in _shift_sequence(F) if t and not t.is_square())
    m, c, t, r = s, z**odd, a**odd, a ** ((odd + 1) // 2)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2, i = t2 * t2, i + 1
        b = c ** (1 << (m - i - 1))
        m, c = i, b * b
        t, r = t * c, r * b
    return sorted({r, -r})


def factor_degrees(f) -> list[int]:
    """Degrees of the irreducible factors of squarefree monic f (distinct-degree)."""
    f = _monic(_trim(list(f)))
    field = f[0].field
    x = [field.zero, field.one]
    degrees = []
    h = x
    d = 0
    rest = f
    while len(rest) > 1:
        d += 1
        if 2 * d > len(rest) - 1:
            degrees.append(len(rest) - 1)
            break
        h = _poly_powmod(h, field.order, rest)
        g = _poly_gcd(rest, _poly_sub(h, x))
        if len(g) > 1:
            degrees.extend([d] * ((len(g) - 1) // d))
            rest = _poly_divmod(rest, g)[0]
            h = _poly_mod(h, rest) if len(rest) > 1 else h
    return sorted(degrees)


@functools.cache
def embedding(small: FiniteField, big: FiniteField):
    """A field homomorphism small -> big, as a function on elements.

    Requires both fields over the same prime and ``small.k`` dividing
    ``big.k``.  The image of the generator is the least root (in sort
    order) of small's modulus inside big, so the map is deterministic.
    """
    if small.p != big.p or big.k % small.k:
        raise ValueError(f"{small} does not embed in {big}")
    if small is big:
        return lambda a: a
    if small.k == 1:
        return lambda a: big(a.key()[0])
    image = poly_roots([big(m) for m in small.modulus])[0]
    powers = [big.one]
    for _ in range(small.k - 1):
        powers.append(powers[-1] * image)

    def embed(a: FieldElement) -> FieldElement:
        acc = big.zero
        for c, pw in zip(a.key(), powers):
            if c:
                acc = acc + pw * c
        return acc

    return embed
