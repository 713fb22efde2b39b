import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma0pic.exactfield import (
    GF,
    ExtField,
    PrimeField,
    ZeroInverse,
    embedding,
    factor_degrees,
    find_irreducible,
    inv,
    is_irreducible,
    poly_eval,
    poly_roots,
    poly_roots_exhaustive,
    roots_of_unity,
    sqrt,
)

FIELDS = [GF(5), GF(7), GF(13), GF(101), GF(5, 2), GF(7, 2), GF(5, 3), GF(11, 2), GF(13, 3), GF(7, 4)]
SMALL_FIELDS = [F for F in FIELDS if F.order <= 10**4]


def ints(F, values):
    return {F(v) for v in values}


def element(F):
    return st.tuples(*[st.integers(0, F.p - 1)] * F.k).map(lambda v: F(v) if F.k > 1 else F(v[0]))


def field_and(n):
    return st.sampled_from(FIELDS).flatmap(lambda F: st.tuples(st.just(F), *[element(F)] * n))


# ---------------------------------------------------------------- examples


def test_inverse_examples():
    F13, F7 = GF(13), GF(7)
    assert inv(F13(1)) == 1
    assert inv(F13(5)) == 8
    assert inv(F7(3)) == 5


def test_zero_inverse_raises():
    for F in (GF(13), GF(5, 2)):
        with pytest.raises(ZeroInverse):
            inv(F.zero)
        with pytest.raises(ZeroDivisionError):
            F.one / F.zero


def test_roots_of_unity_examples():
    assert set(roots_of_unity(GF(13), 4)) == ints(GF(13), [1, 5, 8, 12])
    assert set(roots_of_unity(GF(7), 6)) == ints(GF(7), range(1, 7))
    assert set(roots_of_unity(GF(7), 4)) == ints(GF(7), [1, 6])


def test_poly_roots_examples():
    F13, F7 = GF(13), GF(7)
    assert poly_roots([F13(0), F13(-1), F13(0), F13(1)]) == [F13(0), F13(1), F13(12)]
    assert poly_roots([F7(1), F7(0), F7(0), F7(1)]) == [F7(3), F7(5), F7(6)]
    assert poly_roots([F7(1), F7(0), F7(1)]) == []


def test_poly_roots_multiplicity():
    F = GF(11)
    # (x - 2)^3 (x - 5)
    f = [F.one]
    for r in (2, 2, 2, 5):
        f = _mul(f, [F(-r), F.one])
    assert poly_roots(f) == [F(2), F(2), F(2), F(5)]


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        poly_roots([])


def _mul(f, g):
    out = [f[0].field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


# ---------------------------------------------------------------- construction


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 9, 15])
def test_prime_field_rejects(n):
    with pytest.raises(ValueError):
        PrimeField(n)


def test_ext_field_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        ExtField(5, 2, (1, 0, 1))  # x^2 + 1 = (x - 2)(x - 3) mod 5


def test_gf_is_cached_and_equal_by_value():
    assert GF(7, 2) is GF(7, 2)
    assert PrimeField(7) == GF(7)
    assert GF(7)(3) == PrimeField(7)(3)


@pytest.mark.parametrize("p,k", [(5, 2), (5, 3), (5, 4), (7, 2), (7, 3), (11, 2), (13, 2), (13, 3), (499, 2), (5, 6)])
def test_default_modulus_is_irreducible_and_first(p, k):
    """Cross-checked against sympy's irreducibility test; no earlier monic candidate is irreducible."""
    m = find_irreducible(p, k)
    x = sympy.symbols("x")
    assert sympy.Poly(list(reversed(m)), x, modulus=p).is_irreducible
    if p**k <= 5**4:
        for a in range(p**k):
            digits = []
            n = a
            for _ in range(k):
                digits.append(n % p)
                n //= p
            cand = tuple(reversed(digits)) + (1,)
            if cand == m:
                break
            assert not is_irreducible([GF(p)(c) for c in cand])


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("GAMMA0_MAX_FIELD", "100")
    with pytest.raises(ValueError):
        list(GF(101).elements())
    assert len(list(GF(97).elements())) == 97


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_elements_sorted_and_complete(F):
    if F.order > 3000:
        pytest.skip("large")
    els = list(F.elements())
    assert len(els) == len(set(els)) == F.order
    assert els == sorted(els)


# ---------------------------------------------------------------- properties


@settings(max_examples=1000, deadline=None)
@given(field_and(3))
def test_field_axioms(t):
    F, a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + F.zero == a and a * F.one == a
    assert a + (-a) == F.zero
    if a:
        assert a * a.inverse() == F.one
        assert a ** (F.order - 1) == F.one


@settings(max_examples=1000, deadline=None)
@given(field_and(2))
def test_frobenius_is_a_ring_map(t):
    F, a, b = t
    fr = lambda z: z**F.p  # noqa: E731
    assert fr(a + b) == fr(a) + fr(b)
    assert fr(a * b) == fr(a) * fr(b)
    assert a**F.order == a


@pytest.mark.parametrize("F", FIELDS, ids=str)
@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8, 12, 24])
def test_roots_of_unity_count(F, n):
    mu = roots_of_unity(F, n)
    assert len(mu) == math.gcd(n, F.order - 1)
    assert all(u**n == 1 for u in mu)
    assert F.contains_roots_of_unity(n) == (len(mu) == n)


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(SMALL_FIELDS).flatmap(lambda F: st.lists(element(F), min_size=1, max_size=7)))
def test_poly_roots_match_exhaustive(f):
    if not any(f):
        return
    assert poly_roots(f) == poly_roots_exhaustive(f)


@settings(max_examples=1000, deadline=None)
@given(field_and(1))
def test_sqrt(t):
    F, a = t
    roots = sqrt(a)
    assert all(r * r == a for r in roots)
    assert len(roots) == (1 if not a else 2 if a.is_square() else 0)


@pytest.mark.parametrize("F", [GF(7), GF(5, 2), GF(13)], ids=str)
def test_sqrt_exhaustive(F):
    for a in F.elements():
        assert sqrt(a) == sorted(r for r in F.elements() if r * r == a)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([5, 7, 13]).flatmap(lambda p: st.tuples(st.just(p), st.lists(st.integers(0, p - 1), min_size=2, max_size=9))))
def test_factor_degrees_against_sympy(t):
    p, coeffs = t
    coeffs = coeffs + [1]
    x = sympy.symbols("x")
    P = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    if sympy.gcd(P, P.diff(x)).degree() > 0:
        return  # only squarefree input is supported
    expected = sorted(f.degree() for f, _ in P.factor_list()[1])
    assert factor_degrees([GF(p)(c) for c in coeffs]) == expected


@pytest.mark.parametrize("small,big", [((5, 1), (5, 2)), ((5, 2), (5, 4)), ((7, 2), (7, 6)), ((13, 1), (13, 3))])
def test_embedding_is_a_homomorphism(small, big):
    S, B = GF(*small), GF(*big)
    emb = embedding(S, B)
    els = list(S.elements())
    images = {emb(a) for a in els}
    assert len(images) == len(els)
    for a in els[:: max(1, len(els) // 12)]:
        for b in els[:: max(1, len(els) // 12)]:
            assert emb(a + b) == emb(a) + emb(b)
            assert emb(a * b) == emb(a) * emb(b)
    # the image of the generator is a root of the small modulus
    if S.k > 1:
        assert not poly_eval([B(m) for m in S.modulus], emb(S.gen()))
