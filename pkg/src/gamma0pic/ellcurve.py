"""Short Weierstrass curves y^2 = x^3 + Ax + B over finite fields.

Group law, 2- and 3-torsion from the division polynomials, cyclic
subgroups of order 2 and 3 (Gamma_0(N)-structures), automorphisms
(x, y) -> (u^2 x, u^3 y), their stabilizers on a structure, and the
character by which a stabilizer acts on the invariant differential dx/y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exactfield import (
    GF,
    FieldElement,
    FiniteField,
    embedding,
    factor_degrees,
    poly_roots,
    roots_of_unity,
    sqrt,
)

__all__ = [
    "SingularCurve",
    "PointsOnDifferentCurves",
    "UnsupportedLevel",
    "DegreeCapExceeded",
    "Curve",
    "Point",
    "Gamma0Structure",
    "Automorphism",
    "PairReport",
    "add",
    "two_torsion",
    "three_torsion",
    "gamma0_structures",
    "automorphism_group",
    "apply_aut",
    "stabilizer",
    "character_of_stabilizer",
    "pairs_isomorphic",
    "geometric_closure_degree",
    "base_change",
    "geometric_model",
    "pair_report",
]

MAX_CLOSURE_DEGREE = 48


class SingularCurve(ValueError):
    pass


class PointsOnDifferentCurves(ValueError):
    pass


class UnsupportedLevel(ValueError):
    pass


class DegreeCapExceeded(RuntimeError):
    pass


def _check_level(N: int) -> None:
    if N not in (2, 3):
        raise UnsupportedLevel(f"level {N} is not supported; use 2 or 3")


@dataclass(frozen=True, eq=False)
class Curve:
    """y^2 = x^3 + A x + B over ``F``, with nonzero discriminant."""

    F: FiniteField
    A: FieldElement
    B: FieldElement

    def __post_init__(self):
        object.__setattr__(self, "A", self.F(self.A))
        object.__setattr__(self, "B", self.F(self.B))
        if not self.discriminant:
            raise SingularCurve(f"y^2 = x^3 + {self.A}x + {self.B} is singular over {self.F}")

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.F == other.F and self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.F, self.A, self.B))

    @property
    def discriminant(self) -> FieldElement:
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    # the y^2 = 4x^3 - g2 x - g3 normalization, related by y -> 2y
    @property
    def g2(self) -> FieldElement:
        return -4 * self.A

    @property
    def g3(self) -> FieldElement:
        return -4 * self.B

    @property
    def j_invariant(self) -> FieldElement:
        a3 = 4 * self.A**3
        return 1728 * a3 / (a3 + 27 * self.B**2)

    @property
    def O(self) -> Point:
        return Point(self)

    def rhs(self, x: FieldElement) -> FieldElement:
        return x**3 + self.A * x + self.B

    def contains(self, x: FieldElement, y: FieldElement) -> bool:
        return y * y == self.rhs(x)

    def __call__(self, x, y) -> Point:
        x, y = self.F(x), self.F(y)
        if not self.contains(x, y):
            raise ValueError(f"({x}, {y}) is not on {self}")
        return Point(self, x, y)

    def points(self) -> list[Point]:
        """Every rational point, by enumeration of F (small fields only)."""
        pts = [self.O]
        squares: dict[FieldElement, list[FieldElement]] = {}
        for y in self.F.elements():
            squares.setdefault(y * y, []).append(y)
        for x in self.F.elements():
            for y in squares.get(self.rhs(x), ()):
                pts.append(Point(self, x, y))
        return sorted(pts)

    def division_polynomial_3(self) -> list[FieldElement]:
        """psi_3 = 3x^4 + 6Ax^2 + 12Bx - A^2, lowest degree first."""
        F, A, B = self.F, self.A, self.B
        return [-(A * A), 12 * B, 6 * A, F.zero, F(3)]

    def two_division_polynomial(self) -> list[FieldElement]:
        return [self.B, self.A, self.F.zero, self.F.one]

    def __str__(self):
        return f"y^2 = x^3 + ({self.A})x + ({self.B}) over {self.F}"

    __repr__ = __str__


@dataclass(frozen=True, eq=False)
class Point:
    curve: Curve
    x: FieldElement | None = None
    y: FieldElement | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.curve == other.curve and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def key(self):
        if self.x is None:
            return ()
        return (self.x.key(), self.y.key())

    def __lt__(self, other: Point):
        return self.key() < other.key()

    def __neg__(self) -> Point:
        if self.is_infinity:
            return self
        return Point(self.curve, self.x, -self.y)

    def __add__(self, other: Point) -> Point:
        return add(self, other)

    def __sub__(self, other: Point) -> Point:
        return add(self, -other)

    def __rmul__(self, n: int) -> Point:
        if n < 0:
            return (-n) * (-self)
        result, base = self.curve.O, self
        while n:
            if n & 1:
                result = result + base
            base = base + base
            n >>= 1
        return result

    def __str__(self):
        return "inf" if self.is_infinity else f"({self.x}, {self.y})"

    __repr__ = __str__


def add(P: Point, Q: Point) -> Point:
    """Chord-tangent addition."""
    if P.curve != Q.curve:
        raise PointsOnDifferentCurves(f"{P} and {Q} lie on different curves")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    E = P.curve
    if P.x == Q.x:
        if P.y != Q.y or not P.y:
            return E.O
        slope = (3 * P.x * P.x + E.A) / (2 * P.y)
    else:
        slope = (Q.y - P.y) / (Q.x - P.x)
    x3 = slope * slope - P.x - Q.x
    y3 = slope * (P.x - x3) - P.y
    return Point(E, x3, y3)


def two_torsion(E: Curve) -> list[Point]:
    return [E.O] + [Point(E, r, E.F.zero) for r in sorted(set(poly_roots(E.two_division_polynomial())))]


def three_torsion(E: Curve) -> list[Point]:
    pts = [E.O]
    for r in sorted(set(poly_roots(E.division_polynomial_3()))):
        for s in sqrt(E.rhs(r)):
            pts.append(Point(E, r, s))
    return sorted(pts)


@dataclass(frozen=True)
class Gamma0Structure:
    """A cyclic subgroup of order N, stored as its full sorted point set."""

    N: int
    points: tuple[Point, ...]

    def __post_init__(self):
        _check_level(self.N)
        if len(self.points) != self.N:
            raise ValueError(f"a level-{self.N} structure has exactly {self.N} points")

    @property
    def curve(self) -> Curve:
        return self.points[0].curve

    @property
    def generator(self) -> Point:
        """The least non-identity point."""
        return next(P for P in self.points if not P.is_infinity)

    @property
    def x0(self) -> FieldElement:
        return self.generator.x

    @property
    def y0(self) -> FieldElement:
        return self.generator.y

    def as_set(self) -> frozenset[Point]:
        return frozenset(self.points)

    def __str__(self):
        return "{" + ", ".join(str(P) for P in self.points) + "}"


def _subgroup(P: Point, N: int) -> Gamma0Structure:
    pts = [P.curve.O]
    Q = P
    while not Q.is_infinity:
        pts.append(Q)
        Q = Q + P
    return Gamma0Structure(N, tuple(sorted(pts)))


def gamma0_structures(E: Curve, N: int) -> list[Gamma0Structure]:
    """All rational cyclic subgroups of order N, sorted by their generators."""
    _check_level(N)
    torsion = two_torsion(E) if N == 2 else three_torsion(E)
    seen = set()
    out = []
    for P in torsion:
        if P.is_infinity:
            continue
        G = _subgroup(P, N)
        if G.as_set() not in seen:
            seen.add(G.as_set())
            out.append(G)
    return sorted(out, key=lambda G: G.generator.key())


@dataclass(frozen=True)
class Automorphism:
    """(x, y) -> (u^2 x, u^3 y); ``u`` is a unit with u^4 A = A, u^6 B = B."""

    u: FieldElement

    def __post_init__(self):
        if not self.u:
            raise ValueError("an automorphism needs a unit")

    @property
    def order(self) -> int:
        return self.u.multiplicative_order()

    def differential_scaling(self) -> FieldElement:
        """The factor c with dx/y -> c dx/y, read off the coordinate action."""
        return self.u**2 / self.u**3

    def __str__(self):
        return f"u={self.u}"


def automorphism_group(E: Curve) -> list[Automorphism]:
    """Units fixing (A, B); sorted by u."""
    n = 2
    if not E.B:
        n = 4
    elif not E.A:
        n = 6
    # u^4 A = A and u^6 B = B with A, B both nonzero force u^2 = 1
    return [Automorphism(u) for u in roots_of_unity(E.F, n)]


def apply_aut(u: Automorphism, P: Point) -> Point:
    if P.is_infinity:
        return P
    return Point(P.curve, u.u**2 * P.x, u.u**3 * P.y)


def stabilizer(E: Curve, G: Gamma0Structure) -> list[Automorphism]:
    target = G.as_set()
    return [u for u in automorphism_group(E) if frozenset(apply_aut(u, P) for P in G.points) == target]


def character_of_stabilizer(stab: list[Automorphism]) -> int:
    """Order of u -> (scaling of dx/y under u), as a character of ``stab``."""
    order = 1
    for u in stab:
        order = math.lcm(order, u.differential_scaling().multiplicative_order())
    return order


def pairs_isomorphic(E: Curve, G: Gamma0Structure, E2: Curve, G2: Gamma0Structure):
    """Search for u with (u^4 A, u^6 B) = (A', B') carrying G onto G'.

    Returns ``(True, u)`` with the least such u, or ``(False, None)``.  The
    candidates are all roots in F of the conditions on u, which is the same
    set an exhaustive loop over F^x would find.
    """
    if E.F != E2.F:
        raise ValueError("pairs must be defined over the same field")
    if G.N != G2.N:
        return False, None
    for u in isomorphism_candidates(E, E2):
        phi = Automorphism(u)
        if frozenset(_map_point(phi, P, E2) for P in G.points) == G2.as_set():
            return True, u
    return False, None


def isomorphism_candidates(E: Curve, E2: Curve) -> list[FieldElement]:
    """All u in F^x with u^4 A = A' and u^6 B = B', sorted."""
    F = E.F
    conds = []
    for e, a, b in ((4, E.A, E2.A), (6, E.B, E2.B)):
        if not a and not b:
            continue
        if not a or not b:
            return []
        conds.append((e, b / a))
    e, c = conds[0]
    cands = poly_roots([-c] + [F.zero] * (e - 1) + [F.one])
    return sorted({u for u in cands if all(u**e2 == c2 for e2, c2 in conds)})


def isomorphism_candidates_exhaustive(E: Curve, E2: Curve) -> list[FieldElement]:
    return [u for u in E.F.units() if u**4 * E.A == E2.A and u**6 * E.B == E2.B]


def _map_point(phi: Automorphism, P: Point, target: Curve) -> Point:
    if P.is_infinity:
        return target.O
    return Point(target, phi.u**2 * P.x, phi.u**3 * P.y)


def base_change(E: Curve, F: FiniteField) -> Curve:
    emb = embedding(E.F, F)
    return Curve(F, emb(E.A), emb(E.B))


def _mu_requirement(E: Curve) -> int:
    if not E.B:
        return 4
    if not E.A:
        return 6
    return 2


def _multiplicative_order_mod(q: int, n: int) -> int:
    k, acc = 1, q % n
    while acc != 1 % n:
        acc = acc * q % n
        k += 1
    return k


def _torsion_complete(E: Curve, N: int) -> bool:
    if N == 2:
        return len(set(poly_roots(E.two_division_polynomial()))) == 3
    roots = set(poly_roots(E.division_polynomial_3()))
    return len(roots) == 4 and all(E.rhs(r).is_square() for r in roots)


def geometric_closure_degree(E: Curve, N: int) -> int:
    """Smallest absolute degree k with E[N] and the relevant mu_n rational over F_{p^k}.

    The result is a multiple of the degree of E's own field.
    """
    _check_level(N)
    F = E.F
    x_poly = E.two_division_polynomial() if N == 2 else E.division_polynomial_3()
    step = math.lcm(
        _multiplicative_order_mod(F.order, _mu_requirement(E)),
        math.lcm(*factor_degrees(x_poly)),
    )
    # Frobenius^k fixes E[N] and mu_n exactly when its order divides k, so
    # only multiples of step can work; N = 3 can need one extra doubling for
    # the y-coordinates.
    for rel in range(step, MAX_CLOSURE_DEGREE // F.k + 1, step):
        k = rel * F.k
        if _torsion_complete(base_change(E, GF(F.p, k)), N):
            return k
    raise DegreeCapExceeded(f"no extension of degree <= {MAX_CLOSURE_DEGREE} splits {E}[{N}]")


def geometric_model(E: Curve, N: int) -> Curve:
    """E over its geometric closure field for level N."""
    return base_change(E, GF(E.F.p, geometric_closure_degree(E, N)))


@dataclass(frozen=True)
class PairReport:
    curve: Curve
    structure: Gamma0Structure
    stabilizer: tuple[Automorphism, ...] = field(repr=False)
    stabilizer_order: int
    character_order: int

    @property
    def j_invariant(self) -> FieldElement:
        return self.curve.j_invariant


def pair_report(E: Curve, G: Gamma0Structure) -> PairReport:
    stab = stabilizer(E, G)
    return PairReport(E, G, tuple(stab), len(stab), character_of_stabilizer(stab))
