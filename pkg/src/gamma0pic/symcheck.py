"""Integer polynomials in g2, g3, x0, y0 with the modular weight grading.

wt(g2) = 4, wt(g3) = 6, wt(x0) = 2, wt(y0) = 3: a polynomial of weight w
picks up u^w under x -> u^2 x, y -> u^3 y.  The invariant differential
dx/y has weight -1, so a section c * omega^k is coordinate-free exactly
when wt(c) = k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ellcurve import UnsupportedLevel

__all__ = [
    "VARIABLES",
    "ZeroPolynomial",
    "UnsupportedLevel",
    "MultiPoly",
    "WeightGrading",
    "DEFAULT_GRADING",
    "CheckResult",
    "G2",
    "G3",
    "X0",
    "Y0",
    "discriminant",
    "weight_of",
    "check_discriminant_factorization",
    "check_trivialization_weight",
    "check_unit_factor_claim",
    "check_weight",
    "curve_relation",
]

VARIABLES = ("g2", "g3", "x0", "y0")
OMEGA_WEIGHT = -1


class ZeroPolynomial(ValueError):
    pass


class MultiPoly:
    """Sparse polynomial: exponent 4-tuple (g2, g3, x0, y0) -> nonzero int."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> MultiPoly:
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> MultiPoly:
        e = [0, 0, 0, 0]
        e[VARIABLES.index(name)] = 1
        return cls({tuple(e): 1})

    @staticmethod
    def _lift(other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, int):
            return MultiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def subs(self, **values) -> MultiPoly:
        """Substitute polynomials (or ints) for variables by name."""
        out = MultiPoly()
        for e, c in self.terms.items():
            term = MultiPoly.const(c)
            rest = list(e)
            for name, val in values.items():
                i = VARIABLES.index(name)
                term = term * (MultiPoly._lift(val) ** e[i])
                rest[i] = 0
            out = out + term * MultiPoly({tuple(rest): 1})
        return out

    def evaluate(self, **values: int) -> int:
        total = 0
        for e, c in self.terms.items():
            term = c
            for name, k in zip(VARIABLES, e):
                if k:
                    term *= values[name] ** k
            total += term
        return total

    def leading(self):
        """Lex-leading term, g2 > g3 > x0 > y0."""
        e = max(self.terms)
        return e, self.terms[e]

    def divmod(self, divisor: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        """Lex division over Z; needs a divisor whose leading coefficient is +-1."""
        if not divisor:
            raise ZeroPolynomial("division by zero polynomial")
        de, dc = divisor.leading()
        if dc not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient over Z")
        quotient, remainder, rest = MultiPoly(), MultiPoly(), MultiPoly(self.terms)
        while rest:
            e, c = rest.leading()
            if all(a >= b for a, b in zip(e, de)):
                t = MultiPoly({tuple(a - b for a, b in zip(e, de)): c * dc})
                quotient = quotient + t
                rest = rest - t * divisor
            else:
                remainder = remainder + MultiPoly({e: c})
                rest = rest - MultiPoly({e: c})
        return quotient, remainder

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: tuple(-x for x in ec[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for e, c in self.sorted_terms():
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(VARIABLES, e) if k)
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not out:
                out = body if c > 0 else f"-{body}"
            else:
                out += f" {'+' if c > 0 else '-'} {body}"
        return out

    __repr__ = __str__


G2 = MultiPoly.var("g2")
G3 = MultiPoly.var("g3")
X0 = MultiPoly.var("x0")
Y0 = MultiPoly.var("y0")


@dataclass(frozen=True)
class WeightGrading:
    g2: int = 4
    g3: int = 6
    x0: int = 2
    y0: int = 3

    def of_exponent(self, e) -> int:
        return self.g2 * e[0] + self.g3 * e[1] + self.x0 * e[2] + self.y0 * e[3]


DEFAULT_GRADING = WeightGrading()


def weight_of(p: MultiPoly, grading: WeightGrading = DEFAULT_GRADING) -> int | None:
    """Common weight of every term, or None if p is not homogeneous."""
    if not p:
        raise ZeroPolynomial("the zero polynomial has no weight")
    weights = {grading.of_exponent(e) for e in p.terms}
    return weights.pop() if len(weights) == 1 else None


def check_weight(p: MultiPoly, u: int, grading: WeightGrading = DEFAULT_GRADING) -> bool:
    """p(u^4 g2, u^6 g3, u^2 x0, u^3 y0) == u^w p, with w = weight_of(p)."""
    w = weight_of(p, grading)
    if w is None:
        return False
    scaled = p.subs(
        g2=u**grading.g2 * G2, g3=u**grading.g3 * G3, x0=u**grading.x0 * X0, y0=u**grading.y0 * Y0
    )
    return scaled == u**w * p


def discriminant() -> MultiPoly:
    return G2**3 - 27 * G3**2


def curve_relation() -> MultiPoly:
    """y0^2 - (4x0^3 - g2 x0 - g3): vanishes at a point (x0, y0) of the curve."""
    return Y0**2 - (4 * X0**3 - G2 * X0 - G3)


def two_torsion_g3() -> MultiPoly:
    """g3 solved from 4x0^3 - g2 x0 - g3 = 0."""
    return 4 * X0**3 - G2 * X0


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


def _diff(lhs: MultiPoly, rhs: MultiPoly) -> list[str]:
    d = lhs - rhs
    return [str(MultiPoly({e: c})) for e, c in d.sorted_terms()]


def check_discriminant_factorization() -> CheckResult:
    lhs = discriminant().subs(g3=two_torsion_g3())
    rhs = (G2 - 3 * X0**2) * (G2 - 12 * X0**2) ** 2
    return CheckResult(
        "discriminant_factorization",
        lhs == rhs,
        {"lhs": str(lhs), "rhs": str(rhs), "diff": _diff(lhs, rhs)},
    )


def check_unit_factor_claim() -> CheckResult:
    delta = discriminant().subs(g3=two_torsion_g3())
    D = G2 - 3 * X0**2
    quotient, remainder = delta.divmod(D)
    expected = (G2 - 12 * X0**2) ** 2
    return CheckResult(
        "unit_factor_D",
        not remainder and quotient == expected,
        {
            "dividend": str(delta),
            "divisor": str(D),
            "quotient": str(quotient),
            "remainder": str(remainder),
            "expected_quotient": str(expected),
        },
    )


TRIVIALIZING_SECTIONS = {
    2: (G2 - 3 * X0**2, 4),
    3: (Y0**2, 6),
}


def check_trivialization_weight(
    N: int, grading: WeightGrading = DEFAULT_GRADING, *, coefficient: MultiPoly | None = None, power: int | None = None
) -> CheckResult:
    """coefficient * omega^power has weight zero.

    The defaults are the level-N sections; ``coefficient``/``power`` let a
    caller probe other candidates (e.g. Delta * omega^4, which fails).
    """
    if N not in TRIVIALIZING_SECTIONS:
        raise UnsupportedLevel(f"level {N} is not supported; use 2 or 3")
    c0, k0 = TRIVIALIZING_SECTIONS[N]
    c = c0 if coefficient is None else coefficient
    k = k0 if power is None else power
    w = weight_of(c, grading)
    total = None if w is None else w + k * OMEGA_WEIGHT
    return CheckResult(
        f"trivialization_weight_level_{N}",
        total == 0,
        {"coefficient": str(c), "omega_power": k, "coefficient_weight": w, "total_weight": total},
    )


def check_discriminant_weight(grading: WeightGrading = DEFAULT_GRADING) -> CheckResult:
    w = weight_of(discriminant(), grading)
    return CheckResult("discriminant_weight", w == 12, {"polynomial": str(discriminant()), "weight": w})


def random_point_check(samples: int = 200, seed: int = 0) -> bool:
    """Evaluate both sides of the factorization at random integer points."""
    rng = random.Random(seed)
    lhs = discriminant()
    rhs = (G2 - 3 * X0**2) * (G2 - 12 * X0**2) ** 2
    for _ in range(samples):
        g2, x0 = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        g3 = 4 * x0**3 - g2 * x0
        if lhs.evaluate(g2=g2, g3=g3, x0=0, y0=0) != rhs.evaluate(g2=g2, g3=0, x0=x0, y0=0):
            return False
    return True
