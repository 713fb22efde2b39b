"""Report-producing commands behind the ``gamma0pic`` command line.

Every command returns plain dicts/lists with a fixed key order, so
``json.dumps`` of a report is byte-identical across runs.  Field elements
are written as their coefficient vectors over F_p (lowest degree first);
the modulus of every extension field that appears is listed under
``fields``.
"""

from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import symcheck
from .ellcurve import (
    Automorphism,
    Curve,
    Gamma0Structure,
    Point,
    apply_aut,
    automorphism_group,
    base_change,
    character_of_stabilizer,
    gamma0_structures,
    geometric_closure_degree,
    geometric_model,
    pair_report,
    pairs_isomorphic,
    stabilizer,
    three_torsion,
    two_torsion,
)
from .exactfield import GF, FieldElement, FiniteField, embedding, max_field_size
from .symcheck import DEFAULT_GRADING, WeightGrading

log = logging.getLogger(__name__)

ALLOWED_ORDERS = {2: (2, 4), 3: (2, 6)}
LAMBDA_ORDER = {2: 4, 3: 6}
STRUCTURES_PER_CURVE = {2: 3, 3: 4}


class ConfigInvalid(ValueError):
    pass


class CertificateMismatch(RuntimeError):
    pass


def vec(a: FieldElement) -> list[int]:
    return list(a.key())


def point_json(P: Point):
    return None if P.is_infinity else [vec(P.x), vec(P.y)]


def structure_json(G: Gamma0Structure):
    return [point_json(P) for P in G.points]


# ---------------------------------------------------------------------------
# verify-identities


def cmd_verify_identities(grading: WeightGrading = DEFAULT_GRADING) -> dict:
    checks = [
        symcheck.check_discriminant_factorization(),
        symcheck.check_unit_factor_claim(),
        symcheck.check_discriminant_weight(grading),
        symcheck.check_trivialization_weight(2, grading),
        symcheck.check_trivialization_weight(3, grading),
    ]
    passed = sum(c.passed for c in checks)
    return {
        "command": "verify-identities",
        "grading": {"g2": grading.g2, "g3": grading.g3, "x0": grading.x0, "y0": grading.y0},
        "checks": [c.as_dict() for c in checks],
        "passed": passed,
        "total": len(checks),
        "ok": passed == len(checks),
    }


# ---------------------------------------------------------------------------
# special pairs and isomorphism witnesses


def special_curve(F: FiniteField, N: int) -> Curve:
    """y^2 = x^3 - x for level 2, y^2 = x^3 + 1 for level 3."""
    return Curve(F, F(-1), F(0)) if N == 2 else Curve(F, F(0), F(1))


def special_structure(E: Curve, N: int) -> Gamma0Structure:
    """The structure with generator x-coordinate 0: <(0,0)> resp. {inf, (0, +-y0)}."""
    for G in gamma0_structures(E, N):
        if not G.x0:
            return G
    raise LookupError(f"no level-{N} structure with x0 = 0 on {E}")


def _base_change_structure(G: Gamma0Structure, E: Curve) -> Gamma0Structure:
    emb = embedding(G.curve.F, E.F)
    pts = [E.O if P.is_infinity else Point(E, emb(P.x), emb(P.y)) for P in G.points]
    return Gamma0Structure(G.N, tuple(sorted(pts)))


def special_pair_witness(E: Curve, G: Gamma0Structure) -> dict | None:
    """An isomorphism from the special pair to (E, G), over the least extension of E's field that has one."""
    F = E.F
    # u^4 = c (resp. u^6 = c) splits over a Kummer extension once mu_4
    # (resp. mu_6) is rational, so its degree divides 4 (resp. 6)
    for m in ((1, 2, 4) if G.N == 2 else (1, 2, 3, 6)):
        F2 = GF(F.p, F.k * m)
        E2 = base_change(E, F2)
        G2 = _base_change_structure(G, E2)
        S = special_curve(F2, G.N)
        found, u = pairs_isomorphic(S, special_structure(S, G.N), E2, G2)
        if found:
            return {"field_degree": F2.k, "u": vec(u)}
    return None


# ---------------------------------------------------------------------------
# scan


@dataclass(frozen=True)
class ScanConfig:
    p: int
    k: int = 1
    N: int = 2
    geometric: bool = False
    format: str = "json"

    def validate(self) -> list[str]:
        """Raise ConfigInvalid on a bad config; return warnings."""
        if self.p in (2, 3):
            raise ConfigInvalid("characteristic 2 and 3 are excluded")
        try:
            F = GF(self.p, self.k)
        except ValueError as exc:
            raise ConfigInvalid(str(exc)) from exc
        if self.N not in (2, 3):
            raise ConfigInvalid(f"level must be 2 or 3, got {self.N}")
        if self.format not in ("json", "csv"):
            raise ConfigInvalid(f"unknown format {self.format!r}")
        if F.order > max_field_size():
            raise ConfigInvalid(f"p^k = {F.order} exceeds the enumeration cap {max_field_size()}")
        warnings = []
        if not self.geometric:
            needed = 4 if self.N == 2 else 6
            if not F.contains_roots_of_unity(needed):
                warnings.append(
                    f"mu_{needed} is not contained in {F}; the stabilizer-{needed} locus cannot appear without --geometric"
                )
        return warnings


def _scan_curve(args):
    p, k, N, geometric, a, b = args
    F = GF(p, k)
    E = Curve(F, F(a), F(b))
    EE = geometric_model(E, N) if geometric else E
    pairs = []
    violations = []
    structures = gamma0_structures(EE, N)
    for G in structures:
        rep = pair_report(EE, G)
        rec = {
            "A": vec(E.A),
            "B": vec(E.B),
            "j": vec(E.j_invariant),
            "field_degree": EE.F.k,
            "structure": structure_json(G),
            "stabilizer_order": rep.stabilizer_order,
            "character_order": rep.character_order,
        }
        bad = _pair_violations(EE, G, rep.stabilizer, rep.character_order)
        if rep.stabilizer_order > 2:
            witness = special_pair_witness(EE, G)
            rec["witness"] = witness
            if witness is None:
                bad.append("no isomorphism to the special pair")
        for msg in bad:
            violations.append({"A": rec["A"], "B": rec["B"], "structure": rec["structure"], "violation": msg})
        pairs.append(rec)
    if geometric and len(structures) != STRUCTURES_PER_CURVE[N]:
        violations.append(
            {
                "A": vec(E.A),
                "B": vec(E.B),
                "structure": None,
                "violation": f"{len(structures)} level-{N} structures after base change, expected {STRUCTURES_PER_CURVE[N]}",
            }
        )
    return EE.F.k, EE.F.modulus, len(structures), pairs, violations


def _pair_violations(E: Curve, G: Gamma0Structure, stab, character_order: int) -> list[str]:
    N = G.N
    order = len(stab)
    out = []
    if order not in ALLOWED_ORDERS[N]:
        out.append(f"stabilizer order {order} not in {ALLOWED_ORDERS[N]}")
    if character_order != order:
        out.append(f"character order {character_order} differs from stabilizer order {order}")
    if not any(u.u == -1 for u in stab) or not any(u.u == 1 for u in stab):
        out.append("stabilizer does not contain +-1")
    if order == 4:
        if E.B or E.j_invariant != 1728:
            out.append("order-4 stabilizer away from j = 1728")
        u4 = next((u for u in stab if u.order == 4), None)
        if u4 is None or apply_aut(u4, G.generator) != G.generator:
            out.append("order-4 stabilizer does not fix the generator")
    if order == 6:
        if E.A or E.j_invariant != 0:
            out.append("order-6 stabilizer away from j = 0")
        if G.x0:
            out.append("order-6 structure is not of the form {inf, (0, +-y0)}")
    return out


def cmd_scan(cfg: ScanConfig, jobs: int = 1) -> dict:
    warnings = cfg.validate()
    F = GF(cfg.p, cfg.k)
    tasks = []
    for A in F.elements():
        for B in F.elements():
            if 4 * A**3 + 27 * B**2:
                tasks.append((cfg.p, cfg.k, cfg.N, cfg.geometric, vec(A), vec(B)))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_curve, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_scan_curve(t) for t in tasks]

    fields = {str(F.k): list(F.modulus)}
    structure_counts: dict[int, int] = {}
    histogram: dict[int, int] = {}
    pairs, exceptional, violations = [], [], []
    for degree, modulus, count, curve_pairs, curve_violations in results:
        fields.setdefault(str(degree), list(modulus))
        structure_counts[count] = structure_counts.get(count, 0) + 1
        for rec in curve_pairs:
            histogram[rec["stabilizer_order"]] = histogram.get(rec["stabilizer_order"], 0) + 1
            pairs.append(rec)
            if rec["stabilizer_order"] > 2:
                exceptional.append(rec)
        violations.extend(curve_violations)
    for rec in exceptional:
        w = rec["witness"]
        if w is not None:
            fields.setdefault(str(w["field_degree"]), list(GF(cfg.p, w["field_degree"]).modulus))

    max_order = max(histogram, default=0)
    expected = LAMBDA_ORDER[cfg.N]
    if cfg.geometric and max_order != expected:
        violations.append(
            {"A": None, "B": None, "structure": None, "violation": f"largest stabilizer order {max_order}, expected {expected}"}
        )
    if sum(histogram.values()) != len(pairs):
        violations.append({"A": None, "B": None, "structure": None, "violation": "histogram does not sum to pair count"})

    trivialization = symcheck.check_trivialization_weight(cfg.N)
    lam = {
        "divides": expected if trivialization.passed else None,
        "multiple_of": max_order,
        "order": expected if trivialization.passed and max_order == expected else None,
    }
    return {
        "command": "scan",
        "config": {"p": cfg.p, "k": cfg.k, "level": cfg.N, "geometric": cfg.geometric},
        "field": {"p": cfg.p, "k": cfg.k, "order": F.order, "modulus": list(F.modulus)},
        "fields": dict(sorted(fields.items(), key=lambda kv: int(kv[0]))),
        "warnings": warnings,
        "total_curves": len(tasks),
        "total_pairs": len(pairs),
        "structures_per_curve": {str(c): n for c, n in sorted(structure_counts.items())},
        "stabilizer_histogram": {str(o): n for o, n in sorted(histogram.items())},
        "exceptional_pairs": exceptional,
        "lambda_order": lam,
        "violations": violations,
        "passed": not violations,
        "pairs": pairs,
    }


CSV_COLUMNS = ("A", "B", "j", "field_degree", "structure", "stabilizer_order", "character_order")


def _csv_vec(v) -> str:
    return " ".join(str(c) for c in v)


def _csv_structure(s) -> str:
    return ";".join("inf" if P is None else f"({_csv_vec(P[0])},{_csv_vec(P[1])})" for P in s)


def scan_csv(report: dict) -> str:
    """One row per (E, G) pair; vectors are space separated."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in report["pairs"]:
        w.writerow(
            [
                _csv_vec(rec["A"]),
                _csv_vec(rec["B"]),
                _csv_vec(rec["j"]),
                rec["field_degree"],
                _csv_structure(rec["structure"]),
                rec["stabilizer_order"],
                rec["character_order"],
            ]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# special-points


def _generator(stab: list[Automorphism], order: int) -> Automorphism:
    return next(u for u in stab if u.order == order)


def _structure_index(structs: list[Gamma0Structure], pts) -> int:
    target = frozenset(pts)
    return next(i for i, G in enumerate(structs) if G.as_set() == target)


def _action_permutation(structs, u: Automorphism) -> list[int]:
    return [_structure_index(structs, [apply_aut(u, P) for P in G.points]) for G in structs]


def _cycle_type(perm: list[int]) -> list[int]:
    seen, lengths = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        lengths.append(n)
    return sorted(lengths, reverse=True)


def _j1728_level2(p: int) -> dict:
    E = geometric_model(special_curve(GF(p), 2), 2)
    F = E.F
    structs = gamma0_structures(E, 2)
    i = _generator(automorphism_group(E), 4)
    zero, one = F.zero, F.one
    orders = {str(G): len(stabilizer(E, G)) for G in structs}
    checks = {
        "E[2] = {inf, (0,0), (-1,0), (1,0)}": two_torsion(E) == sorted([E.O, E(0, 0), E(-1, 0), E(1, 0)]),
        "Aut(E) = mu_4": len(automorphism_group(E)) == 4,
        "i*(0,0) = (0,0)": apply_aut(i, E(zero, zero)) == E(zero, zero),
        "i*(-1,0) = (1,0)": apply_aut(i, E(-one, zero)) == E(one, zero),
        "<(0,0)> has stabilizer mu_4": len(stabilizer(E, special_structure(E, 2))) == 4,
        "<(+-1,0)> have stabilizer mu_2": sorted(orders.values()) == [2, 2, 4],
        "i swaps <(-1,0)> and <(1,0)>": _cycle_type(_action_permutation(structs, i)) == [2, 1],
    }
    return {
        "curve": str(E),
        "field_degree": F.k,
        "generator_u": vec(i.u),
        "structures": [{"structure": structure_json(G), "stabilizer_order": len(stabilizer(E, G))} for G in structs],
        "action_of_generator": _action_permutation(structs, i),
        "checks": checks,
    }


def _j0_level2(p: int) -> dict:
    E = geometric_model(special_curve(GF(p), 3), 2)
    structs = gamma0_structures(E, 2)
    eta = _generator(automorphism_group(E), 6)
    perm = _action_permutation(structs, eta)
    x0 = structs[0].x0
    checks = {
        "Aut(E) = mu_6": len(automorphism_group(E)) == 6,
        "eta*(x0,0) = (eta^2 x0, 0)": apply_aut(eta, structs[0].generator) == E(eta.u**2 * x0, 0),
        "E[2] = {inf, (x0,0), (eta^2 x0,0), (eta^4 x0,0)}": {P.x for P in two_torsion(E) if not P.is_infinity}
        == {x0, eta.u**2 * x0, eta.u**4 * x0},
        "mu_6 acts on the three structures as a 3-cycle": _cycle_type(perm) == [3],
        "every structure has stabilizer mu_2": all(len(stabilizer(E, G)) == 2 for G in structs),
    }
    return {
        "curve": str(E),
        "field_degree": E.F.k,
        "generator_u": vec(eta.u),
        "structures": [{"structure": structure_json(G), "stabilizer_order": len(stabilizer(E, G))} for G in structs],
        "action_of_generator": perm,
        "checks": checks,
    }


def _j0_level3(p: int) -> dict:
    E = geometric_model(special_curve(GF(p), 3), 3)
    F = E.F
    structs = gamma0_structures(E, 3)
    G = special_structure(E, 3)
    affine = [P for P in three_torsion(E) if not P.is_infinity]
    orders = [len(stabilizer(E, H)) for H in structs]
    checks = {
        "G = {inf, (0,+-1)}": G.as_set() == {E.O, E(0, 1), E(0, -1)},
        "G has stabilizer mu_6": len(stabilizer(E, G)) == 6,
        "other structures have stabilizer mu_2": sorted(orders) == [2, 2, 2, 6],
        "E[3] affine points are (0,+-1) and (cbrt(-4) zeta^i, +-sqrt(-3))": len(affine) == 8
        and all((not P.x and P.y**2 == 1) or (P.x**3 == F(-4) and P.y**2 == F(-3)) for P in affine),
    }
    return {
        "curve": str(E),
        "field_degree": F.k,
        "structures": [{"structure": structure_json(H), "stabilizer_order": o} for H, o in zip(structs, orders)],
        "checks": checks,
    }


def _j1728_level3(p: int) -> dict:
    E = geometric_model(special_curve(GF(p), 2), 3)
    F = E.F
    structs = gamma0_structures(E, 3)
    i = _generator(automorphism_group(E), 4)
    orders = [len(stabilizer(E, H)) for H in structs]
    # x0^2 = 1 +- 2 sqrt(3)/3, i.e. 3 t^2 - 6 t - 1 = 0 with t = x0^2
    xs = sorted({H.x0 for H in structs} | {-H.x0 for H in structs})
    checks = {
        "four level-3 structures": len(structs) == 4,
        # (x, y) -> (-x, i y) is the u-action with u = i^-1
        "i*(x0,y0) = (-x0, i y0)": all(
            apply_aut(Automorphism(i.u.inverse()), H.generator) == Point(E, -H.x0, i.u * H.y0) for H in structs
        ),
        "x0^2 solves 3t^2 - 6t - 1 = 0": all(3 * x**4 - 6 * x**2 - 1 == 0 for x in xs),
        "no structure is preserved by mu_4": all(o == 2 for o in orders),
    }
    return {
        "curve": str(E),
        "field_degree": F.k,
        "structures": [{"structure": structure_json(H), "stabilizer_order": o} for H, o in zip(structs, orders)],
        "checks": checks,
    }


def cmd_special_points(p: int) -> dict:
    if p in (2, 3):
        raise ConfigInvalid("characteristic 2 and 3 are excluded")
    try:
        GF(p)
    except ValueError as exc:
        raise ConfigInvalid(str(exc)) from exc
    sections = {
        "j1728_level2": _j1728_level2(p),
        "j0_level2": _j0_level2(p),
        "j0_level3": _j0_level3(p),
        "j1728_level3": _j1728_level3(p),
    }
    ok = all(all(s["checks"].values()) for s in sections.values())
    fields = {}
    for s in sections.values():
        fields[str(s["field_degree"])] = list(GF(p, s["field_degree"]).modulus)
    return {
        "command": "special-points",
        "p": p,
        "fields": dict(sorted(fields.items(), key=lambda kv: int(kv[0]))),
        **sections,
        "passed": ok,
    }


# ---------------------------------------------------------------------------
# lambda-order


def cmd_lambda_order(N: int, p: int) -> dict:
    if N not in (2, 3):
        raise ConfigInvalid(f"level must be 2 or 3, got {N}")
    if p in (2, 3):
        raise ConfigInvalid("characteristic 2 and 3 are excluded")
    try:
        GF(p)
    except ValueError as exc:
        raise ConfigInvalid(str(exc)) from exc
    triv = symcheck.check_trivialization_weight(N)
    upper = triv.details["omega_power"] if triv.passed else None
    E = geometric_model(special_curve(GF(p), N), N)
    G = special_structure(E, N)
    stab = stabilizer(E, G)
    lower = character_of_stabilizer(stab)
    if upper is None or upper != lower:
        raise CertificateMismatch(f"lambda has order dividing {upper} but character of order {lower}")
    return {
        "command": "lambda-order",
        "level": N,
        "p": p,
        "order": upper,
        "divisor_certificate": {
            "section": f"({triv.details['coefficient']}) * omega^{upper}",
            "total_weight": triv.details["total_weight"],
        },
        "multiple_certificate": {
            "curve": str(E),
            "field_degree": E.F.k,
            "structure": structure_json(G),
            "stabilizer_order": len(stab),
            "character_order": lower,
        },
    }
