"""Structural classification of finite graphs by their least doubling constant.

The catalog of graphs with C_G <= 3 is exactly: paths, cycles, the D-family
trees and their extension D_hat, plus the two exceptional trees E6 and E7.
Recognition is purely structural (degree multiset and tree shape), so the
delicate boundary cases with spectral radius exactly 2 but C_G > 3 (the
hatted trees and E8) are decided without floating-point peril.  The one
genuinely open strictness question, whether a D-family tree sits strictly
below 3, is settled numerically per instance, since only the upper bound
C <= 3 has a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SolverError, ValidationError
from .families import FamilySpec
from .graphs import Graph, structural_facts
from .optimizer import OptimizationResult, least_doubling

_D_STRICT_MARGIN = 1e-7


@dataclass(frozen=True)
class ClassificationVerdict:
    verdict: str  # "leq3_strict" | "eq3" | "gt3"
    family_match: str | None
    reasons: tuple[str, ...]
    numeric_cross_check: OptimizationResult | None = None


def structural_lower_bound(g: Graph) -> str | None:
    """First structural condition forcing C0_G >= 3, or None.

    None means: a tree with maximum degree <= 3 and at most one vertex of
    degree 3.  The conditions bound C0 only; a cycle, for instance, still
    allows C_G = 3 itself.
    """
    facts = structural_facts(g)
    if facts.has_cycle:
        return "(i) contains a cycle"
    if facts.max_degree > 3:
        return f"(ii) vertex of degree {facts.max_degree} > 3"
    if facts.count_deg_ge3 >= 2:
        return f"(iii) {facts.count_deg_ge3} vertices of degree >= 3"
    return None


def _leg_lengths(g: Graph, center: int) -> list[int] | None:
    """Leg lengths of a spider tree seen from its unique branch vertex."""
    legs = []
    for start in g.adj[center]:
        length = 1
        prev, cur = center, start
        while g.degree(cur) == 2:
            nxt = next(w for w in g.adj[cur] if w != prev)
            prev, cur = cur, nxt
            length += 1
        if g.degree(cur) != 1:
            return None  # another branch vertex on this arm
        legs.append(length)
    return sorted(legs)


def _is_d_hat(g: Graph) -> bool:
    """Two degree-3 vertices joined by a path, two leaves hanging off each."""
    branch = [v for v in range(g.n) if g.degree(v) == 3]
    if len(branch) != 2 or max(g.degrees) != 3:
        return False
    for b in branch:
        leaves = sum(1 for w in g.adj[b] if g.degree(w) == 1)
        if leaves != 2:
            return False
    return sum(1 for v in range(g.n) if g.degree(v) == 1) == 4


def classify_leq3(
    g: Graph, tol: float = 1e-9, cross_check: bool = False
) -> ClassificationVerdict:
    """Place C_G relative to 3 and name the catalog family when C_G <= 3."""
    facts = structural_facts(g)
    reasons: list[str] = []
    rule = structural_lower_bound(g)
    if rule is not None:
        reasons.append(rule + " => C0 >= 3")

    verdict: str
    family: str | None = None
    numeric: OptimizationResult | None = None

    if facts.has_cycle:
        if facts.is_regular and facts.max_degree == 2:
            verdict, family = "eq3", "C_n"
            reasons.append("pure cycle: C = 3 exactly")
        else:
            verdict = "gt3"
            reasons.append("strictly contains a cycle, so C0 > 3")
    elif facts.max_degree <= 2:
        verdict, family = "leq3_strict", "L_n"
        reasons.append("path: C < 3")
    elif facts.max_degree >= 4:
        if facts.max_degree == 4 and g.n == 5 and facts.count_deg_ge3 == 1:
            verdict, family = "eq3", "D_hat_n"  # the 4-leaf star is the smallest D_hat
            reasons.append("4-leaf star: C = C0 = 3 exactly")
        else:
            verdict = "gt3"
            reasons.append("strictly contains the 4-leaf star, so C0 > 3")
    elif facts.count_deg_ge3 >= 2:
        if _is_d_hat(g):
            verdict, family = "eq3", "D_hat_n"
            reasons.append("D_hat tree: C = C0 = 3 exactly")
        else:
            verdict = "gt3"
            reasons.append("tree strictly containing a D_hat tree, so C0 > 3")
    else:
        center = next(v for v in range(g.n) if g.degree(v) == 3)
        legs = _leg_lengths(g, center)
        assert legs is not None  # single branch vertex, so every arm ends in a leaf
        if legs[:2] == [1, 1]:
            numeric = least_doubling(g, tol)
            if numeric.c_g < 3 - _D_STRICT_MARGIN:
                verdict, family = "leq3_strict", "D_n"
                reasons.append(
                    f"D-family tree: C <= 3 always, C = {numeric.c_g:.9f} < 3 numerically"
                )
            else:
                verdict, family = "eq3", "D_n"
                reasons.append("D-family tree: C <= 3 always, value within margin of 3")
        elif legs == [1, 2, 2]:
            verdict, family = "leq3_strict", "E6"
            reasons.append("E6 tree: C < 3")
        elif legs == [1, 2, 3]:
            verdict, family = "leq3_strict", "E7"
            reasons.append("E7 tree: C < 3")
        elif legs == [1, 2, 4]:
            verdict = "gt3"
            reasons.append(
                "E8 tree: spectral radius below 2 but C >= 3.0205833 "
                "(largest root of its ratio polynomial)"
            )
        elif legs in ([2, 2, 2], [1, 3, 3], [1, 2, 5]):
            verdict = "gt3"
            reasons.append(
                "extended tree with spectral radius exactly 2 but C > 3"
            )
        else:
            verdict = "gt3"
            reasons.append(
                "spider tree strictly containing an extended tree, so C0 > 3"
            )

    if cross_check:
        if numeric is None:
            numeric = least_doubling(g, tol)
        position = _position(numeric.c_g, margin=1e-6)
        if position != verdict:
            raise SolverError(
                f"classification {verdict} disagrees with optimizer "
                f"value {numeric.c_g} ({position})"
            )

    return ClassificationVerdict(verdict, family, tuple(reasons), numeric)


def _position(c_g: float, margin: float) -> str:
    if c_g < 3 - margin:
        return "leq3_strict"
    if c_g > 3 + margin:
        return "gt3"
    return "eq3"


_SMITH_FIXED = {
    "e6": 12,
    "e7": 18,
    "e8": 30,
}


def smith_c0_table(spec: FamilySpec) -> float:
    """Closed-form C0 for the spectral-radius-two catalog and its neighbors."""
    fam = spec.family
    if fam == "path":
        if spec.n is None or spec.n < 1:
            raise ValidationError("path needs n >= 1")
        return 1 + 2 * math.cos(math.pi / (spec.n + 1))
    if fam == "d_n":
        if spec.n is None or spec.n < 4:
            raise ValidationError("d_n needs n >= 4")
        return 1 + 2 * math.cos(math.pi / (2 * (spec.n - 1)))
    if fam in _SMITH_FIXED:
        return 1 + 2 * math.cos(math.pi / _SMITH_FIXED[fam])
    if fam in ("cycle", "d_hat_n", "e6_hat", "e7_hat", "e8_hat", "three_legs"):
        return 3.0
    raise ValidationError(f"no Smith closed form for family {fam!r}")
