"""Measures on graphs and evaluation of doubling constants.

The full doubling constant of a measure reduces, for finite diameter, to the
radius pairs ``(k, 2k+1)`` with ``0 <= k <= ceil((diam-1)/2)``; larger radii
are redundant because the balls saturate.  Computations run in float mode for
speed or exactly over ``fractions.Fraction`` when every weight is exact, which
is what certificate-grade comparisons at the C = 3 boundary use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ParseError, ValidationError
from .graphs import DistanceTable, Graph, ball_matrix, distances

Weight = float | int | Fraction


def max_radius_index(diam: int) -> int:
    """Largest radius index k needed: ceil((diam - 1) / 2), i.e. diam // 2."""
    return max(0, diam) // 2


@dataclass(frozen=True)
class Measure:
    """Strictly positive weight per vertex; ints/Fractions keep it exact."""

    weights: tuple[Weight, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValidationError("measure needs at least one weight")
        for i, w in enumerate(self.weights):
            if isinstance(w, float) and not np.isfinite(w):
                raise ValidationError(f"weight {i} is not finite")
            if w <= 0:
                raise ValidationError(f"weight {i} must be > 0, got {w}")

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, v: int) -> Weight:
        return self.weights[v]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(w, Rational) for w in self.weights)

    @property
    def total(self) -> Weight:
        return sum(self.weights)

    def mass(self, vertices) -> Weight:
        return sum(self.weights[v] for v in vertices)

    def scaled(self, alpha: Weight) -> "Measure":
        return Measure(tuple(alpha * w for w in self.weights))

    def plus(self, other: "Measure") -> "Measure":
        if len(other) != len(self):
            raise ValidationError("measure lengths differ")
        return Measure(tuple(a + b for a, b in zip(self.weights, other.weights)))

    def as_array(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights], dtype=np.float64)

    @classmethod
    def of(cls, weights: Sequence[Weight]) -> "Measure":
        return cls(tuple(weights))


def counting_measure(g: Graph) -> Measure:
    """Weight 1 on every vertex (exact)."""
    return Measure((1,) * g.n)


class PerRadius(NamedTuple):
    k: int
    value: Weight
    witness: int


@dataclass(frozen=True)
class DoublingReport:
    """C_mu together with the per-radius restricted constants and witnesses."""

    c_mu: Weight
    per_k: tuple[PerRadius, ...]
    k_max: int

    @property
    def is_exact(self) -> bool:
        return isinstance(self.c_mu, Rational)


def _check_measure(g: Graph, mu: Measure) -> None:
    if len(mu) != g.n:
        raise ValidationError(f"measure has {len(mu)} weights for a {g.n}-vertex graph")


def restricted_constant(
    g: Graph, dt: DistanceTable, mu: Measure, k: int
) -> tuple[Weight, int]:
    """max over centers v of mu(B(v, 2k+1)) / mu(B(v, k)), with its witness.

    Ties go to the smallest vertex index.  Exact measures give exact ratios.
    """
    _check_measure(g, mu)
    kmax = max_radius_index(dt.diam)
    if not 0 <= k <= kmax:
        raise ValidationError(f"radius index {k} outside 0..{kmax}")
    if mu.is_exact:
        dist = dt.dist
        best: Fraction | None = None
        witness = 0
        for v in range(g.n):
            row = dist[v]
            num = Fraction(sum(mu[w] for w in np.flatnonzero(row <= 2 * k + 1)))
            den = Fraction(sum(mu[w] for w in np.flatnonzero(row <= k)))
            ratio = num / den
            if best is None or ratio > best:
                best, witness = ratio, v
        assert best is not None
        return best, witness
    w = mu.as_array()
    num = ball_matrix(dt, 2 * k + 1) @ w
    den = ball_matrix(dt, k) @ w
    ratios = num / den
    witness = int(np.argmax(ratios))
    return float(ratios[witness]), witness


def doubling_report(g: Graph, dt: DistanceTable, mu: Measure) -> DoublingReport:
    """Evaluate every restricted constant; C_mu is their maximum."""
    _check_measure(g, mu)
    kmax = max_radius_index(dt.diam)
    per_k = tuple(
        PerRadius(k, *restricted_constant(g, dt, mu, k)) for k in range(kmax + 1)
    )
    return DoublingReport(max(p.value for p in per_k), per_k, kmax)


def full_constant(g: Graph, mu: Measure, dt: DistanceTable | None = None) -> Weight:
    """Convenience: C_mu without the per-radius breakdown."""
    if dt is None:
        dt = distances(g)
    return doubling_report(g, dt, mu).c_mu


class MediantResult(NamedTuple):
    value: Weight
    mediant: Weight
    equal: bool


def mediant_max(pairs: Sequence[tuple[Weight, Weight]]) -> MediantResult:
    """Largest ratio among positive (numerator, denominator) pairs.

    Always >= the mediant (sum of numerators over sum of denominators), with
    equality exactly when all ratios coincide.
    """
    if not pairs:
        raise ValidationError("mediant_max needs at least one pair")
    exact = all(
        isinstance(a, Rational) and isinstance(b, Rational) for a, b in pairs
    )
    ratios: list[Weight] = []
    for a, b in pairs:
        if a <= 0 or b <= 0:
            raise ValidationError(f"non-positive entry in pair ({a}, {b})")
        ratios.append(Fraction(a) / Fraction(b) if exact else a / b)
    value = max(ratios)
    if exact:
        mediant = Fraction(sum(a for a, _ in pairs)) / Fraction(sum(b for _, b in pairs))
        equal = all(r == value for r in ratios)
    else:
        mediant = sum(a for a, _ in pairs) / sum(b for _, b in pairs)
        equal = all(abs(r - value) <= 1e-12 * abs(value) for r in ratios)
    return MediantResult(value, mediant, equal)


def _parse_weight(token: str) -> Weight:
    if "/" in token:
        num, _, den = token.partition("/")
        try:
            return Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad fraction weight {token!r}") from exc
    try:
        if token.isdigit() or (token.startswith("-") and token[1:].isdigit()):
            return int(token)
        return float(token)
    except ValueError as exc:
        raise ParseError(f"bad weight {token!r}") from exc


def load_measure_text(text: str, g: Graph) -> Measure:
    """Read 'vertex weight' lines; weights are decimals or fractions 'p/q'.

    Vertices are matched against the graph's labels when present, else
    interpreted as dense indices.  Every vertex must get exactly one weight.
    """
    by_label = (
        {lab: i for i, lab in enumerate(g.labels)} if g.labels is not None else None
    )
    weights: dict[int, Weight] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'vertex weight', got {raw!r}")
        token, wtok = parts
        if by_label is not None and token in by_label:
            v = by_label[token]
        else:
            try:
                v = int(token)
            except ValueError as exc:
                raise ParseError(f"line {lineno}: unknown vertex {token!r}") from exc
            if not 0 <= v < g.n:
                raise ParseError(f"line {lineno}: vertex {v} out of range")
        if v in weights:
            raise ParseError(f"line {lineno}: duplicate weight for vertex {token!r}")
        weights[v] = _parse_weight(wtok)
    missing = [v for v in range(g.n) if v not in weights]
    if missing:
        raise ParseError(f"missing weights for vertices {missing}")
    return Measure(tuple(weights[v] for v in range(g.n)))


def dump_measure_text(mu: Measure, g: Graph) -> str:
    lines = []
    for v, w in enumerate(mu.weights):
        token = g.label_of(v)
        if isinstance(w, Fraction):
            lines.append(f"{token} {w.numerator}/{w.denominator}")
        else:
            lines.append(f"{token} {w!r}")
    return "\n".join(lines) + "\n"
