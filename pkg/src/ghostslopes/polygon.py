"""Newton polygons of ghost series specialized at a weight."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .ghost import GhostSeries
from .padic import (
    INFINITY,
    ArithmeticWeight,
    Valuation,
    Weight,
    format_valuation,
    vp_weight_difference,
)


class IncompleteCoefficient(ValueError):
    pass


class OffComponentWeight(ValueError):
    pass


class InsufficientLength(ValueError):
    pass


@dataclass(frozen=True)
class PolygonPoint:
    index: int
    val: Valuation


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple[PolygonPoint, ...]
    # run-length encoded: (slope, horizontal length)
    slopes: tuple[tuple[Fraction, int], ...]

    @property
    def length(self) -> int:
        return sum(n for _, n in self.slopes)

    @property
    def is_degenerate(self) -> bool:
        return not self.slopes

    def expanded_slopes(self) -> list[Fraction]:
        return [s for s, n in self.slopes for _ in range(n)]

    def to_json(self) -> dict:
        return {
            "vertices": [[v.index, str(v.val)] for v in self.vertices],
            "slopes": [[str(s), n] for s, n in self.slopes],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def table(self) -> str:
        lines = ["vertex  index  valuation"]
        for j, v in enumerate(self.vertices):
            lines.append(f"{j:>6}  {v.index:>5}  {v.val}")
        lines.append("")
        lines.append("slope        length")
        for s, n in self.slopes:
            lines.append(f"{str(s):<12} {n}")
        return "\n".join(lines)


def evaluate_valuations(
    g: GhostSeries,
    w: Weight | int,
    n: int | None = None,
    allow_off_component: bool = False,
) -> list[PolygonPoint]:
    """Valuations of ``1, g_1(w), ..., g_n(w)`` (``n`` defaults to all complete).

    ``v(g_i(w)) = sum over zeros (k, m) of m * v(w - w_k)``; it is infinite
    exactly when ``w`` is one of the zeros.
    """
    if isinstance(w, int):
        w = ArithmeticWeight(w)
    if n is None:
        n = g.n_complete
    if n > len(g):
        raise IncompleteCoefficient(f"g_{n} was not built (have {len(g)})")
    if (
        isinstance(w, ArithmeticWeight)
        and not allow_off_component
        and (w.k - g.b) % (g.p - 1)
    ):
        raise OffComponentWeight(
            f"k = {w.k} is not in the component b = {g.b} mod {g.p - 1}"
        )
    points = [PolygonPoint(0, Fraction(0))]
    for c in g.coefficients[:n]:
        if not c.complete:
            raise IncompleteCoefficient(
                f"g_{c.index} is incomplete at K_max = {g.k_max}; extend the table"
            )
        total: Valuation = Fraction(0)
        for z in c.zeros:
            total = total + z.multiplicity * vp_weight_difference(w, z.k, g.p)
        points.append(PolygonPoint(c.index, INFINITY if total == INFINITY else total))
    return points


def _cross(o: PolygonPoint, a: PolygonPoint, b: PolygonPoint) -> Fraction:
    return (a.index - o.index) * (b.val - o.val) - (a.val - o.val) * (b.index - o.index)


def lower_hull(points: Iterable[PolygonPoint]) -> NewtonPolygon:
    """Lower convex hull of the finite points, by Andrew's monotone chain.

    Points with infinite valuation are dropped.  Collinear interior points
    are not vertices, so each slope appears in exactly one run.
    """
    pts = sorted((pt for pt in points if pt.val != INFINITY), key=lambda pt: pt.index)
    indices = [pt.index for pt in pts]
    if len(set(indices)) != len(indices):
        raise ValueError("point indices must be distinct")
    if not any(pt.index == 0 and pt.val == 0 for pt in pts):
        raise ValueError("the point (0, 0) must be present")
    hull: list[PolygonPoint] = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    slopes = [
        (Fraction(b.val - a.val) / (b.index - a.index), b.index - a.index)
        for a, b in zip(hull, hull[1:])
    ]
    return NewtonPolygon(tuple(hull), tuple(slopes))


def first_slopes(np: NewtonPolygon, count: int) -> list[Fraction]:
    """The first ``count`` slopes with multiplicity, non-decreasing."""
    if count > np.length or (count > 0 and np.is_degenerate):
        raise InsufficientLength(f"polygon has length {np.length}, asked for {count} slopes")
    return np.expanded_slopes()[:count]


def ghost_polygon(
    g: GhostSeries, w: Weight | int, n: int | None = None, allow_off_component: bool = False
) -> NewtonPolygon:
    return lower_hull(evaluate_valuations(g, w, n, allow_off_component))


def points_file(points: Sequence[PolygonPoint], sep: str = "\t") -> str:
    """Two-column ``index<sep>valuation`` text; infinite valuations are written ``inf``."""
    lines = [f"index{sep}valuation"]
    lines += [f"{pt.index}{sep}{format_valuation(pt.val)}" for pt in points]
    return "\n".join(lines) + "\n"
