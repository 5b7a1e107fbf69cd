"""Ghost series coefficients as multisets of zeros.

The ``i``-th coefficient ``g_i(w)`` vanishes at ``w_k`` exactly when
``d(k) < i < d(k) + d_p_new(k)``, and along that run of indices the
multiplicity climbs 1, 2, ... and falls back ..., 2, 1.  Coefficients are
kept symbolically; nothing is expanded over Z_p.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .dimdata import DimensionTable, RhobarDescriptor


class TableTooShort(ValueError):
    """A requested coefficient is not determined by the rows supplied."""


@dataclass(frozen=True)
class GhostZero:
    k: int
    multiplicity: int


@dataclass(frozen=True)
class GhostCoefficient:
    index: int
    zeros: tuple[GhostZero, ...]
    # True iff no weight above the table's K_max can add a zero here
    complete: bool

    @property
    def degree(self) -> int:
        return sum(z.multiplicity for z in self.zeros)

    def multiplicity_at(self, k: int) -> int:
        for z in self.zeros:
            if z.k == k:
                return z.multiplicity
        return 0


@dataclass(frozen=True)
class GhostSeries:
    descriptor: RhobarDescriptor
    coefficients: tuple[GhostCoefficient, ...]
    k_max: int
    first_extrapolated: int | None = None

    @property
    def p(self) -> int:
        return self.descriptor.p.p

    @property
    def b(self) -> int:
        return self.descriptor.b

    def __len__(self):
        return len(self.coefficients)

    def coefficient(self, i: int) -> GhostCoefficient:
        if not 1 <= i <= len(self.coefficients):
            raise IndexError(f"coefficient {i} not built (have 1..{len(self.coefficients)})")
        return self.coefficients[i - 1]

    @property
    def n_complete(self) -> int:
        """Length of the longest prefix g_1..g_n of complete coefficients."""
        n = 0
        for c in self.coefficients:
            if not c.complete:
                break
            n += 1
        return n

    def to_json(self) -> dict[str, Any]:
        out = {"descriptor": self.descriptor.to_json(), "k_max": self.k_max}
        if self.first_extrapolated is not None:
            out["first_extrapolated"] = self.first_extrapolated
        out["coefficients"] = [
            {
                "index": c.index,
                "zeros": [[z.k, z.multiplicity] for z in c.zeros],
                "complete": c.complete,
            }
            for c in self.coefficients
        ]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _multiplicity(i: int, d: int, d_new: int) -> int:
    if d < i < d + d_new:
        return min(i - d, d + d_new - i)
    return 0


def build_ghost(t: DimensionTable, n: int, complete_only: bool = False) -> GhostSeries:
    """Build ``g_1, ..., g_n`` from ``t``.

    A coefficient ``g_i`` is complete when the last row has ``d >= i``: ``d``
    is non-decreasing along the progression, so no later weight can satisfy
    ``d(k) < i``.  With ``complete_only`` an incomplete ``g_n`` raises
    :class:`TableTooShort`.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    t.descriptor.p.require_odd()
    last_d = t.rows[-1].d
    if complete_only and last_d < n:
        raise TableTooShort(
            f"table too short: g_{n} needs a row with d >= {n}, last row k = {t.k_max} has d = {last_d}"
        )
    coeffs = []
    for i in range(1, n + 1):
        zeros = tuple(
            GhostZero(r.k, m)
            for r in t.rows
            if (m := _multiplicity(i, r.d, r.d_p_new))
        )
        coeffs.append(GhostCoefficient(i, zeros, complete=last_d >= i))
    return GhostSeries(t.descriptor, tuple(coeffs), t.k_max, t.first_extrapolated)


def build_complete_ghost(t: DimensionTable) -> GhostSeries:
    """All coefficients the table determines (``n = d(K_max)``)."""
    n = t.rows[-1].d
    if n < 1:
        raise TableTooShort(f"no coefficient is complete: d(K_max = {t.k_max}) = 0")
    return build_ghost(t, n)


def multiplicity_profile(t: DimensionTable, k: int) -> list[int]:
    """Multiplicity of ``w_k`` in ``g_1, g_2, ...`` up to the last index that can vanish.

    The list has length ``d(k) + d_p_new(k) - 1``: ``d(k)`` leading zeros then
    the block 1, 2, ..., 2, 1 of length ``d_p_new(k) - 1``.
    """
    r = t.row(k)
    length = max(r.d + r.d_p_new - 1, 0)
    return [_multiplicity(i, r.d, r.d_p_new) for i in range(1, length + 1)]


def ghost_from_json(obj: dict[str, Any]) -> GhostSeries:
    from .dimdata import _descriptor_from_json

    desc = _descriptor_from_json(obj["descriptor"])
    coeffs = tuple(
        GhostCoefficient(
            c["index"],
            tuple(GhostZero(k, m) for k, m in c["zeros"]),
            bool(c["complete"]),
        )
        for c in obj["coefficients"]
    )
    return GhostSeries(desc, coeffs, obj["k_max"], obj.get("first_extrapolated"))
