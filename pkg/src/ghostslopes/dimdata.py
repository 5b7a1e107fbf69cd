"""Dimension tables d(k), d_p(k) for one twist of a mod-p representation.

Tables are data, supplied from outside (a CAS or published tables), and are
validated on ingestion.  The JSON schema is::

    {"label": "...", "p": 5, "N": 3, "b": 3, "twist_index": 0,
     "notes": "...", "rows": [[3, 0, 2], [7, 1, 4], ...]}

with each row ``[k, d, d_p]``; ``d_p_new = d_p - 2 d`` is always derived.
A row may carry a fourth entry ``true`` to mark it as extrapolated.  A family
file holds one table per twist::

    {"label": "...", "p": 5, "N": 3, "tables": [{"twist_index": 0, "b": 3,
     "rows": [...]}, ...]}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .padic import Prime, as_prime


class DimensionTableError(ValueError):
    """Base class for table validation failures."""


class SchemaError(DimensionTableError):
    pass


class NegativeNewDimension(DimensionTableError):
    """d_p - 2d is negative."""


class MonotonicityError(DimensionTableError):
    """d(b + n(p-1)) decreases somewhere."""


class ProgressionGapError(DimensionTableError):
    """Rows are empty, start late, or skip a weight of the progression."""


class ComponentError(DimensionTableError):
    """A row with d != 0 sits off the weight component k = b mod p-1."""


class TailNotAffine(DimensionTableError):
    """The last rows of a table do not lie on one affine function of k."""


@dataclass(frozen=True)
class RhobarDescriptor:
    label: str
    p: Prime
    N: int
    b: int
    twist_index: int = 0
    notes: str = ""

    def __post_init__(self):
        p = as_prime(self.p, allow_small=True)
        object.__setattr__(self, "p", p)
        if self.N < 1:
            raise SchemaError(f"N must be positive, got {self.N}")
        if math.gcd(self.N, p.p) != 1:
            raise SchemaError(f"N = {self.N} is not co-prime to p = {p.p}")
        if not 2 <= self.b <= p.p:
            raise SchemaError(f"b = {self.b} outside [2, {p.p}]")
        object.__setattr__(self, "twist_index", self.twist_index % (p.p - 1))

    def to_json(self) -> dict[str, Any]:
        out = {
            "label": self.label,
            "p": self.p.p,
            "N": self.N,
            "b": self.b,
            "twist_index": self.twist_index,
        }
        if self.notes:
            out["notes"] = self.notes
        return out


@dataclass(frozen=True)
class DimensionRow:
    k: int
    d: int
    d_p: int
    extrapolated: bool = False

    @property
    def d_p_new(self) -> int:
        return self.d_p - 2 * self.d


@dataclass(frozen=True)
class DimensionTable:
    descriptor: RhobarDescriptor
    rows: tuple[DimensionRow, ...]
    _by_k: dict[int, DimensionRow] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        validate_rows(self.descriptor, self.rows)
        object.__setattr__(self, "_by_k", {r.k: r for r in self.rows})

    @property
    def p(self) -> int:
        return self.descriptor.p.p

    @property
    def b(self) -> int:
        return self.descriptor.b

    @property
    def k_max(self) -> int:
        return self.rows[-1].k

    @property
    def first_extrapolated(self) -> int | None:
        for r in self.rows:
            if r.extrapolated:
                return r.k
        return None

    def row(self, k: int) -> DimensionRow:
        try:
            return self._by_k[k]
        except KeyError:
            raise KeyError(f"weight {k} is not a row of table {self.descriptor.label!r}") from None

    def __contains__(self, k: int) -> bool:
        return k in self._by_k

    def d(self, k: int) -> int:
        return self.row(k).d

    def d_p(self, k: int) -> int:
        return self.row(k).d_p

    def in_component(self, k: int) -> bool:
        return (k - self.b) % (self.p - 1) == 0

    def to_json(self) -> dict[str, Any]:
        out = self.descriptor.to_json()
        out["rows"] = [
            [r.k, r.d, r.d_p, True] if r.extrapolated else [r.k, r.d, r.d_p]
            for r in self.rows
        ]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def validate_rows(desc: RhobarDescriptor, rows: Iterable[DimensionRow]) -> None:
    rows = list(rows)
    p, b = desc.p.p, desc.b
    if not rows:
        raise ProgressionGapError("gap/empty table: no rows")
    for r in rows:
        if r.k < 2 or r.d < 0 or r.d_p < 0:
            raise SchemaError(f"row {r}: need k >= 2, d >= 0, d_p >= 0")
        if (r.k - b) % (p - 1):
            if r.d != 0:
                raise ComponentError(
                    f"k = {r.k} has d = {r.d} != 0 but k is not = b = {b} mod {p - 1}"
                )
            raise ProgressionGapError(f"k = {r.k} is not on the progression b = {b} mod {p - 1}")
        if r.d_p_new < 0:
            raise NegativeNewDimension(
                f"k = {r.k}: d_p - 2d = {r.d_p} - {2 * r.d} is negative"
            )
    # the least weight >= 2 congruent to b is b itself since 2 <= b <= p
    if rows[0].k != b:
        raise ProgressionGapError(f"table starts at k = {rows[0].k}, expected k = {b}")
    for prev, cur in zip(rows, rows[1:]):
        if cur.k != prev.k + (p - 1):
            raise ProgressionGapError(f"gap between k = {prev.k} and k = {cur.k}")
        if cur.d < prev.d:
            raise MonotonicityError(
                f"d decreases from {prev.d} (k = {prev.k}) to {cur.d} (k = {cur.k})"
            )


def _row_from_json(item: Any) -> DimensionRow:
    if not isinstance(item, (list, tuple)) or len(item) not in (3, 4):
        raise SchemaError(f"row must be [k, d, d_p] (optionally + extrapolated flag), got {item!r}")
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in item[:3]):
        raise SchemaError(f"row entries must be integers, got {item!r}")
    extrapolated = bool(item[3]) if len(item) == 4 else False
    return DimensionRow(item[0], item[1], item[2], extrapolated)


def _descriptor_from_json(obj: dict, defaults: dict | None = None) -> RhobarDescriptor:
    merged = dict(defaults or {})
    merged.update(obj)
    for key in ("p", "N", "b"):
        if key not in merged:
            raise SchemaError(f"missing field {key!r}")
        if not isinstance(merged[key], int) or isinstance(merged[key], bool):
            raise SchemaError(f"field {key!r} must be an integer")
    try:
        p = Prime(merged["p"], allow_small=True)
    except ValueError as e:
        raise SchemaError(str(e)) from None
    return RhobarDescriptor(
        label=str(merged.get("label", "")),
        p=p,
        N=merged["N"],
        b=merged["b"],
        twist_index=int(merged.get("twist_index", 0)),
        notes=str(merged.get("notes", "")),
    )


def _load(source: str | Path | dict) -> dict:
    if isinstance(source, dict):
        return source
    if isinstance(source, Path):
        source = source.read_text(encoding="utf-8")
    try:
        obj = json.loads(source)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    return obj


def ingest_table(source: str | Path | dict) -> DimensionTable:
    """Parse and validate one table from JSON text, a path or a decoded dict."""
    obj = _load(source)
    if "rows" not in obj or not isinstance(obj["rows"], list):
        raise SchemaError("missing 'rows' array")
    desc = _descriptor_from_json(obj)
    rows = [_row_from_json(r) for r in obj["rows"]]
    return DimensionTable(desc, tuple(rows))


def ingest_family(source: str | Path | dict) -> dict[int, DimensionTable]:
    """Parse a family file: one table per twist index 0..p-2."""
    obj = _load(source)
    tables = obj.get("tables")
    if not isinstance(tables, list):
        raise SchemaError("family file needs a 'tables' array")
    shared = {k: v for k, v in obj.items() if k != "tables"}
    out: dict[int, DimensionTable] = {}
    for entry in tables:
        if not isinstance(entry, dict) or "rows" not in entry:
            raise SchemaError("each family entry needs 'rows'")
        desc = _descriptor_from_json({k: v for k, v in entry.items() if k != "rows"}, shared)
        if desc.twist_index in out:
            raise SchemaError(f"duplicate twist index {desc.twist_index}")
        out[desc.twist_index] = DimensionTable(desc, tuple(_row_from_json(r) for r in entry["rows"]))
    p = next(iter(out.values())).p if out else None
    if p is None or sorted(out) != list(range(p - 1)):
        raise SchemaError(f"family must have one table per twist index 0..p-2, got {sorted(out)}")
    return out


def load_table(path: str | Path) -> DimensionTable:
    return ingest_table(Path(path))


def _affine_fit(ks: list[int], ys: list[int]) -> tuple[Fraction, Fraction] | None:
    slope = Fraction(ys[-1] - ys[0], ks[-1] - ks[0])
    intercept = ys[0] - slope * ks[0]
    if all(slope * k + intercept == y for k, y in zip(ks, ys)):
        return slope, intercept
    return None


def extend_table(t: DimensionTable, target_K: int, fit_window: int = 4) -> DimensionTable:
    """Continue ``t`` to weight ``target_K`` by an exact affine fit of its tail.

    Both ``d`` and ``d_p`` must agree exactly with one affine function of
    ``k`` on the last ``fit_window`` rows; otherwise :class:`TailNotAffine`
    is raised.  Supplied rows are kept as-is and new rows are flagged
    ``extrapolated``.
    """
    if fit_window < 3:
        raise ValueError("fit_window must be at least 3")
    if len(t.rows) < fit_window + 2:
        raise ValueError(
            f"need at least {fit_window + 2} rows to fit a window of {fit_window}, have {len(t.rows)}"
        )
    window = t.rows[-fit_window:]
    ks = [r.k for r in window]
    fit_d = _affine_fit(ks, [r.d for r in window])
    fit_dp = _affine_fit(ks, [r.d_p for r in window])
    if fit_d is None or fit_dp is None:
        which = "d" if fit_d is None else "d_p"
        raise TailNotAffine(
            f"tail not affine: {which} over k = {ks} is not affine; supply rows to larger K"
        )
    rows = list(t.rows)
    k = t.k_max + (t.p - 1)
    while k <= target_K:
        d = fit_d[0] * k + fit_d[1]
        d_p = fit_dp[0] * k + fit_dp[1]
        if d.denominator != 1 or d_p.denominator != 1:
            raise TailNotAffine(f"affine continuation is not integral at k = {k}")
        rows.append(DimensionRow(k, int(d), int(d_p), extrapolated=True))
        k += t.p - 1
    return DimensionTable(t.descriptor, tuple(rows))


def with_rows(t: DimensionTable, rows: Iterable[DimensionRow]) -> DimensionTable:
    return replace(t, rows=tuple(rows))
