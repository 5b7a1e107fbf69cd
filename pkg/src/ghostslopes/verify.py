"""Checks of ghost-series predictions against externally computed slopes.

Slope files are JSON::

    {"label": "...", "p": 5, "N": 3, "b": 3, "twist_index": 0,
     "flavor": "Up-level-Np", "provenance": "...",
     "entries": {"7": ["5/2", "5/2", "3", "3"]}}

``flavor`` is ``"Tp-level-N"`` (slopes of T_p on level N forms) or
``"Up-level-Np"`` (slopes of U_p at level Np).  Slopes are exact rationals
written as ``"a"`` or ``"a/b"``; decimals are rejected.  A twist family file
replaces ``b``/``twist_index``/``entries`` by ``"twists": [{"twist_index": j,
"b": ..., "entries": {...}}, ...]``.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .dimdata import DimensionTable, RhobarDescriptor, SchemaError, _descriptor_from_json
from .ghost import GhostSeries
from .localrep import LocalRep, b_of, is_irregular
from .padic import Prime, as_prime
from .polygon import NewtonPolygon, first_slopes, ghost_polygon

TP = "Tp-level-N"
UP = "Up-level-Np"
FLAVORS = (TP, UP)

_RATIONAL = re.compile(r"^\s*(\d+)(?:\s*/\s*(\d+))?\s*$")


class CoverageError(ValueError):
    """Required weights or coefficients are missing."""


class CrossFlavorError(ValueError):
    """A check was handed a dataset of the wrong flavor."""


class DatasetError(ValueError):
    pass


class Status(str, Enum):
    CONSISTENT = "consistent"
    FALSIFIED = "falsified"
    INCONCLUSIVE = "inconclusive"
    REGULAR = "regular"
    IRREGULAR = "irregular"
    INAPPLICABLE = "inapplicable"
    NOT_APPLICABLE = "not applicable"

    @property
    def exit_code(self) -> int:
        if self in (Status.CONSISTENT, Status.REGULAR):
            return 0
        if self in (Status.FALSIFIED, Status.IRREGULAR):
            return 2
        return 3


@dataclass
class Verdict:
    status: Status
    check: str
    witness: str | None = None
    weight: int | None = None
    evidence: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status is Status.FALSIFIED and (self.witness is None or self.weight is None):
            raise ValueError("falsified verdicts need a weight and a witness")

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "status": self.status.value,
            "weight": self.weight,
            "witness": self.witness,
            "evidence": _jsonable(self.evidence),
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        line = f"{self.check}: {self.status.value}"
        if self.witness:
            line += f" -- {self.witness}"
        return line


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def parse_slope(value: Any) -> Fraction:
    """Exact non-negative rational from ``"5/2"``, ``"3"`` or a JSON integer."""
    if isinstance(value, bool):
        raise DatasetError(f"not a slope: {value!r}")
    if isinstance(value, int):
        if value < 0:
            raise DatasetError(f"slopes are non-negative, got {value}")
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if m:
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise DatasetError(f"zero denominator in {value!r}")
            return Fraction(int(m.group(1)), den)
    raise DatasetError(f"slopes must be exact rationals 'a' or 'a/b', got {value!r}")


@dataclass(frozen=True, eq=False)
class SlopeDataset:
    descriptor: RhobarDescriptor
    flavor: str
    entries: Mapping[int, tuple[Fraction, ...]]
    provenance: str = ""

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise DatasetError(f"flavor must be one of {FLAVORS}, got {self.flavor!r}")
        clean = {}
        for k, slopes in self.entries.items():
            vals = tuple(sorted(Fraction(s) for s in slopes))
            if any(s < 0 for s in vals):
                raise DatasetError(f"negative slope at weight {k}")
            clean[int(k)] = vals
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __eq__(self, other):
        if not isinstance(other, SlopeDataset):
            return NotImplemented
        return (self.descriptor, self.flavor, self.entries) == (
            other.descriptor, other.flavor, other.entries
        )

    def slopes(self, k: int) -> tuple[Fraction, ...]:
        try:
            return self.entries[k]
        except KeyError:
            raise CoverageError(f"dataset has no entry for weight {k}") from None

    def to_json(self) -> dict[str, Any]:
        out = self.descriptor.to_json()
        out["flavor"] = self.flavor
        if self.provenance:
            out["provenance"] = self.provenance
        out["entries"] = {str(k): [str(s) for s in v] for k, v in self.entries.items()}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _entries_from_json(obj: Any) -> dict[int, list[Fraction]]:
    if not isinstance(obj, dict):
        raise DatasetError("'entries' must be an object mapping weights to slope arrays")
    out = {}
    for key, slopes in obj.items():
        try:
            k = int(key)
        except ValueError:
            raise DatasetError(f"weight key {key!r} is not an integer") from None
        if not isinstance(slopes, list):
            raise DatasetError(f"entries[{key}] must be an array")
        out[k] = [parse_slope(s) for s in slopes]
    return out


def _load_json(source: str | Path | dict) -> dict:
    if isinstance(source, dict):
        return source
    if isinstance(source, Path):
        source = source.read_text(encoding="utf-8")
    try:
        obj = json.loads(source)
    except json.JSONDecodeError as e:
        raise DatasetError(f"not valid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise DatasetError("top level must be an object")
    return obj


def ingest_slopes(source: str | Path | dict) -> SlopeDataset:
    obj = _load_json(source)
    if "entries" not in obj:
        raise DatasetError("missing 'entries'")
    try:
        desc = _descriptor_from_json({k: v for k, v in obj.items() if k not in ("entries", "flavor")})
    except SchemaError as e:
        raise DatasetError(str(e)) from None
    return SlopeDataset(desc, obj.get("flavor", ""), _entries_from_json(obj["entries"]),
                        str(obj.get("provenance", "")))


def ingest_slope_family(source: str | Path | dict) -> list[SlopeDataset]:
    """A single dataset or a ``"twists"`` family, as a list."""
    obj = _load_json(source)
    if "twists" not in obj:
        return [ingest_slopes(obj)]
    shared = {k: v for k, v in obj.items() if k != "twists"}
    out = []
    for entry in obj["twists"]:
        merged = dict(shared)
        merged.update(entry)
        out.append(ingest_slopes(merged))
    return out


def check_against_table(s: SlopeDataset, t: DimensionTable) -> None:
    """Each entry has ``d(k)`` (Tp) or ``d_p(k)`` (Up) slopes."""
    for k, slopes in s.entries.items():
        if k not in t:
            raise CoverageError(f"weight {k} is not a row of the dimension table")
        want = t.d(k) if s.flavor == TP else t.d_p(k)
        if len(slopes) != want:
            name = "d" if s.flavor == TP else "d_p"
            raise DatasetError(f"weight {k}: {len(slopes)} slopes but {name}({k}) = {want}")


def _notes(g: GhostSeries) -> list[str]:
    notes = []
    if g.descriptor.p.note:
        notes.append(g.descriptor.p.note)
    if g.first_extrapolated is not None:
        notes.append(f"table rows from k = {g.first_extrapolated} on are extrapolated")
    return notes


def predicted_classical_slopes(g: GhostSeries, t: DimensionTable, k: int) -> list[Fraction]:
    """The first ``d(k)`` slopes of the ghost polygon at ``w_k``."""
    d = t.d(k)
    if d > g.n_complete:
        raise CoverageError(
            f"ghost is complete through g_{g.n_complete} only; weight {k} needs g_{d}"
        )
    if d == 0:
        return []
    return first_slopes(ghost_polygon(g, k), d)


def compare_classical(
    g: GhostSeries, t: DimensionTable, s: SlopeDataset, weights: Iterable[int] | None = None
) -> Verdict:
    """T_p slopes in weight ``k`` must equal the first ``d(k)`` ghost slopes at ``w_k``."""
    if s.flavor != TP:
        raise CrossFlavorError(f"compare_classical needs a {TP} dataset, got {s.flavor}")
    weights = sorted(s.entries) if weights is None else list(weights)
    per_weight = {}
    for k in weights:
        observed = list(s.slopes(k))
        if k not in t:
            raise CoverageError(f"weight {k} is not a row of the dimension table")
        if len(observed) != t.d(k):
            raise DatasetError(f"weight {k}: {len(observed)} slopes but d({k}) = {t.d(k)}")
        predicted = predicted_classical_slopes(g, t, k)
        per_weight[k] = {"predicted": predicted, "observed": observed}
        if predicted != observed:
            diff = (Counter(predicted) - Counter(observed)) + (Counter(observed) - Counter(predicted))
            return Verdict(
                Status.FALSIFIED, "compare-classical",
                witness=(
                    f"weight {k}: ghost predicts {_fmt(predicted)} but classical slopes are "
                    f"{_fmt(observed)} (differ at {_fmt(sorted(diff))})"
                ),
                weight=k, evidence={"weights": per_weight}, notes=_notes(g),
            )
    return Verdict(Status.CONSISTENT, "compare-classical",
                   evidence={"weights": per_weight}, notes=_notes(g))


def _fmt(slopes: Sequence[Fraction]) -> str:
    return "[" + ", ".join(str(x) for x in slopes) + "]"


def _least_slope_bound(np: NewtonPolygon) -> Fraction | None:
    # the hull of a prefix of the points has first slope >= that of the full hull
    return np.slopes[0][0] if np.slopes else None


def _least_slope_witness(bound: Fraction, k: int, observed: Sequence[Fraction]) -> str:
    if observed:
        return f"ghost least slope ≤ {bound} at w_{k} vs min classical {min(observed)}"
    return f"ghost least slope ≤ {bound} at w_{k} vs no classical slopes"


def coleman_consistency(g: GhostSeries, t: DimensionTable, s: SlopeDataset, k: int) -> Verdict:
    """Ghost slopes below ``k - 1`` must occur among the U_p slopes of weight ``k``.

    An overconvergent eigenform of weight ``k`` and slope ``< k - 1`` is
    classical (the cutoff is taken strict).  Two tests run: the rigorous
    least-slope bound, then the sub-multiset test on the first
    ``min(length, d_p(k))`` ghost slopes, with equality required when the
    computed polygon reaches length ``d_p(k)``.
    """
    if s.flavor != UP:
        raise CrossFlavorError(f"coleman_consistency needs a {UP} dataset, got {s.flavor}")
    observed = list(s.slopes(k))
    if k not in t:
        raise CoverageError(f"weight {k} is not a row of the dimension table")
    cutoff = k - 1
    notes = _notes(g)
    if g.n_complete == 0:
        return Verdict(Status.INCONCLUSIVE, "coleman", weight=k,
                       notes=notes + ["no complete ghost coefficient"])
    np = ghost_polygon(g, k)
    bound = _least_slope_bound(np)
    obs_low = [x for x in observed if x < cutoff]
    evidence = {
        "coefficients_used": g.n_complete,
        "ghost_slopes": np.expanded_slopes(),
        "classical_below_cutoff": obs_low,
        "cutoff": cutoff,
    }
    if bound is not None and bound < cutoff and not any(x <= bound for x in obs_low):
        return Verdict(Status.FALSIFIED, "coleman", weight=k,
                       witness=_least_slope_witness(bound, k, observed),
                       evidence=evidence, notes=notes)
    d_p = t.d_p(k)
    ghost = np.expanded_slopes()[:d_p]
    ghost_low = [x for x in ghost if x < cutoff]
    missing = Counter(ghost_low) - Counter(obs_low)
    if missing:
        x = min(missing)
        return Verdict(Status.FALSIFIED, "coleman", weight=k,
                       witness=f"ghost slope {x} < {cutoff} at w_{k} is not among classical slopes {_fmt(observed)}",
                       evidence=evidence, notes=notes)
    if len(ghost) >= d_p:
        extra = Counter(obs_low) - Counter(ghost_low)
        if extra:
            x = min(extra)
            return Verdict(Status.FALSIFIED, "coleman", weight=k,
                           witness=f"classical slope {x} < {cutoff} in weight {k} is not a ghost slope",
                           evidence=evidence, notes=notes)
    else:
        notes.append(f"ghost polygon has length {len(ghost)} < d_p({k}) = {d_p}; sub-multiset test only")
    return Verdict(Status.CONSISTENT, "coleman", weight=k, evidence=evidence, notes=notes)


def regularity_from_slopes(
    low_weight: SlopeDataset | Iterable[SlopeDataset], p: int | Prime
) -> Verdict:
    """Decide regularity from T_p slopes of all twists in weights 2..p+2.

    Regular iff weights 2..p+1 are all ordinary and weight p+2 slopes are 0
    or 1.  Failure proves irregularity for every p; success proves
    regularity for p >= 3.
    """
    p = as_prime(p, allow_small=True)
    datasets = [low_weight] if isinstance(low_weight, SlopeDataset) else list(low_weight)
    agg: dict[int, list[Fraction]] = {}
    for s in datasets:
        if s.flavor != TP:
            raise CrossFlavorError(f"regularity needs {TP} data, got {s.flavor}")
        if s.descriptor.p.p != p.p:
            raise DatasetError(f"dataset prime {s.descriptor.p.p} != {p.p}")
        for k, slopes in s.entries.items():
            agg.setdefault(k, []).extend(slopes)
    q = p.p
    missing = [k for k in range(2, q + 3) if k not in agg]
    if missing:
        raise CoverageError(f"missing weights {missing} in [2, {q + 2}]")
    evidence = {"weights": {k: sorted(agg[k]) for k in range(2, q + 3)}}
    notes = [p.note] if p.note else []
    for k in range(2, q + 2):
        bad = [x for x in agg[k] if x != 0]
        if bad:
            return Verdict(
                Status.IRREGULAR, "check-regular", weight=k,
                witness=f"weight {k} <= p+1 has non-ordinary slope {min(bad)}",
                evidence=evidence, notes=notes,
            )
    bad = [x for x in agg[q + 2] if x not in (0, 1)]
    if bad:
        return Verdict(
            Status.IRREGULAR, "check-regular", weight=q + 2,
            witness=f"weight p+2 = {q + 2} has slope {min(bad)} not in {{0, 1}}",
            evidence=evidence, notes=notes,
        )
    if q < 3:
        return Verdict(Status.INCONCLUSIVE, "check-regular", evidence=evidence,
                       notes=notes + ["low-weight condition holds but implies regularity only for p >= 3"])
    return Verdict(Status.REGULAR, "check-regular", evidence=evidence, notes=notes)


def prop33_falsifier(
    g: GhostSeries, t: DimensionTable, r: LocalRep, s: SlopeDataset
) -> Verdict:
    """Detectors showing the ghost series of an irregular representation fails.

    (i)  The first ``d(b)`` ghost slopes at ``w_b`` are 0 at every weight, so
         a non-ordinary classical form in weight ``b`` contradicts the ghost.
    (ii) The least ghost slope at ``w_{p+2}`` is bounded by the first hull
         slope; classical slopes all above it contradict the ghost (slopes
         below ``p+1`` are classical).

    The detector matching the irregularity clause ((i) for 2a, (ii) for 2b)
    needs its weight in ``s``; the other runs when data allow.
    """
    reg = is_irregular(r)
    if not reg.irregular:
        return Verdict(Status.NOT_APPLICABLE, "prop33", notes=[f"representation is {reg.reason}"])
    if b_of(r) != t.b:
        raise ValueError(f"b(rho) = {b_of(r)} does not match the table's b = {t.b}")
    p, b = t.p, t.b
    notes = _notes(g) + [f"irregular by clause ({reg.clause}): {reg.reason}"]
    evidence: dict[str, Any] = {"clause": reg.clause}

    # (i) ordinary prefix at weight b
    if b in s.entries:
        d = t.d(b)
        if d > g.n_complete:
            raise CoverageError(f"detector (i) needs g_1..g_{d}, have {g.n_complete} complete")
        prefix = first_slopes(ghost_polygon(g, b), d) if d else []
        evidence["detector_i"] = {"weight": b, "ghost_prefix": prefix, "classical": list(s.entries[b])}
        if d and all(x == 0 for x in prefix):
            observed = s.entries[b]
            if s.flavor == TP:
                nonzero = [x for x in observed if x != 0]
                if nonzero:
                    return Verdict(
                        Status.FALSIFIED, "prop33", weight=b,
                        witness=f"ghost first {d} slopes at w_{b} are 0 vs classical slope {min(nonzero)} in weight {b}",
                        evidence=evidence, notes=notes,
                    )
            else:
                zeros = sum(1 for x in observed if x == 0)
                if zeros < d:
                    return Verdict(
                        Status.FALSIFIED, "prop33", weight=b,
                        witness=f"ghost first {d} slopes at w_{b} are 0 vs only {zeros} classical slope-0 forms in weight {b}",
                        evidence=evidence, notes=notes,
                    )
    elif reg.clause == "2a":
        raise CoverageError(f"detector (i) needs slopes in weight b = {b}")

    # (ii) least slope at p + 2
    k = p + 2
    if k in s.entries and t.in_component(k):
        if g.n_complete == 0:
            raise CoverageError("detector (ii) needs at least g_1 complete")
        np = ghost_polygon(g, k)
        bound = _least_slope_bound(np)
        observed = s.entries[k]
        evidence["detector_ii"] = {"weight": k, "least_slope_bound": bound, "classical": list(observed)}
        if bound is not None and bound < k - 1 and observed and all(x > bound for x in observed):
            return Verdict(Status.FALSIFIED, "prop33", weight=k,
                           witness=_least_slope_witness(bound, k, observed),
                           evidence=evidence, notes=notes)
    elif reg.clause == "2b":
        if not t.in_component(k):
            raise CoverageError(
                f"detector (ii) runs on the twist whose component contains p+2 = {k} (b = 3); table has b = {b}"
            )
        raise CoverageError(f"detector (ii) needs slopes in weight p+2 = {k}")

    return Verdict(Status.INCONCLUSIVE, "prop33", evidence=evidence,
                   notes=notes + ["no detector fired; the detectors are one-directional"])


def gouvea_mazur_check(
    s: SlopeDataset, k: int, k2: int, h: Fraction | int | str, p: int | Prime
) -> Verdict:
    """Compare multiplicities of slope ``h`` in weights ``k`` and ``k2``.

    Applicable when ``k, k2 >= 2h + 2`` and ``k = k2 mod (p-1) p^ceil(h)``.
    """
    p = as_prime(p, allow_small=True).p
    h = parse_slope(h) if isinstance(h, str) else Fraction(h)
    m1 = Counter(s.slopes(k))[h]
    m2 = Counter(s.slopes(k2))[h]
    modulus = (p - 1) * p ** math.ceil(h)
    evidence = {"h": h, "modulus": modulus, "difference": k2 - k,
                "multiplicities": {k: m1, k2: m2}}
    reasons = []
    if min(k, k2) < 2 * h + 2:
        reasons.append(f"min(k, k2) = {min(k, k2)} < 2h+2 = {2 * h + 2}")
    if (k - k2) % modulus:
        reasons.append(f"k - k2 = {k - k2} is not 0 mod (p-1)p^ceil(h) = {modulus}")
    if reasons:
        return Verdict(Status.INAPPLICABLE, "gouvea-mazur", evidence=evidence,
                       notes=["inapplicable: " + "; ".join(reasons)])
    if m1 != m2:
        return Verdict(
            Status.FALSIFIED, "gouvea-mazur", weight=k2,
            witness=f"GM violated: slope {h} has multiplicity {m1} in weight {k} vs {m2} in weight {k2}",
            evidence=evidence,
        )
    return Verdict(Status.CONSISTENT, "gouvea-mazur", evidence=evidence)
