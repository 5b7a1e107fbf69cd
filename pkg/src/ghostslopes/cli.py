"""Command line interface: ``ghostslopes <command> ...``.

Exit status is 0 for consistent/regular, 2 for falsified/irregular and 3 for
inconclusive/inapplicable; input errors exit with 1.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .dimdata import DimensionTable, DimensionTableError, extend_table, load_table
from .ffield import field as make_field, parse_poly
from .ghost import TableTooShort, build_complete_ghost, build_ghost
from .localrep import b_of, format_rep, is_irregular, parse_rep, reduce_crystalline_small_weight
from .padic import ArithmeticWeight, GenericWeight, format_valuation
from .polygon import evaluate_valuations, lower_hull, points_file
from .verify import (
    TP,
    Status,
    Verdict,
    coleman_consistency,
    compare_classical,
    gouvea_mazur_check,
    ingest_slope_family,
    ingest_slopes,
    predicted_classical_slopes,
    prop33_falsifier,
    regularity_from_slopes,
)


def _parse_weights(text: str, t: DimensionTable | None = None) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = (int(x) for x in part.split(".."))
            ks = range(lo, hi + 1)
            out.extend(k for k in ks if t is None or t.in_component(k))
        elif part:
            out.append(int(part))
    return out


def _load_table(args) -> DimensionTable:
    t = load_table(args.table)
    if getattr(args, "extend", None):
        t = extend_table(t, args.extend, args.fit_window)
    return t


def _table_notes(t: DimensionTable) -> list[str]:
    notes = []
    if t.descriptor.p.note:
        notes.append(t.descriptor.p.note)
    if t.first_extrapolated is not None:
        notes.append(f"table rows from k = {t.first_extrapolated} on are extrapolated")
    return notes


def _emit(args, report: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(report, indent=2, default=str))
    else:
        print(text)


def _out_dir(args) -> Path | None:
    if not getattr(args, "out_dir", None):
        return None
    d = Path(args.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _verdict_text(v: Verdict) -> str:
    lines = [v.summary()]
    lines += [f"  note: {n}" for n in v.notes]
    return "\n".join(lines)


# --- commands -----------------------------------------------------------------


def cmd_build_ghost(args) -> int:
    t = _load_table(args)
    g = build_ghost(t, args.n, complete_only=args.complete_only) if args.n else build_complete_ghost(t)
    lines = [f"ghost series for {t.descriptor.label or 'table'} (p = {t.p}, b = {t.b}, K_max = {t.k_max})"]
    for c in g.coefficients:
        zeros = " ".join(
            f"(w-w_{z.k})" + (f"^{z.multiplicity}" if z.multiplicity > 1 else "") for z in c.zeros
        ) or "1"
        flag = "" if c.complete else "  [incomplete]"
        lines.append(f"g_{c.index} = {zeros}{flag}")
    lines += [f"note: {n}" for n in _table_notes(t)]
    out = _out_dir(args)
    if out:
        (out / "ghost.json").write_text(g.dumps() + "\n", encoding="utf-8")
    _emit(args, g.to_json(), "\n".join(lines))
    return 0


def cmd_newton(args) -> int:
    t = _load_table(args)
    g = build_ghost(t, args.n) if args.n else build_complete_ghost(t)
    if args.generic is not None:
        w = GenericWeight(Fraction(args.generic))
    else:
        w = ArithmeticWeight(args.weight)
    pts = evaluate_valuations(g, w, args.n, allow_off_component=args.allow_off_component)
    np = lower_hull(pts)
    report = {"weight": str(w), "points": [[pt.index, format_valuation(pt.val)] for pt in pts],
              **np.to_json(), "notes": _table_notes(t)}
    text = f"Newton polygon at {w} using g_1..g_{len(pts) - 1}\n" + np.table()
    text += "".join(f"\nnote: {n}" for n in _table_notes(t))
    out = _out_dir(args)
    if out:
        from .plotting import plot_polygon

        stem = f"newton_{w}".replace("(", "_").replace(")", "").replace("=", "").replace("/", "_")
        (out / f"{stem}_points.tsv").write_text(points_file(pts), encoding="utf-8")
        (out / f"{stem}.json").write_text(np.dumps() + "\n", encoding="utf-8")
        plot_polygon(pts, np, out / f"{stem}.png", title=f"{t.descriptor.label} at {w}")
    _emit(args, report, text)
    return 0


def cmd_predict(args) -> int:
    t = _load_table(args)
    g = build_complete_ghost(t)
    weights = _parse_weights(args.weights, t)

    def one(k):
        return k, predicted_classical_slopes(g, t, k)

    with ThreadPoolExecutor(max_workers=max(args.jobs, 1)) as pool:
        results = dict(sorted(pool.map(one, weights)))
    report = {"label": t.descriptor.label, "p": t.p, "b": t.b,
              "predictions": {k: [str(s) for s in v] for k, v in results.items()},
              "notes": _table_notes(t)}
    lines = ["k\td(k)\tpredicted T_p slopes"]
    lines += [f"{k}\t{len(v)}\t{' '.join(str(s) for s in v)}" for k, v in results.items()]
    lines += [f"note: {n}" for n in _table_notes(t)]
    out = _out_dir(args)
    if out:
        from .plotting import plot_slopes_by_weight

        with open(out / "predictions.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "position", "slope"])
            for k, v in results.items():
                for i, s in enumerate(v, 1):
                    w.writerow([k, i, str(s)])
        plot_slopes_by_weight(results, out / "predictions.png",
                              title=f"{t.descriptor.label} predicted slopes")
    _emit(args, report, "\n".join(lines))
    return 0


def _finish(args, verdicts: list[Verdict], extra_notes: list[str] = ()) -> int:
    if not verdicts:
        print("nothing to check", file=sys.stderr)
        return 3
    order = [Status.FALSIFIED, Status.IRREGULAR, Status.INCONCLUSIVE, Status.INAPPLICABLE,
             Status.NOT_APPLICABLE, Status.CONSISTENT, Status.REGULAR]
    worst = min(verdicts, key=lambda v: order.index(v.status))
    report = {"status": worst.status.value, "verdicts": [v.to_json() for v in verdicts],
              "notes": list(extra_notes)}
    text = "\n".join(_verdict_text(v) for v in verdicts)
    text += "".join(f"\nnote: {n}" for n in extra_notes)
    out = _out_dir(args)
    if out:
        (out / "verdicts.json").write_text(json.dumps(report, indent=2, default=str) + "\n",
                                           encoding="utf-8")
        with open(out / "verdicts.tsv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, delimiter="\t")
            w.writerow(["check", "status", "weight", "witness"])
            for v in verdicts:
                w.writerow([v.check, v.status.value, v.weight or "", v.witness or ""])
    _emit(args, report, text)
    return worst.status.exit_code


def cmd_compare(args) -> int:
    t = _load_table(args)
    g = build_complete_ghost(t)
    s = ingest_slopes(Path(args.slopes))
    weights = _parse_weights(args.weights, t) if args.weights else None
    v = compare_classical(g, t, s, weights)
    out = _out_dir(args)
    if out:
        from .plotting import plot_slopes_by_weight

        per = v.evidence["weights"]
        plot_slopes_by_weight({k: e["predicted"] for k, e in per.items()}, out / "compare.png",
                              title=t.descriptor.label,
                              observed={k: e["observed"] for k, e in per.items()})
    return _finish(args, [v])


def cmd_falsify(args) -> int:
    t = _load_table(args)
    g = build_complete_ghost(t)
    s = ingest_slopes(Path(args.slopes))
    verdicts = []
    if args.rep:
        verdicts.append(prop33_falsifier(g, t, parse_rep(args.rep), s))
    weights = _parse_weights(args.weights, t) if args.weights else sorted(s.entries)
    if s.flavor == TP:
        verdicts.append(compare_classical(g, t, s, weights))
    else:
        verdicts += [coleman_consistency(g, t, s, k) for k in weights]
    return _finish(args, verdicts)


def cmd_classify(args) -> int:
    r = parse_rep(args.descriptor)
    reg = is_irregular(r)
    status = Status.IRREGULAR if reg.irregular else Status.REGULAR
    report = {"descriptor": format_rep(r), "representation": str(r), "b": b_of(r),
              "status": status.value, "clause": reg.clause, "reason": reg.reason}
    text = f"{r}\n  canonical: {format_rep(r)}\n  b = {b_of(r)}\n  {status.value}"
    if reg.clause:
        text += f" (clause {reg.clause})"
    text += f": {reg.reason}"
    _emit(args, report, text)
    return status.exit_code


def cmd_reduce(args) -> int:
    trace = None
    if args.trace is not None:
        f = make_field(args.p, tuple(parse_poly(args.modulus, args.p)) if args.modulus else None)
        trace = f(args.trace)
    shape = reduce_crystalline_small_weight(args.k, Fraction(args.slope), args.p, trace)
    status = Status.IRREGULAR if shape.irregular else Status.REGULAR
    report = {"kind": shape.kind, "exponent": shape.exponent, "omega_power": shape.omega_power,
              "trace": None if shape.trace is None else str(shape.trace),
              "condition": shape.condition, "status": status.value}
    _emit(args, report, str(shape))
    return status.exit_code


def cmd_check_regular(args) -> int:
    datasets = []
    for path in args.slopes:
        datasets += ingest_slope_family(Path(path))
    p = args.p if args.p else datasets[0].descriptor.p.p
    return _finish(args, [regularity_from_slopes(datasets, p)])


def cmd_check_gm(args) -> int:
    s = ingest_slopes(Path(args.slopes))
    p = args.p if args.p else s.descriptor.p.p
    return _finish(args, [gouvea_mazur_check(s, args.k, args.k2, args.h, p)])


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghostslopes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out-dir", help="write delimited reports and figures here")
    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("table", help="dimension table JSON file")
    table.add_argument("--extend", type=int, metavar="K", help="extend the table to weight K by affine fit")
    table.add_argument("--fit-window", type=int, default=4)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-ghost", parents=[common, table], help="ghost coefficients as zero lists")
    p.add_argument("-n", type=int, help="number of coefficients (default: all complete ones)")
    p.add_argument("--complete-only", action="store_true")
    p.set_defaults(func=cmd_build_ghost)

    p = sub.add_parser("newton", parents=[common, table], help="Newton polygon at one weight")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--weight", type=int)
    grp.add_argument("--generic", help="v_p(w) of a generic weight, e.g. 1/2")
    p.add_argument("-n", type=int, help="coefficients to use (default: all complete ones)")
    p.add_argument("--allow-off-component", action="store_true")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("predict", parents=[common, table], help="predicted T_p slopes at weights")
    p.add_argument("--weights", required=True, help="e.g. 7,11,15 or 3..63")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("compare", parents=[common, table], help="compare with T_p slope data")
    p.add_argument("slopes")
    p.add_argument("--weights")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("falsify", parents=[common, table],
                       help="classicality and irregularity detectors against slope data")
    p.add_argument("slopes")
    p.add_argument("--rep", help="local representation descriptor (rep/1 ...)")
    p.add_argument("--weights")
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("classify", parents=[common], help="regular or irregular")
    p.add_argument("descriptor", help='e.g. "rep/1 split p=5 alpha=1 beta=-1 t=0 j=1"')
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", parents=[common], help="reduction of a small-weight crystalline rep")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--slope", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trace", help="a_p/p mod p as a field element")
    p.add_argument("--modulus", help="modulus of the field holding --trace")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check-regular", parents=[common], help="regularity from low-weight T_p slopes")
    p.add_argument("slopes", nargs="+", help="slope files or twist families covering weights 2..p+2")
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_check_regular)

    p = sub.add_parser("check-gm", parents=[common], help="Gouvea-Mazur multiplicity check")
    p.add_argument("slopes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_check_gm)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DimensionTableError, TableTooShort, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
