"""Command line front end: ``planenodes analyze|check|fiber|chi|mixedvol|batch``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .fiber import ConsistencyError, FiberPolygon, fiber_polygon
from .lattice_core import SupportSet, is_infinite
from .nodecount import FORMULAS, AnalysisReport, analyze, check_assumptions
from .polytope import normalized_mixed_volume
from .singular import fps_invariants

EXIT_OK, EXIT_INPUT, EXIT_ASSUMPTION, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _int(value) -> int:
    if isinstance(value, bool):
        raise InputError(f"not an integer: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip(), 10)
        except ValueError:
            pass
    raise InputError(f"not an integer: {value!r}")


def _points(raw, min_len=1) -> list[tuple[int, ...]]:
    if not isinstance(raw, list) or not raw:
        raise InputError("expected a nonempty list of points")
    pts = []
    for p in raw:
        if not isinstance(p, list):
            raise InputError(f"point is not a list: {p!r}")
        pts.append(tuple(_int(x) for x in p))
    if len({len(p) for p in pts}) != 1:
        raise InputError("points have different lengths")
    if len(pts[0]) < min_len:
        raise InputError(f"points need at least {min_len} coordinates")
    return pts


def _load(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    return doc


def load_support(path) -> tuple[str, SupportSet]:
    doc = _load(path)
    if "points" not in doc:
        raise InputError("missing 'points'")
    pts = _points(doc["points"], min_len=3)
    name = doc.get("name")
    if name is None:
        name = Path(path).stem
    return str(name), SupportSet(pts)


def _seq_value(v):
    return "inf" if is_infinite(v) else v


def report_json(rep: AnalysisReport) -> dict:
    facets = []
    for r in rep.facets:
        facets.append({
            "id": r.facet_id,
            "normal": list(r.normal),
            "offset": r.offset,
            "horizontal": r.horizontal,
            "volume": r.volume,
            "multiplier": r.multiplier,
            "contribution": r.contribution,
            "sequence": [_seq_value(v) for v in r.sequence.values] if r.sequence else None,
            "shift_R": r.sequence.shift_R if r.sequence else None,
            "excess": r.excess if r.sequence else None,
        })
    D = {}
    for f in FORMULAS:
        if f in rep.D:
            D[f] = rep.D[f]
        elif f in rep.blocked:
            D[f] = None
    out = {
        "schema": "1",
        "name": rep.name,
        "n": rep.n,
        "volume": rep.norm_volume_delta,
        "fiber_area": rep.fiber_area,
        "fiber_vertices": [list(v) for v in rep.polygon.vertices],
        "facets": facets,
        "assumptions": rep.assumptions.as_dict(),
        "D": D,
        "blocked": dict(rep.blocked),
        "chi_curve": rep.chi_curve,
        "notes": list(rep.notes),
    }
    if "conjecture" in D:
        out["conjectural"] = ["conjecture"]
    return out


def _fmt_seq(r) -> str:
    if r.sequence is None:
        return "-"
    return "(" + ",".join(str(_seq_value(v)) for v in r.sequence.values) + ")"


def report_text(rep: AnalysisReport) -> str:
    lines = [f"name: {rep.name}", f"n = {rep.n}"]
    lines.append(f"Vol(Delta) = {rep.norm_volume_delta}    Area(P) = {rep.fiber_area}")
    lines.append("P vertices: " + " ".join(f"({x},{y})" for x, y in rep.polygon.vertices))
    lines.append("")
    header = f"{'id':>3}  {'normal':<18} {'offset':>6}  {'class':<5} {'vol':>5} {'m':>3} {'contrib':>7}  {'sequence':<14} {'R':>2} {'excess':>6}"
    lines.append(header)
    lines.append("-" * len(header))
    for r in rep.facets:
        normal = "(" + ",".join(map(str, r.normal)) + ")"
        cls = "H" if r.horizontal else "N"
        R = str(r.sequence.shift_R) if r.sequence else "-"
        excess = str(r.excess) if r.sequence else "-"
        lines.append(
            f"{r.facet_id:>3}  {normal:<18} {r.offset:>6}  {cls:<5} {r.volume:>5} "
            f"{r.multiplier:>3} {r.contribution:>7}  {_fmt_seq(r):<14} {R:>2} {excess:>6}"
        )
    lines.append("")
    horiz = sum(r.volume for r in rep.facets if r.horizontal)
    lines.append(
        f"terms: Area(P) = {rep.fiber_area}, (n+1)Vol = {(rep.n + 1) * rep.norm_volume_delta}, "
        f"horizontal Vol = {horiz}"
    )
    for f in FORMULAS:
        if f in rep.D:
            tag = "   (CONJECTURAL)" if f == "conjecture" else ""
            lines.append(f"D_{f} = {rep.D[f]}{tag}")
        elif f in rep.blocked:
            lines.append(f"D_{f} = blocked: {rep.blocked[f]}")
    lines.append(f"chi_curve = {rep.chi_curve}")
    lines.append("assumptions:")
    lines.extend(_assumption_lines(rep.assumptions.as_dict()))
    for note in rep.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _assumption_lines(d: dict) -> list[str]:
    out = []
    for key, value in d.items():
        if key.endswith("_offenders"):
            if value:
                out.append(f"  {key}: {json.dumps(value)}")
            continue
        out.append(f"  {key}: {'yes' if value else 'no'}")
    return out


def _num(x) -> str:
    return f"{x:.4f}".rstrip("0").rstrip(".")


def render_svg(P: FiberPolygon, path) -> None:
    """Write the polygon as a deterministic SVG 1.1 file (y axis pointing up)."""
    pts = [(x, -y) for x, y in P.vertices]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    px, py = w / 10, h / 10
    vb = (min(xs) - px, min(ys) - py, w + 2 * px, h + 2 * py)
    size = max(w, h)
    d = "M " + " L ".join(f"{x} {y}" for x, y in pts) + " Z"
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{" ".join(_num(v) for v in vb)}">',
        f'  <path d="{d}" fill="#dde8f4" stroke="#1f3b5a" '
        f'stroke-width="{_num(size / 100)}"/>',
    ]
    for (x, y), (vx, vy) in zip(P.vertices, pts):
        parts.append(f'  <circle cx="{vx}" cy="{vy}" r="{_num(size / 60)}" fill="#1f3b5a"/>')
        parts.append(
            f'  <text x="{vx}" y="{vy}" font-size="{_num(size / 25)}" '
            f'font-family="monospace">({x},{y})</text>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def _formulas(choice: str):
    return FORMULAS if choice == "all" else (choice,)


def _analyze_one(path, formulas):
    name, A = load_support(path)
    return analyze(A, formulas, name=name)


def cmd_analyze(args, out) -> int:
    formulas = _formulas(args.formula)
    rep = _analyze_one(args.file, formulas)
    out.write(json.dumps(report_json(rep), indent=2) + "\n" if args.json else report_text(rep))
    if args.svg:
        try:
            render_svg(rep.polygon, args.svg)
        except OSError as exc:
            raise InputError(f"cannot write {args.svg}: {exc}") from exc
    if args.strict and rep.blocked:
        return EXIT_ASSUMPTION
    return EXIT_OK


def cmd_check(args, out) -> int:
    _, A = load_support(args.file)
    rep = check_assumptions(A)
    out.write("\n".join(_assumption_lines(rep.as_dict())) + "\n")
    return EXIT_OK


def cmd_fiber(args, out) -> int:
    _, A = load_support(args.file)
    P = fiber_polygon(A)
    out.write(f"norm_area = {P.norm_area}\n")
    out.write("vertices: " + " ".join(f"({x},{y})" for x, y in P.vertices) + "\n")
    for g, length in P.edges:
        out.write(f"edge normal ({g[0]},{g[1]}) length {length}\n")
    return EXIT_OK


def cmd_chi(args, out) -> int:
    try:
        seq = [int(x) for x in args.sequence.split(",")]
    except ValueError as exc:
        raise InputError(f"bad sequence {args.sequence!r}") from exc
    N, chi, delta = fps_invariants(seq)
    out.write(f"N={N} chi={chi} delta={delta}\n")
    return EXIT_OK


def cmd_mixedvol(args, out) -> int:
    doc = _load(args.file)
    raw = doc.get("polytopes")
    if not isinstance(raw, list) or not raw:
        raise InputError("missing 'polytopes'")
    bodies = [_points(b) for b in raw]
    out.write(f"{normalized_mixed_volume(bodies)}\n")
    return EXIT_OK


def cmd_batch(args, out) -> int:
    if not Path(args.dir).is_dir():
        raise InputError(f"not a directory: {args.dir}")
    files = sorted(Path(args.dir).glob("*.json"))
    worst = EXIT_OK
    results = []
    for path in files:
        code, payload = EXIT_OK, None
        try:
            rep = _analyze_one(path, FORMULAS)
            payload = report_json(rep) if args.json else report_text(rep)
        except ConsistencyError as exc:
            code, payload = EXIT_INTERNAL, f"internal consistency failure: {exc}"
        except (ValueError, ArithmeticError) as exc:
            code, payload = EXIT_INPUT, f"error: {exc}"
        worst = max(worst, code)
        results.append((path.name, code, payload))
    if args.json:
        doc = [
            {"file": f, "status": c, **({"report": p} if c == 0 else {"error": p})}
            for f, c, p in results
        ]
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for f, c, p in results:
            out.write(f"== {f}\n")
            out.write(p if c == 0 else p + "\n")
    return worst


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="planenodes",
        description="Node counts of plane projections of generic complete intersection curves.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one support set")
    p.add_argument("file")
    p.add_argument("--formula", choices=FORMULAS + ("all",), default="all")
    p.add_argument("--json", action="store_true")
    p.add_argument("--strict", action="store_true", help="exit 2 if a requested formula is blocked")
    p.add_argument("--svg", metavar="PATH", help="write the fiber polygon as SVG")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="assumption report")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fiber", help="fiber polygon edges and vertices")
    p.add_argument("file")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("chi", help="invariants of a forking-paths singularity")
    p.add_argument("--sequence", required=True, help="e.g. 8,4,2,1")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("mixedvol", help='mixed volume of {"polytopes": [...]}')
    p.add_argument("file")
    p.set_defaults(func=cmd_mixedvol)

    p = sub.add_parser("batch", help="analyze every *.json in a directory")
    p.add_argument("dir")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_batch)
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except ConsistencyError as exc:
        err.write(f"internal consistency failure: {exc}\n")
        return EXIT_INTERNAL
    except (ValueError, ArithmeticError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
