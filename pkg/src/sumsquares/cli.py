"""Command-line batch runs with JSON reports.

Exit codes: 0 all checks pass, 1 a numerical check failed, 2 a hypothesis
(edge-transitivity or irreducibility) is violated, 3 usage/config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from xml.sax.saxutils import escape

import numpy as np

from . import __version__
from .numeric import Tol, axis_subspace, random_subspace, random_unit_vector
from .polytopes import CONTROLS, DEFAULT_CATALOG, Polytope, build, canonical_name
from .projection import verify_law
from .representation import (
    IRREDUCIBLE_TOL,
    HypothesisError,
    character_norm,
    edge_basis,
    verify_schur,
    verify_sos0,
    verify_sos2,
    verify_sos3,
    verify_unitary,
)
from .symmetry import ClosureOverflow, MatrixGroup, decompose_edges, is_edge_transitive, symmetry_group

DEFAULT_SEED = 0
EXIT_OK, EXIT_FAIL, EXIT_HYPOTHESIS, EXIT_USAGE = 0, 1, 2, 3
SVG_SIZE = 512
SVG_RADIUS = 240


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tol(args) -> Tol:
    try:
        return Tol(eq_tol=args.eq_tol, verify_tol=args.verify_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _load_polytope(args) -> Polytope | None:
    if getattr(args, "polytope_file", None):
        with open(args.polytope_file) as fh:
            return Polytope.from_json(fh.read())
    if getattr(args, "polytope", None):
        try:
            return build(args.polytope)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad polytope selector {args.polytope!r}: {exc}") from exc
    return None


def _load_group(args, p: Polytope | None, tol: Tol) -> MatrixGroup:
    if getattr(args, "group", None):
        with open(args.group) as fh:
            return MatrixGroup.from_json(fh.read())
    if p is None:
        raise UsageError("need --polytope, --polytope-file or --group")
    try:
        return symmetry_group(p, tol)
    except KeyError as exc:
        raise UsageError(f"no catalog generators for {p.name!r}; pass --group") from exc


def _row(check, polytope, n, m, seed, target, value, deviation, tol, violation=None):
    row = {
        "check": check,
        "polytope": polytope,
        "n": n,
        "m": m,
        "seed": seed,
        "target": float(target),
        "value": float(value),
        "deviation": float(deviation),
    }
    if violation is not None:
        row["hypothesis_violation"] = violation
    else:
        row["pass"] = bool(deviation <= tol)
    return row


def _effective_tol(args, tol: Tol, target: float) -> float:
    return tol.verify_tol * max(1.0, abs(target)) if args.scaled_tol else tol.verify_tol


def _sort_key(row):
    return (row["check"], row["polytope"], row["m"] or 0, -1 if row["seed"] is None else row["seed"])


def build_report(config: dict, rows: list[dict], force=False) -> tuple[dict, int]:
    rows = sorted(rows, key=_sort_key)
    failures = [r for r in rows if r.get("pass") is False]
    violations = [r for r in rows if "hypothesis_violation" in r]
    checked = [r for r in rows if "pass" in r]
    if failures:
        code = EXIT_FAIL
    elif violations and not force:
        code = EXIT_HYPOTHESIS
    else:
        code = EXIT_OK
    summary = {
        "rows": len(rows),
        "passed": sum(r["pass"] for r in checked),
        "failed": len(failures),
        "max_deviation": max((r["deviation"] for r in checked), default=0.0),
        "failures": [_brief(r) for r in failures],
        "hypothesis_violations": [_brief(r) for r in violations],
        "exit_code": code,
    }
    return {"tool_version": __version__, "config": config, "rows": rows, "summary": summary}, code


def _brief(row):
    out = {k: row[k] for k in ("check", "polytope", "m", "seed", "deviation")}
    if "hypothesis_violation" in row:
        out["hypothesis_violation"] = row["hypothesis_violation"]
    return out


def _config(args) -> dict:
    skip = {"func", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(text: str, args):
    if getattr(args, "out", None):
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(report: dict, args, text_lines=None):
    if args.format == "text" and text_lines is not None:
        _emit("\n".join(text_lines) + "\n", args)
    else:
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args)


def _status(row):
    if "hypothesis_violation" in row:
        return "HYPOTHESIS"
    return "PASS" if row["pass"] else "FAIL"


def _row_lines(rows):
    return [
        f"{_status(r):10s} {r['check']:22s} {r['polytope']:18s} m={r['m']} seed={r['seed']} "
        f"target={r['target']:.12g} value={r['value']:.12g} dev={r['deviation']:.3g}"
        for r in rows
    ]


def law_rows(p, g, m, trials, seed, tol, args, decomp=None, axis=True):
    decomp = decomp or decompose_edges(p, g, tol=tol)
    subspaces = [axis_subspace(p.ambient_dim, m)] if axis else []
    subspaces += [random_subspace(p.ambient_dim, m, seed + i) for i in range(trials)]
    rows = []
    for s in subspaces:
        rep = verify_law(p, s, g, tol, decomp)
        violation = None
        if rep.hypothesis_violated:
            violation = {"orbit_count": rep.orbit_count, "orbit_sizes": list(rep.orbit_sizes),
                         "sigma": rep.sigma, "sigma_prime": rep.sigma_prime,
                         "law_gap": rep.law_gap}
        row = _row("sum_of_squares_law", p.name, p.ambient_dim, m, s.seed, rep.expected_ratio,
                   rep.sigma_prime / rep.sigma, rep.deviation,
                   _effective_tol(args, tol, rep.expected_ratio), violation)
        row["sigma"], row["sigma_prime"] = rep.sigma, rep.sigma_prime
        rows.append(row)
    return rows


def cmd_catalog(args) -> int:
    tol = _tol(args)
    names = list(DEFAULT_CATALOG) + (["600cell"] if args.include_600cell else []) + CONTROLS
    entries, lines = [], []
    for name in names:
        p = build(name)
        order = symmetry_group(p, tol).order
        entries.append({"name": name, "n": p.ambient_dim, "vertices": p.vertex_count,
                        "edges": p.edge_count, "group_order": order,
                        "negative_control": p.negative_control})
        line = f"{name}, N={p.ambient_dim}, V={p.vertex_count}, E={p.edge_count}, |G|={order}"
        lines.append(line + (" (negative control)" if p.negative_control else ""))
    report = {"tool_version": __version__, "config": _config(args), "catalog": entries}
    _emit_report(report, args, lines)
    return EXIT_OK


def cmd_verify_law(args) -> int:
    tol = _tol(args)
    if args.m < 1 or args.trials < 0:
        raise UsageError("need --m >= 1 and --trials >= 0")
    p = _load_polytope(args)
    if p is None:
        raise UsageError("need --polytope or --polytope-file")
    if args.m > p.ambient_dim:
        raise UsageError(f"--m {args.m} exceeds ambient dimension {p.ambient_dim}")
    g = _load_group(args, p, tol)
    rows = law_rows(p, g, args.m, args.trials, args.seed, tol, args)
    report, code = build_report(_config(args), rows, args.force)
    _emit_report(report, args, _row_lines(report["rows"]))
    if report["summary"]["hypothesis_violations"]:
        sizes = rows[0]["hypothesis_violation"]["orbit_sizes"]
        print(f"hypothesis violated: {len(sizes)} edge orbits {sizes}", file=sys.stderr)
    return code


def orthogonality_rows(g, p, trials, seed, tol, args, base_edge=0):
    name = p.name if p is not None else "group"
    du = verify_unitary(g)
    rows = [_row("unitary", name, g.dim, None, None, 0.0, du, du, tol.verify_tol)]
    chi = character_norm(g)
    reducible = abs(chi - 1.0) > IRREDUCIBLE_TOL
    violation = {"reason": f"reducible representation, character norm {chi:.12g}"} if reducible else None
    rows.append(_row("character_norm", name, g.dim, None, None, 1.0, chi, abs(chi - 1.0),
                     tol.verify_tol, violation))
    rep = verify_schur(g, tol, require_irreducible=False)
    target = g.order / g.dim
    rows.append(_row("schur_orthogonality", name, g.dim, None, None, target,
                     target + rep.max_abs_deviation, rep.max_abs_deviation,
                     _effective_tol(args, tol, target), violation))
    rows[-1]["worst_indices"] = list(rep.worst_indices)
    rows.append(_row("schur_diagonal", name, g.dim, None, None, target,
                     target + rep.diagonal_deviation, rep.diagonal_deviation,
                     _effective_tol(args, tol, target)))
    if p is None:
        return rows
    basis = edge_basis(p, base_edge, tol)
    d0 = verify_sos0(g, p, base_edge, basis, tol)
    rows.append(_row("edge_matrix_column", name, g.dim, None, None, 0.0, d0, d0, tol.verify_tol))
    d2 = verify_sos2(g, p, base_edge, basis, tol)
    rows.append(_row("axis_edge_sums", name, g.dim, None, None, target, target + d2, d2,
                     _effective_tol(args, tol, target)))
    for i in range(trials):
        v = random_unit_vector(g.dim, seed + i)
        d3 = verify_sos3(g, p, base_edge, v, tol)
        rows.append(_row("unit_vector_edge_sum", name, g.dim, None, seed + i, target, target + d3, d3,
                         _effective_tol(args, tol, target)))
    return rows


def cmd_verify_orthogonality(args) -> int:
    tol = _tol(args)
    p = _load_polytope(args)
    g = _load_group(args, p, tol)
    if p is not None and p.ambient_dim != g.dim:
        raise UsageError("group and polytope dimensions disagree")
    rows = orthogonality_rows(g, p, args.trials, args.seed, tol, args)
    report, code = build_report(_config(args), rows, args.force)
    _emit_report(report, args, _row_lines(report["rows"]))
    return code


def cmd_orbits(args) -> int:
    tol = _tol(args)
    p = _load_polytope(args)
    if p is None:
        raise UsageError("need --polytope or --polytope-file")
    g = _load_group(args, p, tol)
    d = decompose_edges(p, g, args.base_edge, tol)
    k, e = d.stabilizer_order, p.edge_count
    ok = k * e == g.order
    line = (f"orbits={d.orbit_sizes}, k={k}, |G|={g.order}, kE={k * e} "
            f"{'✓' if ok else '✗'}")
    report = {
        "tool_version": __version__,
        "config": _config(args),
        "polytope": p.name,
        "orbit_sizes": d.orbit_sizes,
        "edge_transitive": is_edge_transitive(d),
        "stabilizer_order": k,
        "group_order": g.order,
        "edge_count": e,
        "k_times_e": k * e,
        "k_times_e_equals_order": ok,
        "coset_sizes": sorted({len(c) for c in d.cosets.values()}),
    }
    _emit_report(report, args, [line])
    return EXIT_OK


def projected_segments(p: Polytope, s) -> np.ndarray:
    """Projected endpoint coordinates, shape (E, 2, M)."""
    coords = p.vertices @ s.basis.T
    return coords[p.edges]


def segments_csv(segs: np.ndarray) -> str:
    m = segs.shape[2]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["edge_id"] + [f"a{i + 1}" for i in range(m)] + [f"b{i + 1}" for i in range(m)])
    for l, (a, b) in enumerate(segs):
        w.writerow([l] + [repr(float(x)) for x in a] + [repr(float(x)) for x in b])
    return buf.getvalue()


def segments_svg(segs: np.ndarray, title="") -> str:
    """Segments in a fixed 512x512 viewBox; the farthest endpoint lands 240 units from the center."""
    if segs.shape[2] != 2:
        raise UsageError("svg export needs M = 2")
    r = float(np.abs(segs).max()) or 1.0
    c = SVG_SIZE / 2
    xy = np.empty_like(segs)
    xy[..., 0] = c + SVG_RADIUS * segs[..., 0] / r
    xy[..., 1] = c - SVG_RADIUS * segs[..., 1] / r
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
           f"<title>{escape(title)}</title>"]
    for (x1, y1), (x2, y2) in xy:
        out.append(f'<line x1="{x1:.4f}" y1="{y1:.4f}" x2="{x2:.4f}" y2="{y2:.4f}" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_project_export(args) -> int:
    p = _load_polytope(args)
    if p is None:
        raise UsageError("need --polytope or --polytope-file")
    if not 1 <= args.m <= p.ambient_dim:
        raise UsageError(f"--m must be in 1..{p.ambient_dim}")
    if args.format == "svg" and args.m != 2:
        raise UsageError("svg export needs --m 2")
    s = axis_subspace(p.ambient_dim, args.m) if args.axis else random_subspace(p.ambient_dim, args.m, args.seed)
    segs = projected_segments(p, s)
    if args.format == "svg":
        _emit(segments_svg(segs, f"{p.name} {s.label}"), args)
    else:
        _emit(segments_csv(segs), args)
    return EXIT_OK


def cmd_sweep(args) -> int:
    tol = _tol(args)
    names = list(DEFAULT_CATALOG) + (["600cell"] if args.include_600cell else [])
    names += CONTROLS if args.include_controls else []
    rows = []
    for name in names:
        p = build(name)
        g = symmetry_group(p, tol)
        decomp = decompose_edges(p, g, tol=tol)
        for m in range(1, p.ambient_dim + 1):
            rows += law_rows(p, g, m, args.trials, args.seed, tol, args, decomp, axis=False)
    # controls are expected to violate the hypothesis; they never fail the sweep
    report, code = build_report(_config(args), rows, force=True)
    report["summary"]["global_max_deviation"] = report["summary"]["max_deviation"]
    _emit_report(report, args, _row_lines(report["rows"]))
    return code


def _add_common(sp, polytope=True, tolerances=True, fmt=("json", "text")):
    if polytope:
        sp.add_argument("--polytope", help="catalog name, e.g. hypercube-3, 24cell, cuboid-1-1-2")
        sp.add_argument("--polytope-file", help="polytope JSON {name, ambient_dim, vertices, edges}")
    if tolerances:
        sp.add_argument("--eq-tol", type=float, default=1e-9)
        sp.add_argument("--verify-tol", type=float, default=1e-8)
        sp.add_argument("--scaled-tol", action="store_true",
                        help="scale the verification tolerance by max(1, |target|)")
    sp.add_argument("--format", choices=fmt, default=fmt[0])
    sp.add_argument("--out", help="write to this file instead of stdout")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sumsquares", description="Sum-of-squares law verification toolkit.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("catalog", help="list catalog polytopes")
    _add_common(sp, polytope=False)
    sp.add_argument("--include-600cell", action="store_true")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("verify-law", help="check sigma' = sigma M/N over seeded subspaces")
    _add_common(sp)
    sp.add_argument("--group", help="matrix-group JSON to use instead of catalog generators")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--force", action="store_true", help="report raw numbers for hypothesis violations, exit 0")
    sp.set_defaults(func=cmd_verify_law)

    sp = sub.add_parser("verify-orthogonality", help="unitarity, character norm, orthogonality relations")
    _add_common(sp)
    sp.add_argument("--group", help="matrix-group JSON")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=cmd_verify_orthogonality)

    sp = sub.add_parser("orbits", help="edge orbits, stabilizer order and |G| = kE")
    _add_common(sp, fmt=("text", "json"))
    sp.add_argument("--group", help="matrix-group JSON")
    sp.add_argument("--base-edge", type=int, default=0)
    sp.set_defaults(func=cmd_orbits)

    sp = sub.add_parser("project-export", help="projected edge segments as csv or svg")
    _add_common(sp, tolerances=False, fmt=("csv", "svg"))
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--axis", action="store_true", help="use span(e_1..e_M) instead of a Haar subspace")
    sp.set_defaults(func=cmd_project_export)

    sp = sub.add_parser("sweep", help="law check over the whole catalog")
    _add_common(sp, polytope=False)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--include-controls", action="store_true")
    sp.add_argument("--include-600cell", action="store_true")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if getattr(args, "polytope", None):
        args.polytope = canonical_name(args.polytope)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"sumsquares: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClosureOverflow, HypothesisError) as exc:
        print(f"sumsquares: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OSError, ValueError) as exc:
        print(f"sumsquares: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
