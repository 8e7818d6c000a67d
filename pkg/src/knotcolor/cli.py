"""Command-line interface: ``knotcolor <subcommand> [options]``.

Exit status is 0 on success, 2 on domain errors (bad PD code, composite
modulus, ...) and 1 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import alexander, auto, bounds, coloring, knotdb, moves, palette
from .errors import InvalidParameters, KnotColorError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def parse_m_values(text: str) -> list[int]:
    """``"2..13"`` (inclusive), ``"2,3,5"`` or a single integer."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, _, hi = part.partition("..")
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(lo_i, hi_i + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError("no values given")
    return out


def _m_arg(text: str) -> list[int]:
    try:
        return parse_m_values(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--knot", help="built-in knot name, e.g. 4_1")
    src.add_argument("--pd", metavar="FILE", help="file with a PD code (text or JSON)")
    common.add_argument("--p", type=int, help="prime modulus (0 for integral colorings where allowed)")
    common.add_argument("--m", type=_m_arg, help="parameter m; mdet also takes ranges like 2..13")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--dot", metavar="FILE", help="write the palette graph in DOT format")
    common.add_argument("--budget", help="search budget, e.g. depth=12,crossings=14,states=200000,time=240")

    parser = _Parser(prog="knotcolor", description="Colorings of knot diagrams by linear Alexander quandles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("alex", parents=[common], help="reduced Alexander polynomial")
    sub.add_parser("mdet", parents=[common], help="m-determinants for one or more m")
    c = sub.add_parser("color", parents=[common], help="census of (p, m)-colorings")
    c.add_argument("--show", type=int, default=0, metavar="N", help="print the first N nontrivial colorings")
    pal = sub.add_parser("palette", parents=[common], help="palette graph and determinant lemma report")
    pal.add_argument("--index", type=int, default=0, help="which nontrivial coloring to use")
    sub.add_parser("bounds", parents=[common], help="lower bounds on the number of colors")
    sub.add_parser("orbits", parents=[common], help="affine orbits of nontrivial colorings")
    mc = sub.add_parser("mincol", parents=[common], help="fewest colors on the diagram, optionally by search")
    mc.add_argument("--search", action="store_true", help="search over Reidemeister moves")
    mc.add_argument("--target", type=int, help="stop once this many colors are reached")
    sub.add_parser("kh", parents=[common], help="look for arc-injective colorings")
    return parser


def _diagram(args, parser):
    if args.knot:
        return args.knot, knotdb.lookup(args.knot).diagram
    if args.pd:
        path = Path(args.pd)
        if not path.exists():
            parser.error(f"no such file: {args.pd}")
        rec = knotdb.load_file(path)[0]
        return rec.name, rec.diagram
    parser.error("one of --knot or --pd is required")


def _single_m(args, parser) -> int:
    if args.m is None:
        parser.error("--m is required")
    if len(args.m) != 1:
        parser.error("--m takes a single value for this subcommand")
    return args.m[0]


def _require_p(args, parser) -> int:
    if args.p is None:
        parser.error("--p is required")
    return args.p


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_alex(args, parser):
    name, d = _diagram(args, parser)
    res = alexander.alexander_polynomial(d)
    payload = {"knot": name, **res.to_json()}
    text = f"Δ⁰(T) = {res.reduced}"
    if not res.by_minor_consistent:
        text += "\nwarning: first minors disagree modulo units"
    _emit(args, payload, text)


def _cmd_mdet(args, parser):
    name, d = _diagram(args, parser)
    if args.m is None:
        parser.error("--m is required")
    res = alexander.alexander_polynomial(d, check_minors=False)
    dets = {m: res.reduced(m) for m in args.m}
    payload = {
        "knot": name,
        "reduced": res.reduced.to_json(),
        "vanishes": res.vanishes,
        "m_dets": {str(m): v for m, v in dets.items()},
    }
    _emit(args, payload, "\n".join(f"m={m}: {v}" for m, v in dets.items()))


def _cmd_color(args, parser):
    name, d = _diagram(args, parser)
    p, m = _require_p(args, parser), _single_m(args, parser)
    if p == 0:
        res = coloring.integral_colorings(d, m)
        payload = {
            "knot": name,
            "n": 0,
            "m": m,
            "kernel_rank": res.rank,
            "kernel_basis": res.basis,
            "example": None if res.example is None else list(res.example.values),
        }
        text = f"integral colorings of {name} at m={m}: kernel rank {res.rank}"
        if res.example is not None:
            text += f"\nexample: {list(res.example.values)}"
        _emit(args, payload, text)
        return
    params = coloring.ColoringParams(p, m)
    census = coloring.count_colorings(d, params)
    shown = []
    if args.show:
        for c in coloring.nontrivial_colorings(d, params):
            shown.append(c)
            if len(shown) >= args.show:
                break
    payload = {"knot": name, "p": p, "m": m, **census.to_json(),
               "colorings": [c.to_json()["arcs"] for c in shown]}
    lines = [
        f"({p},{m})-colorings of {name}: total {census.total}, trivial {census.trivial}, "
        f"nontrivial {census.nontrivial}",
    ]
    if census.color_usage_histogram:
        hist = ", ".join(f"{k} colors: {v}" for k, v in census.color_usage_histogram.items())
        lines.append(f"color usage: {hist}")
    lines.extend(f"  {list(c.values)}" for c in shown)
    _emit(args, payload, "\n".join(lines))


def _pick_coloring(d, params, index):
    for k, c in enumerate(coloring.nontrivial_colorings(d, params)):
        if k == index:
            return c
    raise InvalidParameters(f"no nontrivial ({params.n},{params.m})-coloring with index {index}")


def _cmd_palette(args, parser):
    name, d = _diagram(args, parser)
    p, m = _require_p(args, parser), _single_m(args, parser)
    if p == 0:
        c = coloring.integral_colorings(d, m).example
        if c is None:
            raise InvalidParameters(f"no nontrivial integral coloring at m={m}")
    else:
        c = _pick_coloring(d, coloring.ColoringParams(p, m), args.index)
    G = palette.palette_graph_of_coloring(d, c)
    F = palette.spanning_forest(G)
    report = palette.verify_det_lemma(d, c)
    if args.dot:
        Path(args.dot).write_text(palette.export_dot(G, F))
    payload = {
        "knot": name,
        "coloring": list(c.values),
        "graph": G.to_json(),
        "connected": report.connected,
        "forest": [[e.src, e.label, e.dst] for e in F.edges],
        "determinants": list(report.determinants),
        "rank_mod_p": report.rank_mod_p,
        "lemma_ok": report.ok,
    }
    lines = [
        f"coloring: {list(c.values)}",
        f"palette graph: {len(G.vertices)} colors, {len(G.edges)} edges, connected={report.connected}",
        f"det A_j: {list(report.determinants)}",
        f"determinant lemma holds: {report.ok}",
    ]
    _emit(args, payload, "\n".join(lines))


def _cmd_bounds(args, parser):
    p, m = _require_p(args, parser), _single_m(args, parser)
    payload: dict = {"p": p, "m": m}
    lines = []
    if args.knot or args.pd:
        name, d = _diagram(args, parser)
        rep = bounds.combined_lower_bound(d, p, m)
        payload.update(rep.to_json())
        payload["knot"] = name
        lines.append(f"best_lower = {rep.best_lower}")
        lines.append(f"log bound = {rep.log_bound}, needs four = {rep.needs_four}, m-determinant = {rep.m_determinant}")
    else:
        lb = bounds.log_lower_bound(p, m)
        nf = bounds.needs_four(p, m)
        payload.update({
            "log_bound": lb.bound,
            "log_bound_alternate": lb.alternate_bound,
            "needs_four": nf.needs_four,
            "needs_four_conditions": nf.conditions,
        })
        lines.append(f"log bound = {lb.bound} (alternate m={lb.alternate_m}: {lb.alternate_bound})")
        lines.append(f"needs four = {nf.needs_four}")
    try:
        S = bounds.obstruction_set(p, m)
        payload["obstruction_set"] = list(S.S)
        lines.append(f"obstruction set S = {set(S.S)}")
    except KnotColorError:
        payload["obstruction_set"] = None
    _emit(args, payload, "\n".join(lines))


def _cmd_orbits(args, parser):
    name, d = _diagram(args, parser)
    p, m = _require_p(args, parser), _single_m(args, parser)
    rep = auto.orbit_report(d, p, m)
    payload = {"knot": name, **rep.to_json()}
    text = (
        f"{rep.class_count} class(es) of nontrivial ({p},{m})-colorings, sizes {list(rep.class_sizes)}, "
        f"colors used {list(rep.colors_used_per_class)}, free action: {rep.free}"
    )
    _emit(args, payload, text)


def _cmd_mincol(args, parser):
    name, d = _diagram(args, parser)
    p, m = _require_p(args, parser), _single_m(args, parser)
    params = coloring.ColoringParams(p, m)
    budget = moves.SearchBudget.parse(args.budget)
    census = coloring.count_colorings(d, params)
    fixed = census.min_nontrivial_colors
    if fixed is None:
        raise InvalidParameters(f"{name} has no nontrivial ({p},{m})-colorings")
    payload = {"knot": name, "p": p, "m": m, "diagram_min_colors": fixed}
    lines = [f"fewest colors on the given diagram: {fixed}"]
    if args.search:
        start = next(c for c in coloring.nontrivial_colorings(d, params) if c.color_count == fixed)
        res = moves.minimize_colors(d, start, budget, target=args.target)
        payload["search"] = res.to_json()
        lines.append(f"search: {res.colors_used} colors on a {res.best_diagram.crossing_count}-crossing diagram"
                     f" after {len(res.move_trace)} moves ({res.states} states"
                     f"{', budget exhausted' if res.exhausted else ''})")
        lines.append(f"diagram: {res.best_diagram.to_pd_string()}")
        lines.append(f"coloring: {list(res.best_coloring.values)}")
    _emit(args, payload, "\n".join(lines))


def _cmd_kh(args, parser):
    name, d = _diagram(args, parser)
    p, m = _require_p(args, parser), _single_m(args, parser)
    rep = coloring.kh_check(d, coloring.ColoringParams(p, m))
    payload = {"knot": name, "p": p, "m": m, **rep.to_json()}
    text = (
        f"arc-injective nontrivial coloring: {'yes' if rep.admits_injective else 'no'} "
        f"({rep.injective} of {rep.nontrivial}; {rep.arcs} arcs; alternating={rep.alternating})"
    )
    _emit(args, payload, text)


_COMMANDS = {
    "alex": _cmd_alex,
    "mdet": _cmd_mdet,
    "color": _cmd_color,
    "palette": _cmd_palette,
    "bounds": _cmd_bounds,
    "orbits": _cmd_orbits,
    "mincol": _cmd_mincol,
    "kh": _cmd_kh,
}


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        _COMMANDS[args.command](args, sub)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except KnotColorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(cli_main())
