"""Command-line front end.

Every subcommand prints JSON unless ``--text`` is given.  Exit codes: 0 on
success, 1 for an invalid diagram or a failed check, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import List, Optional, Union

from .cube import CubeDiagram, check_cube_crossings, cube_project_grid, validate_cube_markings
from .errors import BudgetExhausted, CrossingViolation, HyperkubeError, ParseError, ValidationError
from .floer import (
    build_grid_tilde_complex,
    euler_characteristic,
    grid_hat_table,
    homology_table,
    hyper_hat_table,
    hyper_tilde_table,
    table_to_json,
    total_rank,
)
from .grid import GridDiagram, render_grid_ascii, trace_components
from .hmoves import Move, apply_move
from .hypercube import (
    HypercubeDiagram,
    generate_markings,
    hyper_project_cube,
    hyper_project_grid,
    render_schematic,
    trace_hyperlink,
    validate_hypercube,
)
from .pltorus import torus_report
from .search import SearchSpec, fixture_report, search_lifts

Diagram = Union[GridDiagram, CubeDiagram, HypercubeDiagram]


class UsageError(Exception):
    pass


# file handling -----------------------------------------------------------------

def fixture_path(name: str) -> Path:
    """A bundled fixture by file name (``examples/foo.json`` finds ``foo.json``)."""
    return Path(str(resources.files("hyperkube") / "data" / Path(name).name))


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    bundled = fixture_path(path)
    if bundled.exists():
        return bundled
    raise UsageError(f"no such file: {path}")


def diagram_from_json(d: dict) -> Diagram:
    if not isinstance(d, dict):
        raise ParseError("top-level JSON value must be an object")
    try:
        if "W" in d:
            return validate_hypercube(d["size"], d["W"], d["X"], d["Y"], d["Z"])
        if "Z" in d:
            c = validate_cube_markings(d["size"], d["X"], d["Y"], d["Z"], d.get("axes", "xyz"))
            rep = check_cube_crossings(c)
            if not rep.ok:
                plane, s1, s2 = rep.violations[0]
                raise CrossingViolation(plane, (s1, s2), f"segments {s1} and {s2} cross the wrong way")
            return c
        if "xCol" in d:
            return GridDiagram.from_json(d)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"missing or malformed field: {exc}") from exc
    raise ParseError("cannot tell the diagram kind from the fields present")


def parse_diagram_file(path: Union[str, Path]) -> Diagram:
    """Load and validate a grid, cube or hypercube JSON file."""
    text = Path(path).read_text()
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    return diagram_from_json(d)


def kind_of(d: Diagram) -> str:
    if isinstance(d, HypercubeDiagram):
        return "hypercube"
    if isinstance(d, CubeDiagram):
        return "cube"
    return "grid"


def _load(path: str) -> Diagram:
    return parse_diagram_file(_resolve(path))


def _need(d: Diagram, *kinds: str) -> None:
    if kind_of(d) not in kinds:
        raise UsageError(f"this subcommand needs a {' or '.join(kinds)} diagram, got {kind_of(d)}")


def _emit(obj, text: Optional[str], as_text: bool) -> None:
    if as_text and text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _table_text(table) -> str:
    lines = ["maslov  alexander  rank"]
    for (m, a), r in table.items():
        alex = ",".join(f"{v / 2:g}" for v in a)
        lines.append(f"{m:>6}  ({alex})  {r}")
    return "\n".join(lines)


# subcommands ---------------------------------------------------------------------

def cmd_validate(args) -> int:
    d = _load(args.file)
    out = {"valid": True, "kind": kind_of(d), "size": d.size}
    if isinstance(d, HypercubeDiagram):
        out["class"] = torus_report(d)["class"]
        out["components"] = len(trace_hyperlink(d))
        text = f"valid, class={out['class']}"
    elif isinstance(d, GridDiagram):
        out["components"] = len(trace_components(d))
        text = f"valid grid, {out['components']} component(s)"
    else:
        text = "valid cube"
    _emit(out, text, args.text)
    return 0


def cmd_project(args) -> int:
    d = _load(args.file)
    _need(d, "hypercube", "cube")
    if args.cube:
        _need(d, "hypercube")
        c = hyper_project_cube(d, args.cube)
        _emit(c.to_json(), None, args.text)
        return 0
    g = hyper_project_grid(d, args.plane) if isinstance(d, HypercubeDiagram) \
        else cube_project_grid(d, args.plane)
    _emit(g.to_json(), render_grid_ascii(g), args.text)
    return 0


def cmd_render(args) -> int:
    d = _load(args.file)
    if isinstance(d, HypercubeDiagram):
        text = render_schematic(d)
    elif isinstance(d, GridDiagram):
        text = render_grid_ascii(d)
    else:
        text = "\n".join(f"[{p}]\n{render_grid_ascii(cube_project_grid(d, p))}"
                         for p in ("xy", "yz", "zx"))
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


def cmd_classify(args) -> int:
    d = _load(args.file)
    _need(d, "hypercube")
    rep = torus_report(d)
    kinds = [c["class"] for c in rep["circles"]]
    text = (f"class={rep['class']} V={rep['counts']['V']} E={rep['counts']['E']} "
            f"F={rep['counts']['F']} chi={rep['chi']} horizontal={kinds.count('horizontal')} "
            f"vertical={kinds.count('vertical')}")
    _emit(rep, text, args.text)
    return 0


def _hat_or_tilde(d: Diagram, variant: str, route: str, jobs: int):
    if isinstance(d, HypercubeDiagram):
        if variant == "hat":
            return hyper_hat_table(d, route, jobs=jobs)
        return hyper_tilde_table(d, route, jobs=jobs)
    if variant == "hat":
        return grid_hat_table(d)
    return homology_table(build_grid_tilde_complex(d))


def cmd_homology(args) -> int:
    d = _load(args.file)
    _need(d, "hypercube", "grid")
    table = _hat_or_tilde(d, args.variant, args.route, args.jobs)
    out = {"variant": args.variant, "rank": total_rank(table), "table": table_to_json(table)}
    _emit(out, f"{args.variant} rank {out['rank']}\n{_table_text(table)}", args.text)
    return 0


def cmd_euler(args) -> int:
    d = _load(args.file)
    _need(d, "hypercube", "grid")
    poly = euler_characteristic(_hat_or_tilde(d, "hat", args.route, args.jobs))
    _emit({"euler": str(poly), "terms": poly.to_json()}, str(poly), args.text)
    return 0


def cmd_move(args) -> int:
    d = _load(args.file)
    _need(d, "hypercube")
    if args.move:
        try:
            move = Move.from_json(json.loads(args.move))
        except json.JSONDecodeError as exc:
            raise UsageError(f"--move is not JSON: {exc.msg}") from exc
    else:
        move = Move(args.kind, index=args.index, label=args.label, axis=args.axis,
                    level=args.level, split=args.split, block=args.block)
    needed = {"stabilize": ("index",), "destabilize": ("index",),
              "commute": ("axis", "level"), "component_swap": ("split",)}
    missing = [k for k in needed.get(move.kind, ()) if getattr(move, k) is None]
    if missing:
        raise UsageError(f"{move.kind} needs {', '.join('--' + k for k in missing)}")
    out = apply_move(d, move)
    _emit(out.to_json(), render_schematic(out), args.text)
    return 0


def cmd_search(args) -> int:
    wx = yz = None
    if args.target_wx:
        wx = _load(args.target_wx)
        _need(wx, "grid")
    if args.target_yz:
        yz = _load(args.target_yz)
        _need(yz, "grid")
    try:
        spec = SearchSpec(args.size, wx, yz, args.predicate, args.klass, args.budget,
                          args.seed, args.max_results)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        res = search_lifts(spec, jobs=args.jobs)
    except BudgetExhausted as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "stats": exc.stats}, sort_keys=True) + "\n")
        return 1
    for hit in res.hits:
        sys.stdout.write(json.dumps(hit.to_json(), sort_keys=True) + "\n")
    sys.stderr.write(json.dumps({"stats": res.stats.to_json()}, sort_keys=True) + "\n")
    return 0


def cmd_generate(args) -> int:
    import random
    rng = random.Random(args.seed)
    for attempt in range(args.attempts):
        m = generate_markings(args.size, rng=rng)
        if not args.valid:
            _emit(m.to_json(), render_schematic(m), args.text)
            return 0
        try:
            h = validate_hypercube(m.size, m.W, m.X, m.Y, m.Z)
        except ValidationError:
            continue
        _emit(h.to_json(), render_schematic(h), args.text)
        return 0
    sys.stderr.write(f"no valid diagram in {args.attempts} attempts\n")
    return 1


def cmd_fixture_report(args) -> int:
    d = _load(args.file)
    _need(d, "hypercube")
    rep = fixture_report(d, homology=not args.no_homology)
    text = [f"size={rep['size']} components={rep['components']} class={rep['class']} "
            f"chi={rep['chi']}"]
    for plane, p in rep["projections"].items():
        text.append(f"{plane}: {p['components']} component(s), linking {p['linking']}")
    if "euler" in rep:
        text.append(f"tilde rank {rep['tilde_rank']}, hat rank {rep['hat_rank']}, "
                    f"euler {rep['euler']}")
    _emit(rep, "\n".join(text), args.text)
    return 0


# argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperkube",
                                description="Grid, cube and hypercube diagram toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true", help="human-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, file=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if file:
            sp.add_argument("file")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check marking and crossing conditions")
    sp = add("project", cmd_project, "grid (or cube) projection")
    sp.add_argument("--plane", default="wx", choices=["wx", "yz", "xy", "zw", "zx"])
    sp.add_argument("--cube", choices=["w", "y"], help="drop this axis of a hypercube instead")
    add("render", cmd_render, "ASCII schematic")
    add("classify", cmd_classify, "PL torus counts and double point circles")
    for name, func in (("homology", cmd_homology), ("euler", cmd_euler)):
        sp = add(name, func, "homology table" if name == "homology" else "Euler characteristic of hat homology")
        sp.add_argument("--route", default="auto", choices=["auto", "direct", "tensor"])
        if name == "homology":
            sp.add_argument("--variant", default="hat", choices=["hat", "tilde"])
    sp = add("move", cmd_move, "apply a hypercube move")
    sp.add_argument("--move", help="move as JSON, e.g. '{\"kind\": \"swap\"}'")
    sp.add_argument("--kind", default="swap",
                    choices=["stabilize", "destabilize", "commute", "swap", "component_swap"])
    sp.add_argument("--index", type=int)
    sp.add_argument("--label", choices=["W", "Y"])
    sp.add_argument("--axis", choices=list("wxyz"))
    sp.add_argument("--level", type=int)
    sp.add_argument("--split", type=int)
    sp.add_argument("--block", type=int, choices=[0, 1])
    sp = add("search", cmd_search, "search for hypercube lifts", file=False)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--target-wx")
    yz = sp.add_mutually_exclusive_group()
    yz.add_argument("--target-yz")
    yz.add_argument("--predicate", choices=["hopf", "unknot", "split2"])
    sp.add_argument("--class", dest="klass", default="any",
                    choices=["any", "embedded", "lagrangian", "immersed"])
    sp.add_argument("--budget", type=int, default=10_000)
    sp.add_argument("--max-results", type=int, default=1)
    sp = add("generate", cmd_generate, "random marking set", file=False)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--valid", action="store_true", help="retry until every condition holds")
    sp.add_argument("--attempts", type=int, default=10_000)
    sp = add("fixture-report", cmd_fixture_report, "projections, class and homology in one go")
    sp.add_argument("--no-homology", action="store_true")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"hyperkube: {exc}\n")
        return 2
    except ValidationError as exc:
        sys.stdout.write(json.dumps({"valid": False, "condition": exc.condition,
                                     "message": str(exc)}, sort_keys=True) + "\n")
        return 1
    except HyperkubeError as exc:
        sys.stderr.write(f"hyperkube: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
