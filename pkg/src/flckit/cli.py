"""Command-line front end: evaluate controllers, validate definition files,
and export membership/control-surface data as CSV, optionally with figures.

Exit codes: 0 success, 1 definition error, 2 usage or input error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import numpy as np

from .controller import evaluate
from .defuzz import EmptyOutputError
from .flcfile import ERROR, ControllerDefinition, parse, validate
from .washer import builtin_definition

EXIT_OK = 0
EXIT_DEFINITION = 1
EXIT_USAGE = 2
EXIT_IO = 3

BUILTINS = {"washer": builtin_definition}


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def _load_definition(args: argparse.Namespace) -> tuple[ControllerDefinition | None, int]:
    """Definition from --builtin or --file, already validated."""
    if args.builtin is not None:
        factory = BUILTINS.get(args.builtin)
        if factory is None:
            return None, _fail(EXIT_USAGE, f"unknown builtin {args.builtin!r}")
        return factory(), EXIT_OK
    try:
        data = open(args.file, "rb").read()
    except OSError as exc:
        return None, _fail(EXIT_IO, f"cannot read {args.file}: {exc}")
    defn, diags = parse(data)
    if defn is None:
        for d in diags:
            print(d, file=sys.stderr)
        return None, EXIT_DEFINITION
    semantic = validate(defn)
    for d in semantic:
        print(d, file=sys.stderr)
    if any(d.severity == ERROR for d in semantic):
        return None, EXIT_DEFINITION
    return defn, EXIT_OK


def _parse_assignments(
    defn: ControllerDefinition, pairs: Sequence[str], exclude: set[str] = frozenset()
) -> tuple[dict[str, float] | None, str]:
    """--set name=value pairs into a full input-value map."""
    input_names = [v.name for v in defn.inputs]
    values: dict[str, float] = {}
    for pair in pairs:
        name, sep, raw = pair.partition("=")
        if not sep:
            return None, f"--set expects name=value, got {pair!r}"
        if name not in input_names:
            return None, f"unknown input variable {name!r}"
        if name in exclude:
            return None, f"{name!r} is both swept and set"
        if name in values:
            return None, f"{name!r} assigned twice"
        try:
            value = float(raw)
        except ValueError:
            return None, f"invalid value for {name!r}: {raw!r}"
        if not np.isfinite(value):
            return None, f"invalid value for {name!r}: {raw!r}"
        values[name] = value
    missing = [n for n in input_names if n not in values and n not in exclude]
    if missing:
        return None, f"missing input assignment for: {', '.join(missing)}"
    return values, ""


def _write_csv(path: str, header: str, rows: list[str]) -> int:
    try:
        with open(path, "w", newline="") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(row + "\n")
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {path}: {exc}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    defn, code = _load_definition(args)
    if defn is None:
        return code
    values, why = _parse_assignments(defn, args.set)
    if values is None:
        return _fail(EXIT_USAGE, why)
    try:
        outputs = evaluate(defn, values, args.resolution)
    except EmptyOutputError as exc:
        return _fail(EXIT_DEFINITION, f"no rule fired: {exc}")
    for name, value in outputs.items():
        print(f"{name} = {value:#.6g}")
    return EXIT_OK


def cmd_surface(args: argparse.Namespace) -> int:
    defn, code = _load_definition(args)
    if defn is None:
        return code
    if not 1 <= len(args.sweep) <= 2:
        return _fail(EXIT_USAGE, "--sweep must be given once or twice")
    sweeps: list[tuple[str, int]] = []
    for spec in args.sweep:
        name, sep, raw = spec.partition(":")
        if not sep or not raw.isdigit() or int(raw) < 2:
            return _fail(EXIT_USAGE, f"--sweep expects name:steps (>= 2), got {spec!r}")
        if name not in [v.name for v in defn.inputs]:
            return _fail(EXIT_USAGE, f"unknown input variable {name!r}")
        if name in [s[0] for s in sweeps]:
            return _fail(EXIT_USAGE, f"{name!r} swept twice")
        sweeps.append((name, int(raw)))
    fixed, why = _parse_assignments(defn, args.set, exclude={s[0] for s in sweeps})
    if fixed is None:
        return _fail(EXIT_USAGE, why)

    grids = [
        defn.rule_base.input_var(name).universe.grid(steps)
        for name, steps in sweeps
    ]
    out_names = [v.name for v in defn.outputs]
    header = ",".join([s[0] for s in sweeps] + out_names)
    rows = []
    results: list[list[float]] = []
    try:
        for point in _row_major(grids):
            values = dict(fixed)
            values.update({name: x for (name, _), x in zip(sweeps, point)})
            outputs = evaluate(defn, values, args.resolution)
            results.append([outputs[n] for n in out_names])
            cells = [format(x, ".9g") for x in point]
            cells += [format(outputs[n], ".9g") for n in out_names]
            rows.append(",".join(cells))
    except EmptyOutputError as exc:
        return _fail(EXIT_DEFINITION, f"no rule fired: {exc}")
    code = _write_csv(args.out, header, rows)
    if code != EXIT_OK:
        return code
    if args.plot is not None:
        return _render_surface_plot(args.plot, sweeps, grids, out_names, results)
    return EXIT_OK


def _row_major(grids: list[np.ndarray]):
    if len(grids) == 1:
        for x in grids[0]:
            yield (float(x),)
    else:
        for x in grids[0]:
            for y in grids[1]:
                yield (float(x), float(y))


def _render_surface_plot(path, sweeps, grids, out_names, results) -> int:
    from . import plotting

    data = np.asarray(results)
    try:
        if len(sweeps) == 1:
            outputs = {n: data[:, i] for i, n in enumerate(out_names)}
            plotting.plot_surface_1d(sweeps[0][0], grids[0], outputs, path)
        else:
            shape = (len(grids[0]), len(grids[1]))
            outputs = {
                n: data[:, i].reshape(shape) for i, n in enumerate(out_names)
            }
            plotting.plot_surface_2d(
                (sweeps[0][0], sweeps[1][0]), grids[0], grids[1], outputs, path
            )
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {path}: {exc}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        data = open(args.path, "rb").read()
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read {args.path}: {exc}")
    defn, diags = parse(data)
    if defn is not None:
        diags = diags + validate(defn)
    for d in diags:
        print(d)
    if any(d.severity == ERROR for d in diags):
        return EXIT_DEFINITION
    return EXIT_OK


def cmd_mfdata(args: argparse.Namespace) -> int:
    defn, code = _load_definition(args)
    if defn is None:
        return code
    var = next(
        (v for v in defn.inputs + defn.outputs if v.name == args.variable), None
    )
    if var is None:
        return _fail(EXIT_USAGE, f"unknown variable {args.variable!r}")
    resolution = args.resolution or defn.settings.resolution
    xs = var.universe.grid(resolution)
    curves = {tname: mf.sample(xs) for tname, mf in var.terms.items()}
    header = ",".join(["x"] + list(curves))
    rows = []
    for i, x in enumerate(xs):
        cells = [format(float(x), ".9g")]
        cells += [format(float(curve[i]), ".9g") for curve in curves.values()]
        rows.append(",".join(cells))
    code = _write_csv(args.out, header, rows)
    if code != EXIT_OK:
        return code
    if args.plot is not None:
        from . import plotting

        try:
            plotting.plot_membership(var, resolution, args.plot)
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot write {args.plot}: {exc}")
    return EXIT_OK


def _add_source_flags(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--file", help="controller definition (.flc) to load")
    group.add_argument("--builtin", help="built-in controller name (washer)")


def _add_resolution_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--resolution",
        type=int,
        metavar="N",
        help="override the definition's sampling resolution",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flc", description="Fuzzy-logic-controller toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a controller at crisp inputs")
    _add_source_flags(p_eval)
    p_eval.add_argument(
        "--set", action="append", default=[], metavar="NAME=VALUE",
        help="assign an input (repeatable)",
    )
    _add_resolution_flag(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_surface = sub.add_parser("surface", help="export a control surface as CSV")
    _add_source_flags(p_surface)
    p_surface.add_argument(
        "--sweep", action="append", default=[], metavar="NAME:STEPS",
        help="sweep an input (once or twice)",
    )
    p_surface.add_argument(
        "--set", action="append", default=[], metavar="NAME=VALUE",
        help="fix a non-swept input (repeatable)",
    )
    p_surface.add_argument("--out", required=True, help="CSV output path")
    p_surface.add_argument("--plot", help="also render a figure to this path")
    _add_resolution_flag(p_surface)
    p_surface.set_defaults(func=cmd_surface)

    p_validate = sub.add_parser("validate", help="check a definition file")
    p_validate.add_argument("path", help="definition file to check")
    p_validate.set_defaults(func=cmd_validate)

    p_mfdata = sub.add_parser(
        "mfdata", help="export sampled membership functions as CSV"
    )
    _add_source_flags(p_mfdata)
    p_mfdata.add_argument("variable", help="variable whose terms to sample")
    p_mfdata.add_argument("--out", required=True, help="CSV output path")
    p_mfdata.add_argument("--plot", help="also render a figure to this path")
    _add_resolution_flag(p_mfdata)
    p_mfdata.set_defaults(func=cmd_mfdata)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "resolution", None) is not None and args.resolution < 2:
        return _fail(EXIT_USAGE, "--resolution must be >= 2")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
