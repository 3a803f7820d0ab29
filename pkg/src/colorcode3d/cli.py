"""Command line surface: build lattices and codes, classify boundaries,
run condensation verification.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
Reports are deterministic: identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"


class UsageError(Exception):
    pass


def _report_skeleton(command: str, inputs: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "command": command,
        "inputs": inputs,
        "results": {},
        "passed": None,
    }


def _emit(report: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = _render_text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_text(report: dict) -> str:
    lines = [
        "# %s report (schema v%d, tool %s)"
        % (report["command"], report["schema_version"], report["tool_version"])
    ]
    for key, value in sorted(report["inputs"].items()):
        lines.append("input %s = %s" % (key, value))
    lines.extend(_render_value(report["results"], ""))
    if report["passed"] is not None:
        lines.append("RESULT %s" % ("PASS" if report["passed"] else "FAIL"))
    return "\n".join(lines) + "\n"


def _render_value(value, prefix):
    lines = []
    if isinstance(value, dict):
        for key in sorted(value, key=str):
            sub = value[key]
            name = "%s.%s" % (prefix, key) if prefix else str(key)
            if isinstance(sub, (dict, list, tuple)):
                lines.extend(_render_value(sub, name))
            else:
                lines.append("%s = %s" % (name, sub))
    elif isinstance(value, (list, tuple)):
        for i, sub in enumerate(value):
            name = "%s[%d]" % (prefix, i)
            if isinstance(sub, (dict, list, tuple)):
                lines.extend(_render_value(sub, name))
            else:
                lines.append("%s = %s" % (name, sub))
    else:
        lines.append("%s = %s" % (prefix, value))
    return lines


# ---------------------------------------------------------------------------
# build


def _build_target(target: str):
    from . import codes as codes_mod
    from .lattice import build_minimal_model

    if target == "minimal-model":
        complex_ = build_minimal_model()
        code = codes_mod.assemble_color_code(complex_)
        return code, complex_
    if target.startswith("sublattice:"):
        which = target.split(":", 1)[1]
        from .fixtures import sublattice_fixture

        try:
            return sublattice_fixture(which), None
        except KeyError as exc:
            raise UsageError(str(exc))
    if target.startswith("gauge:"):
        path = target.split(":", 1)[1]
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError("cannot read graph file: %s" % exc)
        matter = codes_mod.parse_matter_graph(text)
        return codes_mod.gauge_z2(matter), None
    raise UsageError("unknown build target %r" % target)


def cmd_build(args) -> int:
    from . import codes as codes_mod

    code, complex_ = _build_target(args.target)
    report = _report_skeleton("build", {"target": args.target})
    k = codes_mod.logical_qubit_count(code)
    rel = codes_mod.relation_count(code)
    census = "n=%d X=%d Z=%d rel=%d k=%d" % (
        code.n, len(code.x_generators), len(code.z_generators), rel, k
    )
    report["results"]["census"] = census
    report["results"]["n"] = code.n
    report["results"]["x_generators"] = len(code.x_generators)
    report["results"]["z_generators"] = len(code.z_generators)
    report["results"]["relations"] = rel
    report["results"]["k"] = k
    if complex_ is not None:
        by_color: dict = {}
        for c in complex_.x_cells():
            by_color[c.color] = by_color.get(c.color, 0) + 1
        report["results"]["x_cells_by_color"] = by_color
        report["results"]["relation_breakdown"] = codes_mod.relation_breakdown(
            complex_, code
        )
    if args.code_out:
        with open(args.code_out, "w") as fh:
            fh.write(codes_mod.serialize_code(code))
        report["results"]["code_file"] = args.code_out
    if args.complex_out and complex_ is not None:
        with open(args.complex_out, "w") as fh:
            fh.write(complex_.export_text())
        report["results"]["complex_file"] = args.complex_out
    report["passed"] = True
    _emit(report, args)
    return 0


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args) -> int:
    from .anyons import (
        TABLE_FAMILY_ROWS,
        TABLE_WALL_COLUMNS,
        classify_boundaries,
        condensation_grid,
    )

    report = _report_skeleton(
        "classify",
        {"quotient_colors": args.quotient_colors, "raw_magic": args.raw_magic},
    )
    cls = classify_boundaries()
    results = report["results"]
    results["totals"] = {
        "elementary": cls.elementary_total,
        "nested": cls.nested_total,
        "magic": cls.magic_designated,
        "total": cls.total,
    }
    results["nested_breakdown"] = dict(sorted(cls.nested_breakdown.items()))
    results["orbit_size_multiset"] = list(cls.orbit_size_multiset)
    results["lagrangians"] = [
        {"name": name, "orbit_size": size}
        for name, size in zip(cls.names, cls.orbit_sizes)
    ]
    results["magic_boundary"] = str(cls.magic_set)
    if args.raw_magic:
        results["raw_t_non_condensing"] = cls.raw_t_non_condensing
    if args.quotient_colors:
        results["color_quotient_classes"] = cls.color_quotient_classes
    results["web"] = [
        {"source": e.source, "wall": e.wall, "image": e.image} for e in cls.web
    ]
    grid = condensation_grid()
    headers = [name for name, _ in TABLE_WALL_COLUMNS] + ["s12*s23*s13", "T"]
    results["condensation_grid"] = {
        "columns": headers,
        "rows": [
            {"family": fam, "condenses": ["Y" if v else "N" for v in row]}
            for (fam, _), row in zip(TABLE_FAMILY_ROWS, grid)
        ],
    }
    report["passed"] = (
        cls.elementary_total == 30
        and cls.nested_total == 70
        and cls.total == 101
    )
    _emit(report, args)
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    from . import codes as codes_mod

    transversal = args.transversal
    report = _report_skeleton(
        "verify", {"target": args.target, "transversal": transversal}
    )
    results = report["results"]

    if args.target == "minimal-model":
        from .lattice import build_minimal_model

        complex_ = build_minimal_model()
        if transversal in ("none", "T"):
            from .verify import magic_boundary_report

            mb = magic_boundary_report(complex_)
            matrix = mb.post if transversal == "T" else mb.pre
            symbolic = mb.symbolic_post if transversal == "T" else mb.symbolic_pre
            grid = {}
            mismatches = []
            for (op, side), cell in sorted(matrix.items()):
                grid["%s@%s" % (op, side)] = {
                    "condenses": cell.condenses,
                    "symbolic": symbolic[(op, side)],
                    "failing_witnesses": len(cell.failing),
                }
                if cell.condenses != symbolic[(op, side)]:
                    mismatches.append("%s@%s" % (op, side))
            results["verdicts"] = grid
            results["mismatches"] = mismatches
            if transversal == "T":
                from .verify import bulk_symmetry_check

                bulk = bulk_symmetry_check(complex_)
                results["bulk_symmetry"] = bool(bulk["all_ok"])
                results["z_sides_unchanged"] = mb.z_sides_unchanged()
                passed = (
                    not mismatches
                    and bulk["all_ok"]
                    and mb.z_sides_unchanged()
                )
            else:
                passed = not mismatches
            report["passed"] = bool(passed)
        elif transversal.startswith("S:"):
            pair = transversal.split(":", 1)[1]
            if sorted(pair) not in (["g", "p"], ["p", "y"], ["g", "y"]):
                raise UsageError("transversal S membrane must be pg, py or yg")
            from .verify import s_wall_report

            s = s_wall_report(complex_, pair)
            results["s_wall"] = {
                "membrane": pair,
                "bulk_symmetry_holds": s["bulk_symmetry_holds"],
                "boundary_symmetry_broken": s["boundary_symmetry_broken"],
                "boundary_broken_at": list(s["boundary_broken"]),
            }
            report["passed"] = bool(
                s["bulk_symmetry_holds"] and s["boundary_symmetry_broken"]
            )
        else:
            raise UsageError("unknown transversal mode %r" % transversal)
    elif args.target.startswith("sublattice:"):
        if transversal != "none":
            raise UsageError("fixtures support --transversal none only")
        which = args.target.split(":", 1)[1]
        from .fixtures import fixture_logicals, sublattice_fixture
        from .verify import condenses

        code = sublattice_fixture(which)
        lx, lz = fixture_logicals(which)
        v_string = condenses(code, lz, "rough-boundary string")
        v_membrane = condenses(code, lx, "smooth-boundary membrane")
        results["string_condenses_on_rough"] = v_string.condenses
        results["membrane_condenses_on_smooth"] = v_membrane.condenses
        results["k"] = codes_mod.logical_qubit_count(code)
        report["passed"] = bool(
            v_string.condenses and v_membrane.condenses and results["k"] == 1
        )
    elif args.target.startswith("gauge:"):
        if transversal != "none":
            raise UsageError("gauge targets support --transversal none only")
        code, _ = _build_target(args.target)
        results["k"] = codes_mod.logical_qubit_count(code)
        results["census"] = "n=%d X=%d Z=%d k=%d" % (
            code.n, len(code.x_generators), len(code.z_generators), results["k"]
        )
        report["passed"] = True
    else:
        raise UsageError("unknown verify target %r" % args.target)

    _emit(report, args)
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------


def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    """Shared flags; the subcommand copies suppress defaults so values given
    before the subcommand survive."""
    p = argparse.ArgumentParser(add_help=False)
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument(
        "--format", choices=("text", "json"),
        **({"default": "text"} if defaults else kw)
    )
    p.add_argument("--out", help="write the report to a file",
                   **({"default": None} if defaults else kw))
    p.add_argument(
        "--seed", type=int,
        help="reserved; all computations are deterministic",
        **({"default": None} if defaults else kw),
    )
    return p


def make_parser() -> argparse.ArgumentParser:
    common = _common_flags(defaults=False)
    parser = argparse.ArgumentParser(
        prog="colorcode3d",
        description="Boundary reconstruction and verification for the 3D color code",
        parents=[_common_flags(defaults=True)],
    )
    sub = parser.add_subparsers(dest="command")

    p_build = sub.add_parser(
        "build", help="build a code and print its census", parents=[common]
    )
    p_build.add_argument(
        "target",
        help="minimal-model | sublattice:green|yellow|purple | gauge:<graph-file>",
    )
    p_build.add_argument("--code-out", default=None, help="write the serialized code")
    p_build.add_argument(
        "--complex-out", default=None, help="write the cell-complex export"
    )
    p_build.set_defaults(func=cmd_build)

    p_classify = sub.add_parser(
        "classify", help="boundary classification census", parents=[common]
    )
    p_classify.add_argument("--quotient-colors", action="store_true")
    p_classify.add_argument("--raw-magic", action="store_true")
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser(
        "verify", help="condensation verification", parents=[common]
    )
    p_verify.add_argument("target")
    p_verify.add_argument(
        "--transversal", default="none", help="none | T | S:<pg|py|yg>"
    )
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
