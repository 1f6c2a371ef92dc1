"""Command-line front end.

Commands: ``dim``, ``structure``, ``project``, ``moduli``, ``maps``,
``verify-paper``.  Exit codes are stable: 0 success, 2 unknown name or
configuration, 3 quadrature non-convergence, 4 internal consistency
failure, 5 bad input tensor.  The environment variable SYMTENSOR_TOL
overrides the zero tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import spaces, voigt
from .characters import QuadratureNotConvergedError, fix_dimension
from .core import DEFAULT_TOL, FlatTensor, TolerancePolicy, kron_power
from .groups import CATALOG_NAMES, resolve_group
from .projector import (InternalConsistencyError, MembershipError,
                        NoVoigtMapError, extract_isotropic_moduli, project,
                        structure_report)
from .verification import ROW_CATEGORIES, run_rows

EXIT_OK = 0
EXIT_NAME = 2
EXIT_QUADRATURE = 3
EXIT_INTERNAL = 4
EXIT_INPUT = 5


def _tolerance() -> TolerancePolicy:
    raw = os.environ.get("SYMTENSOR_TOL")
    if not raw:
        return DEFAULT_TOL
    try:
        return TolerancePolicy(zero_tol=float(raw))
    except ValueError as exc:
        raise SystemExit(f"bad SYMTENSOR_TOL: {exc}")


def _parse_axis(text):
    if text is None:
        return None
    parts = [float(p) for p in text.replace(",", " ").split()]
    if len(parts) != 3:
        raise ValueError("axis needs three components")
    axis = np.array(parts)
    norm = float(np.linalg.norm(axis))
    if norm == 0.0:
        raise ValueError("axis must be nonzero")
    return axis / norm


def _resolve(args):
    sp = spaces.lookup(args.space)
    axis = _parse_axis(getattr(args, "axis", None))
    group = resolve_group(args.group, sp.n, axis=axis)
    return sp, group


def _read_tensor(path: str, sp) -> FlatTensor:
    with open(path) as fh:
        payload = json.load(fh)
    if "coeffs" not in payload:
        raise ValueError("tensor file needs a 'coeffs' array")
    declared = payload.get("space")
    if declared and declared.lower() != sp.name:
        raise ValueError(f"file declares space {declared!r}, command uses {sp.name!r}")
    n = int(payload.get("n", sp.n))
    k = int(payload.get("k", sp.k))
    if (n, k) != (sp.n, sp.k):
        raise ValueError(f"file is order {k} over R^{n}, space {sp.name} needs "
                         f"order {sp.k} over R^{sp.n}")
    return FlatTensor(n, k, np.asarray(payload["coeffs"], dtype=float))


def _write_tensor(path, sp, tensor: FlatTensor, extra=None) -> None:
    payload = {"space": sp.name, "n": tensor.n, "k": tensor.k,
               "coeffs": tensor.coeffs.tolist()}
    if extra:
        payload.update(extra)
    text = json.dumps(payload)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_dim(args) -> int:
    try:
        sp, group = _resolve(args)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NAME
    try:
        dim = fix_dimension(sp, group, degree=args.degree)
    except QuadratureNotConvergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    if args.format == "json":
        print(json.dumps({"space": sp.name, "group": group.catalog_id, "dim": dim}))
    else:
        print(dim)
    return EXIT_OK


def cmd_structure(args) -> int:
    try:
        sp, group = _resolve(args)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NAME
    try:
        report = structure_report(sp, group, tol=_tolerance())
    except NoVoigtMapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NAME
    except QuadratureNotConvergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except InternalConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.format == "json":
        print(json.dumps(report.to_json()))
    elif args.format == "latex":
        print(report.to_latex())
    else:
        print(report.to_text())
    return EXIT_OK


def cmd_project(args) -> int:
    try:
        sp, group = _resolve(args)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NAME
    try:
        tensor = _read_tensor(args.input, sp)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        projected = project(sp, group, tensor)
    except MembershipError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    residual = 0.0
    for element in group.sample_elements():
        moved = kron_power(element.matrix, sp.k).matrix @ projected.coeffs
        residual = max(residual, float(np.max(np.abs(moved - projected.coeffs))))
    _write_tensor(args.output, sp, projected, extra={"invariance_residual": residual})
    print(f"invariance residual over group generators: {residual:.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_moduli(args) -> int:
    if args.values:
        try:
            values = json.loads(args.values)
        except json.JSONDecodeError as exc:
            print(f"error: bad --values JSON: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        try:
            with open(args.input) as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    sp = spaces.lookup("major3")
    group = resolve_group("so3", 3)
    try:
        report = structure_report(sp, group, tol=_tolerance())
        lam, mu, mu_c = extract_isotropic_moduli(report, values)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps({"lambda": lam, "mu": mu, "mu_c": mu_c}))
    return EXIT_OK


def cmd_maps(args) -> int:
    if args.dump:
        print(json.dumps(voigt.dump_tables(), indent=2))
    else:
        for m in voigt.ALL_MAPS:
            print(f"{m.name}: order {m.order} over R^{m.n} -> R^{m.length}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    categories = None
    if args.rows:
        categories = [c.strip() for c in args.rows.split(",") if c.strip()]
        unknown = [c for c in categories if c not in ROW_CATEGORIES]
        if unknown:
            print(f"error: unknown row categories {unknown}; "
                  f"known: {', '.join(ROW_CATEGORIES)}", file=sys.stderr)
            return EXIT_NAME
    failures = 0
    total = 0
    for row, result in run_rows(categories):
        total += 1
        status = "PASS" if result.ok else "FAIL"
        line = f"[{status}] {row.name}"
        if not result.ok:
            line += f"  expected: {result.expected}  actual: {result.actual}"
            failures += 1
        print(line)
    print(f"{total - failures}/{total} rows passed")
    return EXIT_OK if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symtensor",
        description="invariant-subspace dimensions and symmetrized tensor structure",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pair(p):
        p.add_argument("--space", required=True,
                       help=f"space name: {', '.join(spaces.CATALOG_NAMES)}")
        p.add_argument("--group", required=True,
                       help=f"group name: {', '.join(CATALOG_NAMES)}")
        p.add_argument("--axis", help="rotation axis for 3D axis groups, e.g. '0,0,1'")

    p = sub.add_parser("dim", help="fixed-subspace dimension via the trace formula")
    add_pair(p)
    p.add_argument("--degree", type=int, default=None, help="quadrature degree override")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("structure", help="symbolic structure of the invariant tensors")
    add_pair(p)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("project", help="group-average a tensor from a JSON file")
    add_pair(p)
    p.add_argument("--input", required=True, help="JSON tensor file")
    p.add_argument("--output", help="output path (default: stdout)")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("moduli", help="isotropic moduli of the 45-constant theory")
    p.add_argument("--values", help="inline JSON, e.g. '{\"C12\":1,\"C44\":3,\"C45\":1}'")
    p.add_argument("--input", help="JSON file with the label values")
    p.set_defaults(func=cmd_moduli)

    p = sub.add_parser("maps", help="slot-order tables of the vectorization maps")
    p.add_argument("--dump", action="store_true", help="emit the full tables as JSON")
    p.set_defaults(func=cmd_maps)

    p = sub.add_parser("verify-paper", help="run the published-value verification table")
    p.add_argument("--rows", help=f"comma-separated categories: {', '.join(ROW_CATEGORIES)}")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "moduli" and not (args.values or args.input):
        parser.error("moduli needs --values or --input")
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
