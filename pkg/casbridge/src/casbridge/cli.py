"""Command line: export subgroup lattices, verify interchange documents."""
from __future__ import annotations

import argparse
import sys

from .export import EngineUnavailable, GroupSpec, export_group
from .validate import ValidationError, verify_export


def cmd_export(args) -> int:
    spec = GroupSpec.parse(args.group)
    report = export_group(spec, args.out, max_order=args.max_order)
    print(f"wrote {args.out}: {report['group_name']} with {report['elements']} "
          f"subgroups, {report['meet_irreducible_classes']} meet-irreducible classes")
    return 0


def cmd_verify(args) -> int:
    report = verify_export(args.path)
    for key, value in report.items():
        print(f"{key}: {value}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cas-bridge",
        description="Subgroup-lattice exporter for the lattice interchange format.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_exp = sub.add_parser("export", help="write a group's subgroup lattice")
    p_exp.add_argument("--group", required=True,
                       help="symmetric:N | cyclic:N | dihedral:N | "
                            "elementary_abelian:P,K | named:F8")
    p_exp.add_argument("--out", required=True)
    p_exp.add_argument("--max-order", type=int, default=10_000)
    p_exp.set_defaults(fn=cmd_export)

    p_ver = sub.add_parser("verify", help="validate a document and summarize it")
    p_ver.add_argument("path")
    p_ver.set_defaults(fn=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EngineUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
