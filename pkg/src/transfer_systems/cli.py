"""Command-line surface: enumeration, invariants, distributions, rainbows.

Lattice sources are either builtin specs ("cyclic:p^2*q", "boolean:4",
"subspace:p=2,n=3") or interchange documents via --file.  Each command runs
its internal cross-checks and exits nonzero naming the first failed one;
CSV output is byte-identical across runs and job counts.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import basis as basis_mod
from . import enumeration, rainbows
from .interchange import load_lattice_file
from .lattice import (GroupLattice, _FIRST_PRIMES, build_chain_product,
                      build_subspace_lattice, meet_irreducible_classes)

DEFAULT_BUDGET = 10_000_000


class SourceError(ValueError):
    pass


def parse_source(spec: str) -> GroupLattice:
    """Builtin lattice grammar.

    cyclic:<term>*<term>*...  with term = letter or letter^k; the letters are
    symbolic primes, assigned small actual primes in order of appearance.
    boolean:k for the k-fold product of two-element chains.
    subspace:p=<prime>,n=<dim> for a subspace lattice.
    """
    kind, _, rest = spec.partition(":")
    if kind == "cyclic":
        seen: list[str] = []
        exponents: list[int] = []
        for term in rest.split("*"):
            m = re.fullmatch(r"([a-z])(?:\^(\d+))?", term.strip())
            if not m:
                raise SourceError(f"bad cyclic term {term!r}")
            sym, exp = m.group(1), int(m.group(2) or 1)
            if sym in seen:
                raise SourceError(f"repeated prime symbol {sym!r}")
            seen.append(sym)
            exponents.append(exp)
        if not exponents:
            raise SourceError("empty cyclic spec")
        return build_chain_product(exponents, list(_FIRST_PRIMES[: len(exponents)]))
    if kind == "boolean":
        try:
            k = int(rest)
        except ValueError:
            raise SourceError(f"bad boolean spec {rest!r}") from None
        if k < 1:
            raise SourceError("boolean:k needs k >= 1")
        return build_chain_product([1] * k)
    if kind == "subspace":
        m = re.fullmatch(r"p=(\d+),n=(\d+)", rest.strip())
        if not m:
            raise SourceError(f"bad subspace spec {rest!r} (want subspace:p=2,n=3)")
        return build_subspace_lattice(int(m.group(1)), int(m.group(2)))
    raise SourceError(f"unknown lattice source {spec!r}")


def _resolve_lattice(args) -> GroupLattice:
    if getattr(args, "file", None):
        return load_lattice_file(args.file)
    if getattr(args, "source", None):
        return parse_source(args.source)
    raise SourceError("give a lattice source or --file")


def _lattice_summary(lattice: GroupLattice) -> dict:
    return {
        "name": lattice.name,
        "elements": len(lattice),
        "arrows": len(lattice.arrows),
    }


class Report:
    def __init__(self, command: str, jobs: int = 1):
        self.data = {
            "command": command,
            "lattice": None,
            "results": {},
            "checks": [],
            "wall_time": None,
            "jobs": jobs,
        }
        self._start = time.monotonic()

    def check(self, name: str, passed: bool):
        self.data["checks"].append({"name": name, "passed": bool(passed)})

    def finish(self, args) -> int:
        self.data["wall_time"] = round(time.monotonic() - self._start, 6)
        failed = [c["name"] for c in self.data["checks"] if not c["passed"]]
        if args.json:
            print(json.dumps(self.data, indent=1))
        for name in failed:
            print(f"check failed: {name}", file=sys.stderr)
        return 1 if failed else 0


def _progress(layer, frontier, total):
    print(f"layer {layer}: frontier {frontier}, total {total}", file=sys.stderr)


def _strata_csv(strata) -> str:
    lines = ["stratum,count"]
    lines += [f"{i},{c}" for i, c in enumerate(strata)]
    return "\n".join(lines) + "\n"


def _emit_csv(csv_text: str, out_path, args):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    elif not args.json:
        sys.stdout.write(csv_text)


def cmd_enumerate(args) -> int:
    report = Report("enumerate", jobs=args.jobs)
    lattice = _resolve_lattice(args)
    report.data["lattice"] = _lattice_summary(lattice)
    store = bool(args.store)
    result = enumeration.enumerate_systems(
        lattice,
        store=store,
        jobs=args.jobs,
        max_systems=None if args.long_run else args.max_systems,
        spill_dir=args.spill_dir,
        progress=_progress if args.progress else None,
    )
    report.data["results"] = {
        "total": result.total_count,
        "stratum_counts": result.stratum_counts,
    }
    report.check("strata_sum_equals_total", sum(result.stratum_counts) == result.total_count)
    report.check("two_power_lower_bound", 2 ** result.max_stratum() <= result.total_count)
    if store:
        full = (1 << len(lattice.arrows)) - 1
        report.check("complete_system_found",
                     any(s.mask == full for _, s in result.systems))
        with open(args.store, "w", encoding="utf-8") as fh:
            for stratum, system in result.systems:
                fh.write(f"{stratum},{system.mask:x}\n")
    if not args.json:
        print(f"{lattice.name}: {result.total_count} transfer systems "
              f"in {len(result.stratum_counts)} strata")
    _emit_csv(_strata_csv(result.stratum_counts), args.out, args)
    return report.finish(args)


def cmd_invariants(args) -> int:
    report = Report("invariants", jobs=args.jobs)
    lattice = _resolve_lattice(args)
    report.data["lattice"] = _lattice_summary(lattice)
    try:
        w = basis_mod.width(lattice)
        report.check("width_equals_complete_basis_size", True)
    except RuntimeError:
        w = len(meet_irreducible_classes(lattice))
        report.check("width_equals_complete_basis_size", False)
    if args.width_only:
        report.data["results"] = {"width": w}
        if not args.json:
            print(f"{lattice.name}: width {w}")
        return report.finish(args)
    comp = basis_mod.complexity(lattice, jobs=args.jobs)
    realizer = comp.realizers[0]
    basis = basis_mod.minimal_basis(realizer)
    basis_labels = [
        [lattice.elements[a.source].label, lattice.elements[a.target].label]
        for a in basis.sorted_arrows()
    ]
    report.data["results"] = {
        "width": w,
        "complexity": comp.value,
        "realizer_count": len(comp.realizers),
        "realizer_basis": basis_labels,
    }
    report.check("width_le_complexity", w <= comp.value)
    if not args.json:
        print(f"{lattice.name}: width {w}, complexity {comp.value}, "
              f"{len(comp.realizers)} realizer(s)")
        print("one realizer's minimal basis:")
        for src, dst in basis_labels:
            print(f"  {src} -> {dst}")
    return report.finish(args)


def cmd_distribution(args) -> int:
    report = Report("distribution", jobs=args.jobs)
    lattice = _resolve_lattice(args)
    report.data["lattice"] = _lattice_summary(lattice)
    strata = enumeration.distribution(lattice, jobs=args.jobs)
    report.data["results"] = {"stratum_counts": strata}
    report.check("strata_sum_is_positive", sum(strata) >= 1)
    report.check("two_power_lower_bound", 2 ** (len(strata) - 1) <= sum(strata))
    if not args.json:
        print(f"{lattice.name}: strata {strata}")
    _emit_csv(_strata_csv(strata), args.out, args)
    return report.finish(args)


def cmd_rainbow(args) -> int:
    report = Report("rainbow")
    if args.square_free is not None:
        n = args.square_free
        canon = rainbows.canonical_max_rainbows(n)
        size = rainbows.square_free_complexity_lower(n)
        report.data["results"] = {
            "n": n,
            "max_rainbow_size": size,
            "maximizers": [[[a.x, a.y] for a in r.arcs] for r in canon],
        }
        if n <= 12:
            bf = rainbows.brute_force_max_rainbow(n)
            same = bf.size == size and (
                sorted(tuple((a.x, a.y) for a in r.arcs) for r in bf.argmax)
                == sorted(tuple((a.x, a.y) for a in r.arcs) for r in canon)
            )
            report.check("brute_force_agrees", same)
        if not args.json:
            print(f"n={n}: maximal rainbow size {size}")
            for r in canon:
                print("  maximizer:", " ".join(f"{a.x}->{a.y}" for a in r.arcs))
    else:
        n, m = args.grid
        results = {}
        try:
            results["sr"] = rainbows.sr_number(n, m)
            report.check("sr_closed_form_agrees_enumeration", True)
        except RuntimeError:
            report.check("sr_closed_form_agrees_enumeration", False)
        if n >= 2 and m >= 2 and (n + m) % 2 == 0:
            try:
                results["dr"] = rainbows.dr_number(n, m)
                report.check("dr_closed_form_agrees_enumeration", True)
            except RuntimeError:
                report.check("dr_closed_form_agrees_enumeration", False)
            lo, hi = min(n, m), max(n, m)
            results["augmented_size"] = len(rainbows.double_rainbow_augmented(hi, lo))
        if n >= 2 and m >= 2:
            results["conjectured_complexity_lower_bound"] = \
                rainbows.conjectured_cpnqm_complexity(n, m)
        report.data["results"] = {"n": n, "m": m, **results}
        if not args.json:
            parts = [f"SR({n},{m})={results.get('sr')}"]
            if "dr" in results:
                parts.append(f"DR({n},{m})={results['dr']}")
                parts.append(f"augmented={results['augmented_size']}")
            if "conjectured_complexity_lower_bound" in results:
                parts.append(f"conjectured-lower-bound="
                             f"{results['conjectured_complexity_lower_bound']}")
            print("  ".join(parts))
    return report.finish(args)


def _grid_pair(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+),(\d+)", text.strip())
    if not m:
        raise argparse.ArgumentTypeError("want n,m")
    return int(m.group(1)), int(m.group(2))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transfer-systems",
        description="Enumerate transfer systems and their generation invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_lattice_args(p):
        p.add_argument("source", nargs="?", help="builtin lattice spec")
        p.add_argument("--file", help="interchange document path")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--json", action="store_true", help="emit the full run report")

    p_enum = sub.add_parser("enumerate", help="count all transfer systems, by stratum")
    add_lattice_args(p_enum)
    p_enum.add_argument("--out", help="write stratum CSV here")
    p_enum.add_argument("--store", help="write 'stratum,mask' lines for every system")
    p_enum.add_argument("--max-systems", type=int, default=DEFAULT_BUDGET)
    p_enum.add_argument("--long-run", action="store_true",
                        help="lift the system budget (HPC-scale reproductions)")
    p_enum.add_argument("--spill-dir", help="spill the dedup set to disk here")
    p_enum.add_argument("--progress", action="store_true")
    p_enum.set_defaults(fn=cmd_enumerate)

    p_inv = sub.add_parser("invariants", help="width, complexity, realizers")
    add_lattice_args(p_inv)
    p_inv.add_argument("--width-only", action="store_true",
                       help="skip the enumeration-backed complexity")
    p_inv.set_defaults(fn=cmd_invariants)

    p_dist = sub.add_parser("distribution", help="stratum counts as CSV")
    add_lattice_args(p_dist)
    p_dist.add_argument("--out", help="write stratum CSV here")
    p_dist.set_defaults(fn=cmd_distribution)

    p_rb = sub.add_parser("rainbow", help="maximal rainbows and grid rainbow numbers")
    group = p_rb.add_mutually_exclusive_group(required=True)
    group.add_argument("--square-free", type=int, metavar="N")
    group.add_argument("--grid", type=_grid_pair, metavar="N,M")
    p_rb.add_argument("--json", action="store_true")
    p_rb.set_defaults(fn=cmd_rainbow)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SourceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except enumeration.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
