"""Minimal generating sets and the derived invariants.

``minimal_basis`` runs the generation algorithm in reverse: drop composites,
drop proper restrictions, keep one arrow per conjugation orbit, then verify
the survivors regenerate the system.  If verification fails it falls back to
greedy elimination, which is always sound; ``REDUCTION_STATS`` records how
often each path is taken.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .closure import (ArrowTables, TransferSystem, close_mask, complete_system,
                      is_closed_mask, precompute_tables)
from .enumeration import enumerate_systems
from .lattice import Arrow, GroupLattice, _iter_bits, meet_irreducible_classes

REDUCTION_STATS: Counter = Counter()


@dataclass(frozen=True)
class GeneratingSet:
    lattice: GroupLattice
    arrows: frozenset[Arrow]
    method: Optional[str] = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.arrows)

    def sorted_arrows(self) -> list[Arrow]:
        return sorted(self.arrows)


def _tables_for(system: TransferSystem, tables: Optional[ArrowTables]) -> ArrowTables:
    if tables is None:
        return precompute_tables(system.lattice)
    if tables.lattice is not system.lattice:
        raise ValueError("tables belong to a different lattice")
    return tables


def _drop_composites(tables: ArrowTables, mask: int) -> int:
    arrows = tables.lattice.arrows
    out = mask
    for i in _iter_bits(mask):
        a = arrows[i]
        for j in tables.arrows_from[a.source]:
            if j == i or not (mask >> j) & 1:
                continue
            mid = arrows[j].target
            k = tables.pair_id(mid, a.target)
            if k >= 0 and (mask >> k) & 1:
                out &= ~(1 << i)
                break
    return out


def _drop_restrictions(tables: ArrowTables, mask: int) -> int:
    # (K,H) goes when some other surviving (K',H') has H <= H' and K = H ^ K'
    lattice = tables.lattice
    arrows = lattice.arrows
    keep = mask
    idx = list(_iter_bits(mask))
    for i in idx:
        a = arrows[i]
        for j in idx:
            if j == i:
                continue
            b = arrows[j]
            if lattice.leq(a.target, b.target) and lattice.meet(a.target, b.source) == a.source:
                keep &= ~(1 << i)
                break
    return keep


def _orbit_representatives(tables: ArrowTables, mask: int) -> int:
    out = 0
    remaining = mask
    while remaining:
        low = remaining & -remaining
        i = low.bit_length() - 1
        out |= low  # canonical order makes the lowest index the lex-least arrow
        remaining &= ~tables.orbit_mask[i]
    return out


def _greedy_minimize(tables: ArrowTables, mask: int) -> int:
    current = mask
    changed = True
    while changed:
        changed = False
        for i in _iter_bits(current):
            trial = current & ~(1 << i)
            if close_mask(tables, trial) == mask:
                current = trial
                changed = True
    return current


def minimal_basis(system: TransferSystem,
                  tables: Optional[ArrowTables] = None) -> GeneratingSet:
    """A minimal generating set for a closed arrow set."""
    tables = _tables_for(system, tables)
    if not is_closed_mask(tables, system.mask):
        raise ValueError("arrow set is not closed")
    reduced = _drop_composites(tables, system.mask)
    reduced = _drop_restrictions(tables, reduced)
    reduced = _orbit_representatives(tables, reduced)
    if close_mask(tables, reduced) == system.mask:
        method = "reduce"
    else:
        reduced = _greedy_minimize(tables, system.mask)
        method = "greedy"
    REDUCTION_STATS[method] += 1
    arrows = tables.lattice.arrows
    return GeneratingSet(
        system.lattice,
        frozenset(arrows[i] for i in _iter_bits(reduced)),
        method=method,
    )


def basis_size(system: TransferSystem, tables: Optional[ArrowTables] = None) -> int:
    """Cardinality of a minimal generating set (independent of the choice)."""
    return len(minimal_basis(system, tables))


def all_minimal_bases(system: TransferSystem, cap: int = 20,
                      tables: Optional[ArrowTables] = None) -> list[GeneratingSet]:
    """Every inclusion-minimal generating subset, by pruned subset search."""
    tables = _tables_for(system, tables)
    if not is_closed_mask(tables, system.mask):
        raise ValueError("arrow set is not closed")
    if len(system) > cap:
        raise ValueError(f"system has {len(system)} arrows, above the cap of {cap}")
    target = system.mask
    idx = list(_iter_bits(target))
    suffix = [0] * (len(idx) + 1)
    for pos in range(len(idx) - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] | (1 << idx[pos])
    found: list[int] = []

    def search(pos: int, chosen: int, closed: int):
        if closed == target:
            for i in _iter_bits(chosen):
                if close_mask(tables, chosen & ~(1 << i)) == target:
                    return
            found.append(chosen)
            return
        if pos == len(idx):
            return
        if close_mask(tables, suffix[pos], closed) != target:
            return
        bit = 1 << idx[pos]
        # taking an arrow already generated would never stay minimal
        if not (closed >> idx[pos]) & 1:
            search(pos + 1, chosen | bit, close_mask(tables, bit, closed))
        search(pos + 1, chosen, closed)

    search(0, 0, 0)
    arrows = tables.lattice.arrows
    out = [
        GeneratingSet(system.lattice, frozenset(arrows[i] for i in _iter_bits(m)))
        for m in found
    ]
    out.sort(key=lambda g: g.sorted_arrows())
    return out


def width(lattice: GroupLattice, tables: Optional[ArrowTables] = None) -> int:
    """Basis size of the complete system = number of meet-irreducible classes."""
    w = len(meet_irreducible_classes(lattice))
    if tables is None:
        tables = precompute_tables(lattice)
    if tables.n_arrows <= 4096:
        via_basis = basis_size(complete_system(tables), tables)
        if via_basis != w:
            raise RuntimeError(
                f"width cross-check failed on {lattice.name}: "
                f"{w} meet-irreducible classes vs basis size {via_basis}"
            )
    return w


@dataclass
class ComplexityResult:
    value: int
    realizers: list[TransferSystem]


def complexity(lattice: GroupLattice, jobs: int = 1,
               tables: Optional[ArrowTables] = None) -> ComplexityResult:
    """Maximum basis size over all transfer systems, with every maximizer."""
    if tables is None:
        tables = precompute_tables(lattice)
    result = enumerate_systems(lattice, store=True, jobs=jobs, tables=tables)
    best = -1
    realizers: list[TransferSystem] = []
    for _, system in result.systems:
        m = basis_size(system, tables)
        if m > best:
            best = m
            realizers = [system]
        elif m == best:
            realizers.append(system)
    return ComplexityResult(value=best, realizers=realizers)


def level_profile(generating_set: GeneratingSet) -> dict[int, int]:
    """Counts of basis arrows keyed by the rank of their source."""
    ranks = Counter(generating_set.lattice.rank(a.source) for a in generating_set.arrows)
    return dict(sorted(ranks.items()))
