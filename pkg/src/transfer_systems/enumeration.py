"""Breadth-first enumeration of all transfer systems of a lattice.

Layer 0 is the empty system; layer i+1 closes every single-arrow extension
of the layer-i frontier.  A global dedup set records each system at the
layer where it is first discovered, so ``stratum_counts[i]`` is the number
of systems first reached after i extensions.  The result is independent of
the worker count: layers are merged as plain set unions.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Callable, Optional

from .closure import ArrowTables, TransferSystem, close_mask, precompute_tables
from .lattice import GroupLattice

DEFAULT_SPILL_THRESHOLD = 5_000_000

ProgressFn = Callable[[int, int, int], None]


class BudgetExceeded(RuntimeError):
    """Enumeration aborted; carries the layer statistics gathered so far."""

    def __init__(self, budget: int, partial_strata: list[int]):
        super().__init__(
            f"system budget {budget} exceeded after {len(partial_strata)} layers "
            f"(partial strata {partial_strata})"
        )
        self.budget = budget
        self.partial_strata = partial_strata


@dataclass
class EnumerationResult:
    total_count: int
    stratum_counts: list[int]
    systems: Optional[list[tuple[int, TransferSystem]]]

    def max_stratum(self) -> int:
        return len(self.stratum_counts) - 1


def _extend_chunk(tables: ArrowTables, masks: list[int]) -> set[int]:
    out = set()
    n_arrows = tables.n_arrows
    for base in masks:
        for a in range(n_arrows):
            if (base >> a) & 1:
                continue
            out.add(close_mask(tables, 1 << a, base))
    return out


def _extend_chunk_star(args):
    return _extend_chunk(*args)


class _SpillSet:
    """Seen-set as one sorted run of fixed-width records on disk.

    Each layer's sorted candidates are merged against the run in a single
    streaming pass that both reports the unseen ones and rewrites the run.
    """

    def __init__(self, directory: str, record_bytes: int):
        os.makedirs(directory, exist_ok=True)
        self.path = os.path.join(directory, "seen.run")
        self.record = max(record_bytes, 1)
        open(self.path, "wb").close()

    def _iter_records(self, fh):
        while True:
            chunk = fh.read(self.record)
            if not chunk:
                return
            yield int.from_bytes(chunk, "big")

    def merge(self, candidates: list[int]) -> list[int]:
        """Merge sorted unique candidates into the run; return the new ones."""
        survivors = []
        tmp = self.path + ".next"
        with open(self.path, "rb") as old, open(tmp, "wb") as new:
            it = self._iter_records(old)
            current = next(it, None)
            for c in candidates:
                while current is not None and current < c:
                    new.write(current.to_bytes(self.record, "big"))
                    current = next(it, None)
                if current == c:
                    continue
                survivors.append(c)
                new.write(c.to_bytes(self.record, "big"))
            while current is not None:
                new.write(current.to_bytes(self.record, "big"))
                current = next(it, None)
        os.replace(tmp, self.path)
        return survivors


def enumerate_systems(
    lattice: GroupLattice,
    *,
    store: bool = True,
    jobs: int = 1,
    tables: Optional[ArrowTables] = None,
    max_systems: Optional[int] = None,
    spill_dir: Optional[str] = None,
    spill_threshold: int = DEFAULT_SPILL_THRESHOLD,
    progress: Optional[ProgressFn] = None,
) -> EnumerationResult:
    """Enumerate all transfer systems of ``lattice``.

    ``jobs`` > 1 partitions each layer's frontier across worker processes;
    the outcome is identical for any value.  With ``spill_dir`` set the seen
    set moves to sorted runs on disk once it outgrows ``spill_threshold``
    (count mode only).
    """
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    if tables is None:
        tables = precompute_tables(lattice)
    record_bytes = (tables.n_arrows + 7) // 8

    seen: set[int] = {0}
    spill: Optional[_SpillSet] = None
    strata = [1]
    total = 1
    stored: Optional[list[list[int]]] = [[0]] if store else None
    frontier = [0]
    layer = 0

    pool = None
    try:
        if jobs > 1:
            pool = get_context("fork").Pool(jobs)
        while frontier:
            if progress is not None:
                progress(layer, len(frontier), total)
            if pool is not None and len(frontier) > 1:
                chunk = (len(frontier) + jobs - 1) // jobs
                parts = [frontier[i:i + chunk] for i in range(0, len(frontier), chunk)]
                candidate_sets = pool.map(_extend_chunk_star, [(tables, p) for p in parts])
                candidates: set[int] = set().union(*candidate_sets)
            else:
                candidates = _extend_chunk(tables, frontier)

            if spill is None:
                new_masks = sorted(candidates - seen)
                seen |= candidates
                if spill_dir is not None and len(seen) > spill_threshold:
                    if store:
                        raise ValueError("spill mode requires store=False")
                    spill = _SpillSet(spill_dir, record_bytes)
                    spill.merge(sorted(seen))
                    seen = set()
            else:
                new_masks = spill.merge(sorted(candidates))

            if not new_masks:
                break
            layer += 1
            strata.append(len(new_masks))
            total += len(new_masks)
            if stored is not None:
                stored.append(new_masks)
            frontier = new_masks
            if max_systems is not None and total > max_systems:
                raise BudgetExceeded(max_systems, strata)
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    systems = None
    if stored is not None:
        systems = [
            (stratum, TransferSystem(lattice, mask))
            for stratum, masks in enumerate(stored)
            for mask in masks
        ]
    return EnumerationResult(total_count=total, stratum_counts=strata, systems=systems)


def count(lattice: GroupLattice, jobs: int = 1, **kwargs) -> int:
    """Number of transfer systems of ``lattice``."""
    return enumerate_systems(lattice, store=False, jobs=jobs, **kwargs).total_count


def distribution(lattice: GroupLattice, jobs: int = 1) -> list[int]:
    """Per-stratum counts: entry i is the number of systems first found at layer i."""
    return enumerate_systems(lattice, store=False, jobs=jobs).stratum_counts
