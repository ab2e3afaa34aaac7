"""Closure operator on arrow sets, backed by precomputed tables.

Arrow sets are fixed-width bit vectors (Python ints) over the lattice's
canonical arrow order.  ``closure`` computes the least superset closed under
conjugation, restriction and composition; its fixed points are exactly the
transfer systems of the lattice.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .lattice import Arrow, GroupLattice, LatticeError, _iter_bits


@dataclass(frozen=True)
class TransferSystem:
    """A closed arrow set, stored as a bit vector over the arrow index space."""

    lattice: GroupLattice
    mask: int

    def arrows(self) -> list[Arrow]:
        arrows = self.lattice.arrows
        return [arrows[i] for i in _iter_bits(self.mask)]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, arrow: Arrow) -> bool:
        idx = self.lattice.arrow_index.get((arrow.source, arrow.target))
        return idx is not None and bool((self.mask >> idx) & 1)

    def __le__(self, other: "TransferSystem") -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return f"TransferSystem({self.lattice.name}, {len(self)} arrows)"


class ArrowTables:
    """Per-arrow orbit, restriction and composition lookups for one lattice.

    Immutable after construction; closures against shared tables are safe to
    run concurrently.
    """

    def __init__(self, lattice: GroupLattice):
        self.lattice = lattice
        arrows = lattice.arrows
        index = lattice.arrow_index
        n_arrows = len(arrows)
        n = len(lattice)

        # orbit_mask[i]: bit vector of the conjugation orbit of arrow i
        orbit_masks = [0] * n_arrows
        for i, a in enumerate(arrows):
            if orbit_masks[i]:
                continue
            orbit = {i}
            frontier = [a]
            while frontier:
                x = frontier.pop()
                for g in lattice.conj_generators:
                    y = lattice.apply_generator(g, x)
                    j = index[(y.source, y.target)]
                    if j not in orbit:
                        orbit.add(j)
                        frontier.append(y)
            mask = 0
            for j in orbit:
                mask |= 1 << j
            for j in orbit:
                orbit_masks[j] = mask
        self.orbit_mask = orbit_masks

        # restriction_mask[i]: arrows (L^K, L) for L <= target(i), identities
        # and the arrow itself dropped
        restriction_masks = [0] * n_arrows
        for i, a in enumerate(arrows):
            mask = 0
            for ell in _iter_bits(lattice.down_mask(a.target)):
                m = lattice.meet(ell, a.source)
                if m != ell:
                    j = index[(m, ell)]
                    if j != i:
                        mask |= 1 << j
            restriction_masks[i] = mask
        self.restriction_mask = restriction_masks

        # arrow id by (source, target); -1 where the pair is not an interval
        flat = [-1] * (n * n)
        for i, a in enumerate(arrows):
            flat[a.source * n + a.target] = i
        self._pair_id = flat
        self._n_elements = n

        self.arrows_from = [[] for _ in range(n)]  # arrow ids by source element
        self.arrows_into = [[] for _ in range(n)]  # arrow ids by target element
        for i, a in enumerate(arrows):
            self.arrows_from[a.source].append(i)
            self.arrows_into[a.target].append(i)

        self.n_arrows = n_arrows
        self.full_mask = (1 << n_arrows) - 1

    def pair_id(self, source: int, target: int) -> int:
        return self._pair_id[source * self._n_elements + target]

    def compose(self, first: int, second: int) -> Optional[int]:
        """Arrow id of the composite, defined iff target(first) == source(second)."""
        a = self.lattice.arrows[first]
        b = self.lattice.arrows[second]
        if a.target != b.source:
            return None
        return self.pair_id(a.source, b.target)


def precompute_tables(lattice: GroupLattice) -> ArrowTables:
    """Build the orbit/restriction/composition tables for a lattice."""
    return ArrowTables(lattice)


def arrows_to_mask(tables: ArrowTables, arrows: Iterable[Arrow]) -> int:
    index = tables.lattice.arrow_index
    mask = 0
    for a in arrows:
        idx = index.get((a.source, a.target))
        if idx is None:
            raise LatticeError(f"arrow {a} does not belong to lattice {tables.lattice.name}")
        mask |= 1 << idx
    return mask


def close_mask(tables: ArrowTables, seed: int, base: int = 0) -> int:
    """Least closed superset of ``base | seed``; ``base`` must itself be closed.

    Worklist over newly added arrows only: each new arrow contributes its
    orbit, its restrictions, and its composites with everything present.
    All three rules run to a single global fixpoint.
    """
    present = base
    arrows = tables.lattice.arrows
    orbit_mask = tables.orbit_mask
    restriction_mask = tables.restriction_mask
    arrows_from = tables.arrows_from
    arrows_into = tables.arrows_into
    pair = tables.pair_id

    queue = [i for i in _iter_bits(seed & ~present)]
    while queue:
        i = queue.pop()
        bit = 1 << i
        if present & bit:
            continue
        present |= bit
        new = (orbit_mask[i] | restriction_mask[i]) & ~present
        a = arrows[i]
        for j in arrows_from[a.target]:
            if (present >> j) & 1:
                k = pair(a.source, arrows[j].target)
                new |= (1 << k) & ~present
        for j in arrows_into[a.source]:
            if (present >> j) & 1:
                k = pair(arrows[j].source, a.target)
                new |= (1 << k) & ~present
        while new:
            low = new & -new
            queue.append(low.bit_length() - 1)
            new ^= low
    return present


def closure(tables: ArrowTables, arrows: Iterable[Arrow]) -> TransferSystem:
    """Minimal transfer system containing the given arrows."""
    return TransferSystem(tables.lattice, close_mask(tables, arrows_to_mask(tables, arrows)))


def close_staged(tables: ArrowTables, seed: int) -> int:
    """Staged variant: conjugate everything, then restrict, then compose to
    a fixpoint.  Used to cross-check the worklist closure."""
    s1 = seed
    for i in _iter_bits(seed):
        s1 |= tables.orbit_mask[i]
    s2 = s1
    for i in _iter_bits(s1):
        s2 |= tables.restriction_mask[i]
    s3 = s2
    arrows = tables.lattice.arrows
    changed = True
    while changed:
        changed = False
        for i in _iter_bits(s3):
            a = arrows[i]
            for j in tables.arrows_from[a.target]:
                if (s3 >> j) & 1:
                    k = tables.pair_id(a.source, arrows[j].target)
                    if not (s3 >> k) & 1:
                        s3 |= 1 << k
                        changed = True
    return s3


def is_closed_mask(tables: ArrowTables, mask: int) -> bool:
    arrows = tables.lattice.arrows
    for i in _iter_bits(mask):
        if tables.orbit_mask[i] & ~mask:
            return False
        if tables.restriction_mask[i] & ~mask:
            return False
        a = arrows[i]
        for j in tables.arrows_from[a.target]:
            if (mask >> j) & 1:
                k = tables.pair_id(a.source, arrows[j].target)
                if not (mask >> k) & 1:
                    return False
    return True


def is_closed(tables: ArrowTables, arrows: Iterable[Arrow]) -> bool:
    """True iff the arrow set is closed under conjugation, restriction and
    composition."""
    return is_closed_mask(tables, arrows_to_mask(tables, arrows))


def complete_system(tables: ArrowTables) -> TransferSystem:
    """The transfer system containing every nontrivial arrow."""
    return TransferSystem(tables.lattice, tables.full_mask)


def empty_system(tables: ArrowTables) -> TransferSystem:
    return TransferSystem(tables.lattice, 0)
