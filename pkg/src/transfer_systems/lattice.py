"""Finite subgroup lattices with conjugation actions.

A :class:`GroupLattice` is an immutable bounded lattice whose elements carry
a group-order factorization and whose symmetry is encoded by a generating
set of lattice automorphisms ("conjugation generators").  Everything else in
this package (closure tables, enumeration, basis analysis) consumes these
objects read-only, so instances are safe to share across workers.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

MAX_ELEMENTS = 2 ** 16
MAX_ARROWS = 2 ** 20

_FIRST_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


class LatticeError(ValueError):
    """Raised when lattice data violates a structural invariant."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class LatticeElement:
    index: int
    label: str
    order_factorization: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return sum(e for _, e in self.order_factorization)

    @property
    def order(self) -> int:
        n = 1
        for p, e in self.order_factorization:
            n *= p ** e
        return n


@dataclass(frozen=True, order=True)
class Arrow:
    """A nontrivial interval (source, target) with source < target.

    Identity pairs are never materialized; constructing one is an error.
    """

    source: int
    target: int

    def __post_init__(self):
        if self.source == self.target:
            raise LatticeError("identity arrows are not stored")


class GroupLattice:
    """A finite bounded lattice with a conjugation action.

    Element indices are canonical: sorted by (rank, label).  The order
    relation is kept as per-element bitmasks, meets are precomputed into a
    dense table at construction, and every conjugation generator is checked
    to be a rank- and factorization-preserving lattice automorphism.
    """

    def __init__(self, name, labels, factorizations, leq_masks, conj_generators):
        # Internal: callers go through the builders or the interchange loader.
        n = len(labels)
        if n == 0:
            raise LatticeError("a lattice needs at least one element")
        if n > MAX_ELEMENTS:
            raise LatticeError(f"element count {n} exceeds cap {MAX_ELEMENTS}")
        self.name = name
        self.elements = tuple(
            LatticeElement(i, labels[i], tuple(factorizations[i])) for i in range(n)
        )
        self._down = tuple(leq_masks)  # _down[i] = bitmask of {j : j <= i}
        self.conj_generators = tuple(tuple(g) for g in conj_generators)
        self._validate_order()
        self._build_meets()
        self._validate_bounds()
        self._validate_generators()
        self._arrows: Optional[tuple[Arrow, ...]] = None
        self._arrow_index: Optional[dict[tuple[int, int], int]] = None
        self._covers_up: Optional[tuple[tuple[int, ...], ...]] = None
        self.coordinates: Optional[dict[tuple[int, ...], int]] = None

    # -- construction-time validation -------------------------------------

    def _validate_order(self):
        n = len(self.elements)
        labels = [e.label for e in self.elements]
        if len(set(labels)) != n:
            dup = next(l for l in labels if labels.count(l) > 1)
            raise LatticeError(f"duplicate label {dup!r}")
        for i in range(n):
            down = self._down[i]
            if not (down >> i) & 1:
                raise LatticeError(f"relation not reflexive at {labels[i]!r}")
            for j in _iter_bits(down):
                if j != i and (self._down[j] >> i) & 1:
                    raise LatticeError(
                        f"relation not antisymmetric between {labels[i]!r} and {labels[j]!r}"
                    )
                if self._down[j] & ~down:
                    k = next(_iter_bits(self._down[j] & ~down))
                    raise LatticeError(
                        f"relation not transitive: {labels[k]!r} <= {labels[j]!r} <= "
                        f"{labels[i]!r} but not {labels[k]!r} <= {labels[i]!r}"
                    )
                if j != i and self.elements[j].rank >= self.elements[i].rank:
                    raise LatticeError(
                        f"rank does not strictly increase from {labels[j]!r} to {labels[i]!r}"
                    )

    def _build_meets(self):
        n = len(self.elements)
        by_down = {self._down[i]: i for i in range(n)}
        table = []
        for a in range(n):
            row_a = self._down[a]
            for b in range(n):
                m = by_down.get(row_a & self._down[b])
                if m is None:
                    raise LatticeError(
                        f"no unique meet for {self.elements[a].label!r} and "
                        f"{self.elements[b].label!r}: not a lattice"
                    )
                table.append(m)
        self._meet = table

    def _validate_bounds(self):
        n = len(self.elements)
        full = (1 << n) - 1
        bottoms = [i for i in range(n) if self._down[i] == (1 << i)]
        ups = [0] * n
        for i in range(n):
            for j in _iter_bits(self._down[i]):
                ups[j] |= 1 << i
        tops = [i for i in range(n) if ups[i] == (1 << i)]
        self._up = tuple(ups)
        if len(bottoms) != 1 or len(tops) != 1:
            raise LatticeError("lattice must have a unique bottom and top")
        self.bottom = bottoms[0]
        self.top = tops[0]
        if self._down[self.top] != full or self._up[self.bottom] != full:
            raise LatticeError("bottom/top do not bound every element")

    def _validate_generators(self):
        n = len(self.elements)
        for g in self.conj_generators:
            if sorted(g) != list(range(n)):
                raise LatticeError(f"conjugation generator {g} is not a permutation")
            for i in range(n):
                if self.elements[g[i]].order_factorization != self.elements[i].order_factorization:
                    raise LatticeError(
                        f"generator moves {self.elements[i].label!r} to "
                        f"{self.elements[g[i]].label!r} of different order type: not an automorphism"
                    )
                image = 0
                for j in _iter_bits(self._down[i]):
                    image |= 1 << g[j]
                if image != self._down[g[i]]:
                    raise LatticeError(
                        f"generator does not preserve the order relation at "
                        f"{self.elements[i].label!r}: not an automorphism"
                    )

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, a: int, b: int) -> bool:
        return bool((self._down[b] >> a) & 1)

    def meet(self, a: int, b: int) -> int:
        return self._meet[a * len(self.elements) + b]

    def down_mask(self, a: int) -> int:
        return self._down[a]

    def up_mask(self, a: int) -> int:
        return self._up[a]

    def rank(self, a: int) -> int:
        return self.elements[a].rank

    def index_of(self, label: str) -> int:
        for e in self.elements:
            if e.label == label:
                return e.index
        raise KeyError(label)

    @property
    def covers_up(self) -> tuple[tuple[int, ...], ...]:
        """Upper covers of each element, derived from leq."""
        if self._covers_up is None:
            n = len(self.elements)
            out = []
            for i in range(n):
                above = self._up[i] & ~(1 << i)
                covers = []
                for j in _iter_bits(above):
                    # j covers i iff nothing sits strictly between them
                    between = self._up[i] & self._down[j] & ~(1 << i) & ~(1 << j)
                    if not between:
                        covers.append(j)
                out.append(tuple(covers))
            self._covers_up = tuple(out)
        return self._covers_up

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        """All nontrivial intervals in canonical (source, target) order."""
        if self._arrows is None:
            n = len(self.elements)
            out = []
            for s in range(n):
                for t in _iter_bits(self._up[s] & ~(1 << s)):
                    out.append(Arrow(s, t))
            out.sort()
            if len(out) > MAX_ARROWS:
                raise LatticeError(f"arrow count {len(out)} exceeds cap {MAX_ARROWS}")
            self._arrows = tuple(out)
            self._arrow_index = {(a.source, a.target): i for i, a in enumerate(out)}
        return self._arrows

    @property
    def arrow_index(self) -> dict[tuple[int, int], int]:
        self.arrows
        return self._arrow_index

    def apply_generator(self, g: Sequence[int], arrow: Arrow) -> Arrow:
        return Arrow(g[arrow.source], g[arrow.target])

    def element_orbit(self, a: int) -> frozenset[int]:
        seen = {a}
        frontier = [a]
        while frontier:
            x = frontier.pop()
            for g in self.conj_generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def __eq__(self, other):
        if not isinstance(other, GroupLattice):
            return NotImplemented
        return (
            [(e.label, e.order_factorization) for e in self.elements]
            == [(e.label, e.order_factorization) for e in other.elements]
            and self._down == other._down
            and sorted(self.conj_generators) == sorted(other.conj_generators)
        )

    def __repr__(self):
        return f"GroupLattice({self.name!r}, {len(self.elements)} elements)"


def _canonicalize(name, labels, factorizations, leq_pairs, conj_generators,
                  coordinates=None) -> GroupLattice:
    """Sort elements by (rank, label), remap all index-based data, build."""
    n = len(labels)
    ranks = [sum(e for _, e in f) for f in factorizations]
    order = sorted(range(n), key=lambda i: (ranks[i], labels[i]))
    new_of_old = {old: new for new, old in enumerate(order)}
    new_labels = [labels[i] for i in order]
    new_facts = [factorizations[i] for i in order]
    masks = [0] * n
    for a, b in leq_pairs:  # a <= b
        masks[new_of_old[b]] |= 1 << new_of_old[a]
    for i in range(n):
        masks[i] |= 1 << i
    new_gens = []
    for g in conj_generators:
        perm = [0] * n
        for old_src, old_dst in enumerate(g):
            perm[new_of_old[old_src]] = new_of_old[old_dst]
        new_gens.append(tuple(perm))
    lat = GroupLattice(name, new_labels, new_facts, masks, new_gens)
    if coordinates is not None:
        lat.coordinates = {c: new_of_old[i] for c, i in coordinates.items()}
    return lat


def _transitive_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    masks = [1 << i for i in range(n)]
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise LatticeError(f"relation index pair ({a}, {b}) out of range")
        masks[b] |= 1 << a
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = masks[i]
            for j in _iter_bits(acc):
                acc |= masks[j]
            if acc != masks[i]:
                masks[i] = acc
                changed = True
    out = []
    for i in range(n):
        for j in _iter_bits(masks[i]):
            out.append((j, i))
    return out


def _factorization_label(fact: Sequence[tuple[int, int]]) -> str:
    if not fact:
        return "1"
    return "*".join(f"{p}^{e}" if e > 1 else f"{p}" for p, e in fact)


def build_chain_product(exponents: Sequence[int],
                        primes: Optional[Sequence[int]] = None) -> GroupLattice:
    """Subgroup lattice of a cyclic group, as a product of chains.

    ``exponents=[e1, ..., ek]`` gives the divisor lattice of
    ``p1^e1 * ... * pk^ek``; the conjugation action is trivial.
    """
    exponents = list(exponents)
    if not exponents:
        raise LatticeError("exponent list must be nonempty")
    if any(e < 0 for e in exponents):
        raise LatticeError("exponents must be nonnegative")
    if primes is None:
        primes = list(_FIRST_PRIMES[: len(exponents)])
    primes = list(primes)
    if len(primes) != len(exponents):
        raise LatticeError("primes and exponents must have the same length")
    if len(set(primes)) != len(primes):
        raise LatticeError("primes must be distinct")
    for p in primes:
        if not _is_prime(p):
            raise LatticeError(f"{p} is not prime")
    total = 1
    for e in exponents:
        total *= e + 1
    if total > MAX_ELEMENTS:
        raise LatticeError(f"element count {total} exceeds cap {MAX_ELEMENTS}")

    coords = list(product(*[range(e + 1) for e in exponents]))
    labels = []
    facts = []
    for c in coords:
        fact = tuple((p, a) for p, a in zip(primes, c) if a > 0)
        facts.append(fact)
        labels.append(_factorization_label(fact))
    index = {c: i for i, c in enumerate(coords)}
    pairs = []
    for i, a in enumerate(coords):
        for j, b in enumerate(coords):
            if all(x <= y for x, y in zip(a, b)):
                pairs.append((i, j))
    name = "C_" + _factorization_label(tuple(zip(primes, exponents)))
    return _canonicalize(name, labels, facts, pairs, [], coordinates=index)


def gaussian_binomial_count(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over F_p."""
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** n - p ** i
        den *= p ** k - p ** i
    assert num % den == 0
    return num // den


def _rref_bases(p: int, n: int, k: int):
    """Yield the canonical (reduced row echelon) bases of k-dim subspaces."""
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(n), k):
        free = []
        for row, piv in enumerate(pivots):
            for col in range(piv + 1, n):
                if col not in pivots:
                    free.append((row, col))
        for values in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for row, piv in enumerate(pivots):
                rows[row][piv] = 1
            for (row, col), v in zip(free, values):
                rows[row][col] = v
            yield tuple(tuple(r) for r in rows)


def _span(rows, p: int, n: int) -> frozenset[tuple[int, ...]]:
    vecs = set()
    for coeffs in product(range(p), repeat=len(rows)):
        v = [0] * n
        for c, row in zip(coeffs, rows):
            if c:
                for i in range(n):
                    v[i] = (v[i] + c * row[i]) % p
        vecs.add(tuple(v))
    return frozenset(vecs)


def build_subspace_lattice(p: int, n: int) -> GroupLattice:
    """Lattice of subspaces of F_p^n ordered by inclusion (rank = dimension)."""
    if not _is_prime(p):
        raise LatticeError(f"{p} is not prime")
    if n < 0:
        raise LatticeError("dimension must be nonnegative")
    if p ** n > 2 ** 16:
        raise LatticeError(f"p^n = {p ** n} exceeds the 2^16 enumeration guard")
    total = sum(gaussian_binomial_count(n, k, p) for k in range(n + 1))
    if total > MAX_ELEMENTS:
        raise LatticeError(f"subspace count {total} exceeds cap {MAX_ELEMENTS}")

    labels = []
    facts = []
    spans = []
    for k in range(n + 1):
        for rows in _rref_bases(p, n, k):
            if k == 0:
                labels.append("0")
            else:
                labels.append("<" + ",".join("".join(map(str, r)) for r in rows) + ">")
            facts.append(((p, k),) if k else ())
            spans.append(_span(rows, p, n))
    pairs = []
    for i, si in enumerate(spans):
        for j, sj in enumerate(spans):
            if si <= sj:
                pairs.append((i, j))
    return _canonicalize(f"V({n},{p})", labels, facts, pairs, [])


def meet(lattice: GroupLattice, a: int, b: int) -> int:
    """Greatest lower bound of two elements."""
    n = len(lattice)
    if not (0 <= a < n and 0 <= b < n):
        raise IndexError("element index out of range")
    return lattice.meet(a, b)


def nontrivial_intervals(lattice: GroupLattice) -> list[Arrow]:
    """All pairs (H, K) with H < K, in canonical (source, target) order."""
    return list(lattice.arrows)


def arrow_orbit(lattice: GroupLattice, arrow: Arrow) -> set[Arrow]:
    """Orbit of an arrow under the conjugation generators, applied componentwise."""
    seen = {arrow}
    frontier = [arrow]
    while frontier:
        a = frontier.pop()
        for g in lattice.conj_generators:
            b = lattice.apply_generator(g, a)
            if b not in seen:
                seen.add(b)
                frontier.append(b)
    return seen


def meet_irreducible_classes(lattice: GroupLattice) -> list[int]:
    """One representative per conjugation orbit of meet-irreducible elements.

    An element is meet-irreducible exactly when it has a single upper cover;
    in particular the top element never qualifies.
    """
    covers = lattice.covers_up
    irreducible = [i for i in range(len(lattice)) if len(covers[i]) == 1]
    reps = []
    seen: set[int] = set()
    for i in irreducible:
        if i in seen:
            continue
        orbit = lattice.element_orbit(i)
        seen |= orbit
        reps.append(min(orbit))
    return sorted(reps)


def element_by_coords(lattice: GroupLattice, coords: Sequence[int]) -> int:
    """Index of a chain-product element from its exponent coordinates."""
    if lattice.coordinates is None:
        raise LatticeError("lattice does not carry chain-product coordinates")
    return lattice.coordinates[tuple(coords)]
