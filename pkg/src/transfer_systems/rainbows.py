"""Rainbow combinatorics for cyclic-group lattices.

Arcs live on the rank line {0, ..., n}; an arc x -> y stands for all lattice
arrows whose source has rank x and target rank y, and a rainbow is a set of
strictly nested arcs.  This module computes arc sizes, maximal rainbows and
their brute-force oracle, the size-non-decreasing arc and block operations
with the normalization loop that drives any undersized rainbow to a
composable one, grid-lattice rainbow numbers (simple/double), and the
Gaussian-binomial analogues.  All arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

from .basis import GeneratingSet
from .lattice import (Arrow, GroupLattice, _is_prime, arrow_orbit,
                      build_chain_product, element_by_coords,
                      gaussian_binomial_count)


class RainbowError(ValueError):
    pass


class RainbowOpError(RainbowError):
    """An arc/block operation whose precondition fails."""


def trinomial(n: int, x: int, y: int) -> int:
    """Number of arrows represented by the arc x -> y on {0..n}:
    C(n, x) * C(n - x, y - x)."""
    if not 0 <= x <= y <= n:
        raise RainbowError(f"need 0 <= x <= y <= n, got x={x}, y={y}, n={n}")
    return comb(n, x) * comb(n - x, y - x)


@dataclass(frozen=True, order=True)
class Arc:
    x: int
    y: int

    def __post_init__(self):
        if not 0 <= self.x < self.y:
            raise RainbowError(f"arc needs 0 <= x < y, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class Rainbow:
    """Strictly nested arcs on {0, ..., n}, outermost first."""

    n: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        if self.n < 1:
            raise RainbowError("rainbow range needs n >= 1")
        for a in self.arcs:
            if a.y > self.n:
                raise RainbowError(f"arc ({a.x}, {a.y}) exceeds range {self.n}")
        for outer, inner in zip(self.arcs, self.arcs[1:]):
            if not (outer.x < inner.x < inner.y < outer.y):
                raise RainbowError(
                    f"arcs ({outer.x},{outer.y}) and ({inner.x},{inner.y}) do not nest"
                )

    def endpoints(self) -> frozenset[int]:
        out = set()
        for a in self.arcs:
            out.add(a.x)
            out.add(a.y)
        return frozenset(out)

    def available(self, c: int) -> bool:
        return 0 <= c <= self.n and c not in self.endpoints()

    def __len__(self):
        return len(self.arcs)


def rainbow(n: int, pairs: Iterable[tuple[int, int]]) -> Rainbow:
    arcs = tuple(sorted(Arc(x, y) for x, y in pairs))
    return Rainbow(n, arcs)


def rainbow_size(r: Rainbow) -> int:
    """Total number of arrows represented by the rainbow."""
    return sum(trinomial(r.n, a.x, a.y) for a in r.arcs)


def complete_rainbow(n: int) -> Rainbow:
    if n % 2 == 0:
        raise RainbowError("the complete rainbow needs odd n")
    return rainbow(n, [(i, n - i) for i in range((n + 1) // 2)])


def excluded_rainbow(n: int, x: int) -> Rainbow:
    """For even n: the n/2-arc rainbow using every class except x."""
    if n % 2 != 0:
        raise RainbowError("excluded-class rainbows need even n")
    if not 0 <= x <= n:
        raise RainbowError("excluded class out of range")
    classes = [c for c in range(n + 1) if c != x]
    return rainbow(n, [(classes[i], classes[-1 - i]) for i in range(n // 2)])


def canonical_max_rainbows(n: int) -> list[Rainbow]:
    """The maximal-size rainbows on {0..n}: the complete rainbow for odd n,
    both end-excluded ones for n = 2, 4, 6, and the middle-excluded one for
    even n >= 8."""
    if n < 1:
        raise RainbowError("need n >= 1")
    if n % 2 == 1:
        return [complete_rainbow(n)]
    if n in (2, 4, 6):
        return [excluded_rainbow(n, 0), excluded_rainbow(n, n)]
    return [excluded_rainbow(n, n // 2)]


def square_free_complexity_lower(n: int) -> int:
    """Size of the maximal rainbow on {0..n}; a lower bound for the
    complexity of a cyclic group with n distinct prime factors."""
    if n < 1:
        raise RainbowError("need n >= 1")
    if n in (2, 4, 6):
        return sum(comb(n, n - i) * comb(n - i, i + 1) for i in range((n + 1) // 2))
    return sum(comb(n, n - i) * comb(n - i, i) for i in range((n + 1) // 2))


@dataclass
class BruteForceMax:
    size: int
    argmax: list[Rainbow]


def _nested_families(lo: int, hi: int):
    # all strictly nested arc tuples with endpoints in [lo, hi]
    yield ()
    for x in range(lo, hi):
        for y in range(x + 1, hi + 1):
            for inner in _nested_families(x + 1, y - 1):
                yield ((x, y),) + inner


def brute_force_max_rainbow(n: int) -> BruteForceMax:
    """Exhaustive maximal-rainbow search; the oracle for the closed forms."""
    if n > 14:
        raise RainbowError("brute force is guarded at n <= 14")
    if n < 1:
        raise RainbowError("need n >= 1")
    best = -1
    argmax: list[Rainbow] = []
    for family in _nested_families(0, n):
        r = rainbow(n, family)
        size = rainbow_size(r)
        if size > best:
            best = size
            argmax = [r]
        elif size == best:
            argmax.append(r)
    return BruteForceMax(best, argmax)


# -- single-arc operations -------------------------------------------------

_ARC_OPS = {
    "translate_right": (lambda x, y, n: x + y < n, 1, 1),
    "translate_left": (lambda x, y, n: x + y > n, -1, -1),
    "contract_right": (lambda x, y, n: y - x > n - y, 0, -1),
    "contract_left": (lambda x, y, n: y - x > x, 1, 0),
    "expand_right": (lambda x, y, n: y - x < n - y, 0, 1),
    "expand_left": (lambda x, y, n: y - x < x, -1, 0),
}


def apply_arc_op(r: Rainbow, op: str, arc_index: int) -> Rainbow:
    """Apply one of the six single-arc moves; never decreases the size."""
    if op not in _ARC_OPS:
        raise RainbowOpError(f"unknown arc operation {op!r}")
    if not 0 <= arc_index < len(r.arcs):
        raise RainbowOpError("arc index out of range")
    cond, dx, dy = _ARC_OPS[op]
    a = r.arcs[arc_index]
    if not cond(a.x, a.y, r.n):
        raise RainbowOpError(f"condition violated for {op} on arc ({a.x},{a.y})")
    nx, ny = a.x + dx, a.y + dy
    if not (0 <= nx < ny <= r.n):
        raise RainbowOpError(f"{op} moves arc ({a.x},{a.y}) out of range")
    others = r.endpoints() - {a.x, a.y}
    for c in (nx, ny):
        if c in others:
            raise RainbowOpError(f"endpoint {c} occupied")
    arcs = list(r.arcs)
    arcs[arc_index] = Arc(nx, ny)
    try:
        return Rainbow(r.n, tuple(sorted(arcs)))
    except RainbowError:
        raise RainbowOpError(f"{op} breaks nesting at arc ({a.x},{a.y})") from None


# -- blocks ------------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """A consecutive range [start, end] of arc indices."""

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end or self.start < 0:
            raise RainbowError(f"bad block range [{self.start}, {self.end}]")

    def indices(self):
        return range(self.start, self.end + 1)


def _full_on_left(r: Rainbow, block: Block) -> bool:
    arcs = r.arcs
    return all(arcs[i + 1].x == arcs[i].x + 1 for i in range(block.start, block.end))


def _full_on_right(r: Rainbow, block: Block) -> bool:
    arcs = r.arcs
    return all(arcs[i + 1].y == arcs[i].y - 1 for i in range(block.start, block.end))


def left_block(r: Rainbow) -> Block:
    """Largest block containing the outermost arc that is full on the left."""
    if not r.arcs:
        raise RainbowOpError("no block in an empty rainbow")
    end = 0
    while end + 1 < len(r.arcs) and r.arcs[end + 1].x == r.arcs[end].x + 1:
        end += 1
    return Block(0, end)


def right_block(r: Rainbow) -> Block:
    """Largest block containing the outermost arc that is full on the right."""
    if not r.arcs:
        raise RainbowOpError("no block in an empty rainbow")
    end = 0
    while end + 1 < len(r.arcs) and r.arcs[end + 1].y == r.arcs[end].y - 1:
        end += 1
    return Block(0, end)


def outer_block(r: Rainbow) -> Block:
    return Block(0, min(left_block(r).end, right_block(r).end))


def _shift_block(r: Rainbow, block: Block, dx: int, dy: int, op: str) -> Rainbow:
    moved = list(block.indices())
    old_new = [(r.arcs[i], Arc(r.arcs[i].x + dx, r.arcs[i].y + dy)) for i in moved]
    block_endpoints = set()
    for a, _ in old_new:
        block_endpoints.add(a.x)
        block_endpoints.add(a.y)
    outside = r.endpoints() - block_endpoints
    for _, b in old_new:
        for c in ((b.x,) if dx else ()) + ((b.y,) if dy else ()):
            if not 0 <= c <= r.n:
                raise RainbowOpError(f"{op} moves an endpoint out of range")
            if c in outside:
                raise RainbowOpError(f"endpoint {c} occupied")
    arcs = list(r.arcs)
    for i, (_, b) in zip(moved, old_new):
        arcs[i] = b
    try:
        return Rainbow(r.n, tuple(sorted(arcs)))
    except RainbowError:
        raise RainbowOpError(f"{op} breaks nesting") from None


def apply_block_op(r: Rainbow, op: str, block: Optional[Block] = None) -> Rainbow:
    """Apply a block move (reflect / translate / contract-left / expand-left);
    never decreases the size."""
    if not r.arcs:
        raise RainbowOpError("no block in an empty rainbow")
    if op == "reflect":
        return rainbow(r.n, [(r.n - a.y, r.n - a.x) for a in r.arcs])
    if block is None:
        raise RainbowOpError(f"{op} needs a block")
    if block.end >= len(r.arcs):
        raise RainbowOpError("block range exceeds the arc list")
    outer = r.arcs[block.start]
    if op == "block_translate_right":
        if not _full_on_left(r, block):
            raise RainbowOpError("condition violated: block not full on the left")
        if not outer.x + outer.y < r.n:
            raise RainbowOpError("condition violated: outer arc sum must be below n")
        return _shift_block(r, block, 1, 1, op)
    if op == "block_translate_left":
        if not _full_on_right(r, block):
            raise RainbowOpError("condition violated: block not full on the right")
        if not outer.x + outer.y > r.n:
            raise RainbowOpError("condition violated: outer arc sum must exceed n")
        return _shift_block(r, block, -1, -1, op)
    if op == "block_contract_left":
        bo = outer_block(r)
        if block != bo:
            raise RainbowOpError("condition violated: block must be the outer block")
        first = r.arcs[0]
        small = first.x == 0 and first.y == r.n and 3 * block.end < r.n
        if not (first == Arc(0, r.n - 1) or small):
            raise RainbowOpError(
                "condition violated: need outer arc 0 -> n-1, or 0 -> n with a short block"
            )
        return _shift_block(r, block, 1, 0, op)
    if op == "block_expand_left":
        first = r.arcs[0]
        if not (first.x == 0 and first.y == r.n):
            raise RainbowOpError("condition violated: outer arc must be 0 -> n")
        bl, br, bo = left_block(r), right_block(r), outer_block(r)
        if bo != bl:
            raise RainbowOpError("condition violated: outer block must be the left block")
        if 3 * bo.end < r.n:
            raise RainbowOpError("condition violated: outer block too short to expand inside")
        if br.end <= bl.end:
            raise RainbowOpError("condition violated: nothing strictly inside the left block")
        if block != Block(bl.end + 1, br.end):
            raise RainbowOpError("condition violated: block must be the right-minus-left range")
        return _shift_block(r, block, -1, 0, op)
    raise RainbowOpError(f"unknown block operation {op!r}")


# -- normalization -----------------------------------------------------------

def is_composable(r: Rainbow) -> bool:
    """True iff some arc can be added while keeping a valid rainbow."""
    free = [c for c in range(r.n + 1) if c not in r.endpoints()]
    if not r.arcs:
        return len(free) >= 2
    arcs = r.arcs
    if any(c < arcs[0].x for c in free) and any(c > arcs[0].y for c in free):
        return True
    inner = arcs[-1]
    if sum(1 for c in free if inner.x < c < inner.y) >= 2:
        return True
    for a, b in zip(arcs, arcs[1:]):
        if any(a.x < c < b.x for c in free) and any(b.y < c < a.y for c in free):
            return True
    return False


@dataclass
class NormalizationResult:
    result: Rainbow
    ops_used: list[str]


def normalize_to_composable(r: Rainbow) -> NormalizationResult:
    """Drive an undersized rainbow to a composable one.

    Applies at most four size-non-decreasing moves, choosing each by the
    shape of the outer blocks.
    """
    max_arcs = (r.n + 1) // 2
    if len(r.arcs) >= max_arcs:
        raise RainbowError(f"rainbow already has {len(r.arcs)} arcs; need fewer than {max_arcs}")
    ops: list[str] = []
    for _ in range(8):
        if is_composable(r):
            return NormalizationResult(r, ops)
        occupied = r.endpoints()
        if r.n not in occupied and r.n - 1 not in occupied:
            r = apply_block_op(r, "block_translate_right", left_block(r))
            ops.append("block_translate_right")
            continue
        if outer_block(r) != left_block(r):
            r = apply_block_op(r, "reflect")
            ops.append("reflect")
            continue
        if 0 not in occupied:
            r = apply_block_op(r, "block_translate_left", right_block(r))
            ops.append("block_translate_left")
            continue
        bo = outer_block(r)
        innermost_x = r.arcs[bo.end].x
        br = right_block(r)
        if innermost_x + 2 not in occupied and br.end > bo.end:
            r = apply_block_op(r, "block_translate_left", Block(bo.end + 1, br.end))
            ops.append("block_translate_left")
            continue
        if r.n not in occupied or 3 * bo.end < r.n:
            r = apply_block_op(r, "block_contract_left", bo)
            ops.append("block_contract_left")
            continue
        r = apply_block_op(r, "block_expand_left", Block(bo.end + 1, br.end))
        ops.append("block_expand_left")
    raise RuntimeError(f"normalization failed to terminate; ops so far: {ops}")


# -- grid lattices and partial rainbows ---------------------------------------

def cpnq_complexity(n: int) -> int:
    """Complexity of the [n] x [1] grid lattice, in closed form."""
    if n < 0:
        raise RainbowError("need n >= 0")
    k = n // 2
    return 3 * k + 1 if n % 2 == 0 else 3 * k + 2


def _rank_arc_arrows(lattice: GroupLattice, arcs: Sequence[tuple[int, int]]) -> frozenset[Arrow]:
    wanted = set(arcs)
    return frozenset(
        a for a in lattice.arrows
        if (lattice.rank(a.source), lattice.rank(a.target)) in wanted
    )


def cpnq_witness_rainbow(n: int) -> GeneratingSet:
    """A partial rainbow on the [n] x [1] lattice realizing the complexity."""
    if n < 0:
        raise RainbowError("need n >= 0")
    lattice = build_chain_product([n, 1])
    k = n // 2
    if n % 2 == 0:
        arcs = [(j, n + 1 - j) for j in range(k + 1)]
    else:
        arcs = [(j, n + 2 - j) for j in range(1, k + 2)]
    arrows = _rank_arc_arrows(lattice, arcs)
    out = GeneratingSet(lattice, arrows)
    assert len(out) == cpnq_complexity(n)
    assert is_partial_rainbow(lattice, out)
    return out


def is_partial_rainbow(lattice: GroupLattice, s: GeneratingSet) -> bool:
    """True iff the rank image of the arrow set is a rainbow and no two
    arrows are conjugate."""
    if not s.arrows:
        return True
    arcs = {(lattice.rank(a.source), lattice.rank(a.target)) for a in s.arrows}
    try:
        rainbow(lattice.rank(lattice.top), sorted(arcs))
    except RainbowError:
        return False
    for a in s.arrows:
        orbit = arrow_orbit(lattice, a)
        if len(orbit & s.arrows) > 1:
            return False
    return True


# -- simple and double rainbow numbers on [n] x [m] ---------------------------

def _midpoint_family(n: int, m: int, total: int) -> list[tuple[int, int, int, int]]:
    out = []
    for a in range(n + 1):
        for b in range(a, n + 1):
            for x in range(m + 1):
                for y in range(x, m + 1):
                    if (a, x) != (b, y) and a + x + b + y == total:
                        out.append((a, x, b, y))
    return out


def _sr_closed(n: int, m: int) -> int:
    d = n - m
    if d % 2 == 0:
        base = comb(m + 3, 3) - ((m + 2) // 2) * ((m + 3) // 2)
    else:
        base = comb(m + 3, 3)
    return base + ((d - (d % 2)) // 2) * comb(m + 2, 2)


def _dr_closed(n: int, m: int) -> int:
    base = comb(m + 2, 3) + (m // 2) * ((m + 1) // 2)
    return base + ((n - m) // 2) * comb(m + 2, 2)


def sr_number(n: int, m: int) -> int:
    """Size of the simple maximal partial rainbow on the [n] x [m] grid,
    computed in closed form and cross-checked by direct enumeration."""
    if n < 1 or m < 1:
        raise RainbowError("need n, m >= 1")
    if n < m:
        n, m = m, n
    total = n + m if (n + m) % 2 == 1 else n + m - 1
    enumerated = len(_midpoint_family(n, m, total))
    closed = _sr_closed(n, m)
    if enumerated != closed:
        raise RuntimeError(f"SR({n},{m}): closed form {closed} != enumeration {enumerated}")
    return closed


def dr_number(n: int, m: int) -> int:
    """Size of the double maximal partial rainbow on [n] x [m]
    (defined when n, m >= 2 and n + m is even)."""
    if n < 2 or m < 2:
        raise RainbowError("need n, m >= 2")
    if (n + m) % 2 != 0:
        raise RainbowError("double rainbows need n + m even")
    if n < m:
        n, m = m, n
    enumerated = len(_midpoint_family(n, m, n + m))
    closed = _dr_closed(n, m)
    if enumerated != closed:
        raise RuntimeError(f"DR({n},{m}): closed form {closed} != enumeration {enumerated}")
    return closed


def ap3_count(n: int) -> int:
    """Number of 3-term arithmetic progressions with positive step in {0..n}."""
    if n < 1:
        raise RainbowError("need n >= 1")
    return (n // 2) * ((n + 1) // 2)


def double_rainbow_augmented(n: int, m: int) -> GeneratingSet:
    """The double rainbow with two marked-point edge stars spliced in: a
    minimal generating set of size DR(n, m) + 2 on the [n] x [m] lattice."""
    if not (n >= m >= 2):
        raise RainbowError("need n >= m >= 2")
    if (n + m) % 2 != 0:
        raise RainbowError("need n + m even")
    lattice = build_chain_product([n, m])
    half = (n + m) // 2
    family = {(a, x, b, y) for (a, x, b, y) in _midpoint_family(n, m, n + m)}
    marked = [((n - m) // 2, m), (half, 0)]
    unit_edges = set()
    for px, py in marked:
        for qx, qy in ((px - 1, py), (px, py - 1)):
            if qx >= 0 and qy >= 0:
                unit_edges.add((qx, qy, px, py))
        for qx, qy in ((px + 1, py), (px, py + 1)):
            if qx <= n and qy <= m:
                unit_edges.add((px, py, qx, qy))
    composites = set()
    for (a, x, b, y) in unit_edges:
        for (c, z, d, w) in unit_edges:
            if (b, y) == (c, z):
                composites.add((a, x, d, w))
    assert composites <= family
    kept = (family - composites) | unit_edges

    def arrow(a, x, b, y):
        return Arrow(element_by_coords(lattice, (a, x)), element_by_coords(lattice, (b, y)))

    out = GeneratingSet(lattice, frozenset(arrow(*t) for t in kept))
    assert len(out) == dr_number(n, m) + 2
    return out


def conjectured_cpnqm_complexity(n: int, m: int) -> int:
    """Conjectured complexity of the [n] x [m] grid; a proven lower bound."""
    if n < m:
        n, m = m, n
    if not m >= 2:
        raise RainbowError("need n, m >= 2")
    if m == 2 and n % 2 == 0:
        return dr_number(n, 2) + 2
    return sr_number(n, m)


# -- Gaussian binomials --------------------------------------------------------

def gaussian_binomial(n: int, k: int, p: int) -> int:
    """The p-analogue of C(n, k): the number of k-dimensional subspaces of an
    n-dimensional space over the field with p elements."""
    if not _is_prime(p):
        raise RainbowError(f"{p} is not prime")
    if not 0 <= k <= n:
        raise RainbowError(f"need 0 <= k <= n, got k={k}, n={n}")
    return gaussian_binomial_count(n, k, p)


def elementary_abelian_lower(n: int, p: int) -> int:
    """Maximal-rainbow size on the subspace lattice of F_p^n: a conjectured
    value for the complexity, exposed strictly as a lower-bound candidate."""
    if n < 1:
        raise RainbowError("need n >= 1")
    gb = lambda a, b: gaussian_binomial(a, b, p)
    if n % 2 == 1:
        return sum(gb(n, n - i) * gb(n - i, i) for i in range((n + 1) // 2))
    if n >= 6:
        return sum(gb(n, n - i) * gb(n - i, i) for i in range(n // 2))
    return sum(gb(n, i) * gb(n - i, i + 1) for i in range(n // 2))
