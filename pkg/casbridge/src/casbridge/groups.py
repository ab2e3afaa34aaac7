"""A small permutation-group engine: group construction for the supported
families and exhaustive subgroup enumeration.

Groups are frozensets of permutations (tuples of point images).  Subgroups
are found by closing the cyclic subgroups under joins, which reaches every
subgroup because each one is generated by its elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

Perm = tuple[int, ...]


def p_identity(n: int) -> Perm:
    return tuple(range(n))


def p_mul(a: Perm, b: Perm) -> Perm:
    """Apply b first, then a."""
    return tuple(a[x] for x in b)


def p_inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def p_order(a: Perm) -> int:
    n = 1
    x = a
    e = p_identity(len(a))
    while x != e:
        x = p_mul(a, x)
        n += 1
    return n


def generate(gens: list[Perm], degree: int) -> frozenset[Perm]:
    seen = {p_identity(degree)}
    frontier = [p_identity(degree)]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = p_mul(g, x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@dataclass
class PermutationGroup:
    name: str
    degree: int
    generators: list[Perm]
    elements: frozenset[Perm] = field(init=False)

    def __post_init__(self):
        self.elements = generate(self.generators, self.degree)

    @property
    def order(self) -> int:
        return len(self.elements)

    def subgroups(self) -> list[frozenset[Perm]]:
        """Every subgroup, via join closure of the cyclic subgroups."""
        identity = p_identity(self.degree)
        trivial = frozenset({identity})
        cyclics = {frozenset(generate([g], self.degree)) for g in self.elements}
        cyclics.discard(trivial)
        known = {trivial} | cyclics | {self.elements}
        frontier = list(known)
        while frontier:
            sub = frontier.pop()
            for atom in cyclics:
                if atom <= sub:
                    continue
                joined = generate(list(sub | atom), self.degree)
                if joined not in known:
                    known.add(joined)
                    frontier.append(joined)
        return sorted(known, key=lambda s: (len(s), sorted(s)))

    def conjugate_subgroup(self, sub: frozenset[Perm], g: Perm) -> frozenset[Perm]:
        gi = p_inv(g)
        return frozenset(p_mul(g, p_mul(h, gi)) for h in sub)


# -- group families -----------------------------------------------------------

def symmetric_group(n: int) -> PermutationGroup:
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    gens = []
    if n >= 2:
        gens.append(tuple([1, 0] + list(range(2, n))))
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    elif n == 2:
        pass
    return PermutationGroup(f"S{n}", n, gens or [p_identity(n)])


def cyclic_group(n: int) -> PermutationGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    rot = tuple(list(range(1, n)) + [0])
    return PermutationGroup(f"C{n}", n, [rot])


def dihedral_group(n: int) -> PermutationGroup:
    """Symmetries of an n-gon, order 2n."""
    if n < 3:
        raise ValueError("dihedral group needs n >= 3")
    rot = tuple(list(range(1, n)) + [0])
    flip = tuple((n - i) % n for i in range(n))
    return PermutationGroup(f"D{n}", n, [rot, flip])


def elementary_abelian_group(p: int, k: int) -> PermutationGroup:
    if k < 1:
        raise ValueError("need k >= 1")
    if factorize(p) != ((p, 1),):
        raise ValueError(f"{p} is not prime")
    degree = p * k
    gens = []
    for block in range(k):
        base = block * p
        perm = list(range(degree))
        for i in range(p):
            perm[base + i] = base + (i + 1) % p
        gens.append(tuple(perm))
    return PermutationGroup(f"C{p}^{k}", degree, gens)


def _gf8_tables():
    # F_8 as polynomials over F_2 modulo x^3 + x + 1, packed into bits
    def mul(a, b):
        out = 0
        for i in range(3):
            if (b >> i) & 1:
                out ^= a << i
        for i in (4, 3):
            if (out >> i) & 1:
                out ^= 0b1011 << (i - 3)
        return out & 0b111
    return mul


def frobenius_f8() -> PermutationGroup:
    """The affine maps x -> ax + b of the eight-element field: order 56."""
    mul = _gf8_tables()
    translate = tuple(x ^ 1 for x in range(8))
    generator = 2  # x, a multiplicative generator
    scale = tuple(mul(generator, x) for x in range(8))
    return PermutationGroup("F8", 8, [translate, scale])


_NAMED = {"F8": frobenius_f8}


def build_group(family: str, parameters: list[int], name: Optional[str] = None,
                max_order: int = 10_000) -> PermutationGroup:
    if family == "symmetric":
        group = symmetric_group(*parameters)
    elif family == "cyclic":
        group = cyclic_group(*parameters)
    elif family == "dihedral":
        group = dihedral_group(*parameters)
    elif family == "elementary_abelian":
        group = elementary_abelian_group(*parameters)
    elif family == "named":
        if name not in _NAMED:
            raise ValueError(f"unknown named group {name!r}; have {sorted(_NAMED)}")
        group = _NAMED[name]()
    else:
        raise ValueError(f"unknown family {family!r}")
    if group.order > max_order:
        raise ValueError(f"group order {group.order} exceeds the limit {max_order}")
    return group


# -- structure descriptions ----------------------------------------------------

def describe_subgroup(sub: frozenset[Perm]) -> str:
    """A short structure name: enough to tell the classical small groups apart."""
    n = len(sub)
    if n == 1:
        return "C1"
    orders = sorted(p_order(g) for g in sub)
    if orders[-1] == n:
        return f"C{n}"
    abelian = all(p_mul(a, b) == p_mul(b, a) for a in sub for b in sub)
    fact = factorize(n)
    if abelian and len(fact) == 1 and orders[-1] == fact[0][0]:
        return f"C{fact[0][0]}^{fact[0][1]}"
    if abelian:
        return f"Ab{n}"
    if n % 2 == 0:
        half = n // 2
        rotations = [g for g in sub if p_order(g) == half]
        if rotations:
            axis = generate([rotations[0]], len(rotations[0]))
            if any(p_order(g) == 2 and g not in axis for g in sub):
                return f"D{half}"
    if n == 12 and orders[-1] == 3:
        return "A4"
    if n == 20 and orders[-1] == 5:
        return "F5"
    if n == 24 and orders[-1] == 4:
        return "S4"
    if n == 60 and orders[-1] == 5:
        return "A5"
    if n == 120 and orders[-1] == 6:
        return "S5"
    return f"G{n}"
