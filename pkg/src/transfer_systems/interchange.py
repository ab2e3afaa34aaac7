"""Lattice interchange format: load and dump UTF-8 JSON documents.

Top-level keys:

* ``format_version`` -- must be 1.
* ``group_name`` -- string.
* ``elements`` -- array of ``{"label", "order", "order_factorization"}``
  where ``order_factorization`` is an array of ``[prime, exponent]`` pairs.
* exactly one of ``covers`` (array of ``[lower, upper]`` index pairs, closed
  transitively by the loader) or ``leq_pairs`` (array of ``[a, b]`` meaning
  ``a <= b``).
* ``conj_generators`` -- optional array of permutations, each a full array
  of element indices (image of i at position i).

Unknown top-level keys are rejected.  Every structural invariant of
:class:`~transfer_systems.lattice.GroupLattice` is validated on load and the
first violation is reported with element labels.
"""
from __future__ import annotations

import json

from .lattice import GroupLattice, LatticeError, _canonicalize, _is_prime, _transitive_pairs

FORMAT_VERSION = 1

_ALLOWED_KEYS = {"format_version", "group_name", "elements", "covers", "leq_pairs",
                 "conj_generators"}


class InterchangeError(LatticeError):
    """Raised for malformed interchange documents."""


def load_lattice(text: str) -> GroupLattice:
    """Parse and fully validate an interchange document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InterchangeError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InterchangeError("document root must be an object")
    unknown = set(doc) - _ALLOWED_KEYS
    if unknown:
        raise InterchangeError(f"unknown top-level keys: {sorted(unknown)}")
    if doc.get("format_version") != FORMAT_VERSION:
        raise InterchangeError(f"format_version must be {FORMAT_VERSION}")
    name = doc.get("group_name")
    if not isinstance(name, str):
        raise InterchangeError("group_name must be a string")
    elements = doc.get("elements")
    if not isinstance(elements, list) or not elements:
        raise InterchangeError("elements must be a nonempty array")

    labels = []
    facts = []
    for i, el in enumerate(elements):
        if not isinstance(el, dict) or set(el) != {"label", "order", "order_factorization"}:
            raise InterchangeError(f"element {i} must have exactly label/order/order_factorization")
        label = el["label"]
        if not isinstance(label, str):
            raise InterchangeError(f"element {i}: label must be a string")
        fact = el["order_factorization"]
        if not isinstance(fact, list):
            raise InterchangeError(f"element {label!r}: order_factorization must be an array")
        pairs = []
        for pe in fact:
            if (not isinstance(pe, list) or len(pe) != 2
                    or not all(isinstance(x, int) for x in pe)):
                raise InterchangeError(f"element {label!r}: bad factorization entry {pe!r}")
            p, e = pe
            if not _is_prime(p):
                raise InterchangeError(f"element {label!r}: {p} is not prime")
            if e < 1:
                raise InterchangeError(f"element {label!r}: exponent must be >= 1")
            pairs.append((p, e))
        if sorted(p for p, _ in pairs) != [p for p, _ in pairs] or \
                len({p for p, _ in pairs}) != len(pairs):
            raise InterchangeError(f"element {label!r}: factorization primes must be "
                                   "strictly increasing")
        order = 1
        for p, e in pairs:
            order *= p ** e
        if el["order"] != order:
            raise InterchangeError(
                f"element {label!r}: order {el['order']} does not match factorization ({order})"
            )
        labels.append(label)
        facts.append(tuple(pairs))

    n = len(elements)
    has_covers = "covers" in doc
    has_leq = "leq_pairs" in doc
    if has_covers == has_leq:
        raise InterchangeError("exactly one of covers/leq_pairs is required")
    raw = doc["covers"] if has_covers else doc["leq_pairs"]
    if not isinstance(raw, list):
        raise InterchangeError("relation must be an array of index pairs")
    rel = []
    for pair in raw:
        if not (isinstance(pair, list) and len(pair) == 2
                and all(isinstance(x, int) for x in pair)):
            raise InterchangeError(f"bad relation entry {pair!r}")
        rel.append((pair[0], pair[1]))
    pairs = _transitive_pairs(n, rel)

    gens = doc.get("conj_generators", [])
    if not isinstance(gens, list):
        raise InterchangeError("conj_generators must be an array of permutations")
    perms = []
    for g in gens:
        if not (isinstance(g, list) and len(g) == n and all(isinstance(x, int) for x in g)):
            raise InterchangeError(f"conjugation generator {g!r} must list all {n} images")
        perms.append(tuple(g))

    return _canonicalize(name, labels, facts, pairs, perms)


def load_lattice_file(path) -> GroupLattice:
    with open(path, encoding="utf-8") as fh:
        return load_lattice(fh.read())


def dump_lattice(lattice: GroupLattice) -> str:
    """Serialize a lattice to the interchange format (canonical element order)."""
    elements = [
        {
            "label": e.label,
            "order": e.order,
            "order_factorization": [[p, x] for p, x in e.order_factorization],
        }
        for e in lattice.elements
    ]
    covers = []
    for i, ups in enumerate(lattice.covers_up):
        for j in ups:
            covers.append([i, j])
    doc = {
        "format_version": FORMAT_VERSION,
        "group_name": lattice.name,
        "elements": elements,
        "covers": covers,
        "conj_generators": [list(g) for g in lattice.conj_generators],
    }
    return json.dumps(doc, indent=1)
