"""Standalone validation of lattice interchange documents.

This mirrors the downstream loader's checks against the shared format
contract without importing it, so the two sides cross-check each other.
"""
from __future__ import annotations

import json

ALLOWED_KEYS = {"format_version", "group_name", "elements", "covers", "leq_pairs",
                "conj_generators"}


class ValidationError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def validate_document(text: str) -> dict:
    """Full structural validation; returns a summary report."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError("document root must be an object")
    unknown = set(doc) - ALLOWED_KEYS
    if unknown:
        raise ValidationError(f"unknown top-level keys: {sorted(unknown)}")
    if doc.get("format_version") != 1:
        raise ValidationError("format_version must be 1")
    if not isinstance(doc.get("group_name"), str):
        raise ValidationError("group_name must be a string")
    elements = doc.get("elements")
    if not isinstance(elements, list) or not elements:
        raise ValidationError("elements must be a nonempty array")

    labels = []
    ranks = []
    for i, el in enumerate(elements):
        if set(el) != {"label", "order", "order_factorization"}:
            raise ValidationError(f"element {i}: wrong field set")
        label = el["label"]
        order = 1
        rank = 0
        last_p = 1
        for p, e in el["order_factorization"]:
            if not _is_prime(p) or e < 1 or p <= last_p:
                raise ValidationError(f"element {label!r}: bad factorization")
            last_p = p
            order *= p ** e
            rank += e
        if el["order"] != order:
            raise ValidationError(f"element {label!r}: order does not match factorization")
        labels.append(label)
        ranks.append(rank)
    if len(set(labels)) != len(labels):
        raise ValidationError("duplicate labels")

    n = len(elements)
    if ("covers" in doc) == ("leq_pairs" in doc):
        raise ValidationError("exactly one of covers/leq_pairs required")
    raw = doc.get("covers", doc.get("leq_pairs"))

    below = [{i} for i in range(n)]
    for pair in raw:
        if not (isinstance(pair, list) and len(pair) == 2
                and all(isinstance(x, int) and 0 <= x < n for x in pair)):
            raise ValidationError(f"bad relation entry {pair!r}")
        below[pair[1]].add(pair[0])
    changed = True
    while changed:
        changed = False
        for i in range(n):
            extra = set()
            for j in below[i]:
                extra |= below[j]
            if not extra <= below[i]:
                below[i] |= extra
                changed = True

    for i in range(n):
        for j in below[i]:
            if j != i:
                if i in below[j]:
                    raise ValidationError(
                        f"not antisymmetric between {labels[i]!r} and {labels[j]!r}"
                    )
                if ranks[j] >= ranks[i]:
                    raise ValidationError(
                        f"rank must strictly increase from {labels[j]!r} to {labels[i]!r}"
                    )

    bottoms = [i for i in range(n) if below[i] == {i}]
    tops = [i for i in range(n) if sum(1 for j in range(n) if i in below[j]) == 1]
    if len(bottoms) != 1 or len(tops) != 1:
        raise ValidationError("need a unique bottom and top")
    if below[tops[0]] != set(range(n)):
        raise ValidationError("top does not bound every element")

    by_below = {frozenset(below[i]): i for i in range(n)}
    for a in range(n):
        for b in range(a + 1, n):
            if frozenset(below[a] & below[b]) not in by_below:
                raise ValidationError(
                    f"no unique meet for {labels[a]!r} and {labels[b]!r}"
                )

    gens = doc.get("conj_generators", [])
    for g in gens:
        if sorted(g) != list(range(n)):
            raise ValidationError(f"generator {g!r} is not a permutation")
        for i in range(n):
            if elements[g[i]]["order_factorization"] != elements[i]["order_factorization"]:
                raise ValidationError(
                    f"generator moves {labels[i]!r} onto {labels[g[i]]!r}: "
                    "not an automorphism"
                )
            if {g[j] for j in below[i]} != below[g[i]]:
                raise ValidationError(
                    f"generator does not preserve order at {labels[i]!r}: "
                    "not an automorphism"
                )

    # meet-irreducible conjugacy classes: elements with one upper cover,
    # grouped under the orbit closure of the generators
    strictly_above = [set() for _ in range(n)]
    for i in range(n):
        for j in below[i]:
            if j != i:
                strictly_above[j].add(i)
    def covers_of(x):
        out = []
        for a in strictly_above[x]:
            if not any(b != a and b in below[a] for b in strictly_above[x]):
                out.append(a)
        return out
    irreducible = [x for x in range(n) if len(covers_of(x)) == 1]
    seen: set[int] = set()
    classes = 0
    for x in irreducible:
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = g[y]
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        seen |= orbit
        classes += 1

    return {
        "group_name": doc["group_name"],
        "elements": n,
        "conj_generators": len(gens),
        "meet_irreducible_classes": classes,
        "bottom": labels[bottoms[0]],
        "top": labels[tops[0]],
    }


def verify_export(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return validate_document(fh.read())
