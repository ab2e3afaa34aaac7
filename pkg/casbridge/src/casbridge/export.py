"""Build lattice interchange documents from a group's subgroup collection."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional

from .groups import (Perm, PermutationGroup, build_group, describe_subgroup,
                     factorize)

ENGINE_VAR = "CASBRIDGE_ENGINE"


class EngineUnavailable(RuntimeError):
    pass


@dataclass
class GroupSpec:
    family: str
    parameters: list[int] = field(default_factory=list)
    name: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        family, _, rest = text.partition(":")
        if family == "named":
            return cls(family, [], rest or None)
        try:
            params = [int(x) for x in rest.split(",")] if rest else []
        except ValueError:
            raise ValueError(f"bad parameters in group spec {text!r}") from None
        return cls(family, params)


def _check_engine():
    engine = os.environ.get(ENGINE_VAR, "builtin")
    if engine != "builtin":
        raise EngineUnavailable(
            f"computer algebra engine {engine!r} is not available; "
            f"unset {ENGINE_VAR} or set it to 'builtin'"
        )


def export_document(spec: GroupSpec, max_order: int = 10_000) -> str:
    """Subgroup lattice of the specified group as an interchange document."""
    _check_engine()
    group = build_group(spec.family, spec.parameters, spec.name, max_order)
    return document_for(group)


def document_for(group: PermutationGroup) -> str:
    subgroups = group.subgroups()
    index = {sub: i for i, sub in enumerate(subgroups)}

    descriptions = []
    for sub in subgroups:
        if sub == group.elements:
            descriptions.append(group.name)
        else:
            descriptions.append(describe_subgroup(sub))
    counts: dict[str, int] = {}
    labels = []
    for desc in descriptions:
        k = counts.get(desc, 0)
        counts[desc] = k + 1
        labels.append(desc if descriptions.count(desc) == 1 else f"{desc}_{k}")

    elements = [
        {
            "label": labels[i],
            "order": len(sub),
            "order_factorization": [[p, e] for p, e in factorize(len(sub))],
        }
        for i, sub in enumerate(subgroups)
    ]

    covers = []
    for i, low in enumerate(subgroups):
        for j, high in enumerate(subgroups):
            if i == j or not low < high:
                continue
            if not any(low < mid < high for mid in subgroups):
                covers.append([i, j])

    conj_generators = []
    for g in group.generators:
        perm = [index[group.conjugate_subgroup(sub, g)] for sub in subgroups]
        if perm != list(range(len(subgroups))):
            conj_generators.append(perm)

    doc = {
        "format_version": 1,
        "group_name": group.name,
        "elements": elements,
        "covers": covers,
        "conj_generators": conj_generators,
    }
    return json.dumps(doc, indent=1)


def export_group(spec: GroupSpec, out_path: str, max_order: int = 10_000) -> dict:
    """Validate, then write the document; returns the validation report."""
    from .validate import validate_document

    text = export_document(spec, max_order)
    report = validate_document(text)  # fail before writing anything
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return report
