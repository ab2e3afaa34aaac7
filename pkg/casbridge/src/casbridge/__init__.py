"""Export subgroup lattices of named finite groups into the lattice
interchange format, with standalone validation."""

from .export import EngineUnavailable, GroupSpec, document_for, export_document, export_group
from .groups import PermutationGroup, build_group, describe_subgroup
from .validate import ValidationError, validate_document, verify_export

__version__ = "0.1.0"
