"""Graphs of groups: data model, predicates, collapse, refinement, equivalence."""

from .collapse import collapse, fundamental_presentation, presentation_with_blocks
from .equivalence import edge_span_index, equivalent, flatten
from .graph import (Diagnostic, Edge, GraphOfGroups, InvalidInputError, Marking, Monomorphism,
                    make_edge, require_valid, validate)
from .labels import (Abelian, Free, GroupLabel, Heis, Opaque, Presented, TriState,
                     UnpresentableError, label_presentation)
from .predicates import find_redundant_vertices, is_minimal, is_reduced
from .refine import (AttachmentFailed, AttachmentUndecidable, InvalidMarking, RefinementData,
                     RefinementError, refine)

__all__ = [
    "Abelian", "AttachmentFailed", "AttachmentUndecidable", "Diagnostic", "Edge", "Free",
    "GraphOfGroups", "GroupLabel", "Heis", "InvalidInputError", "InvalidMarking", "Marking",
    "Monomorphism", "Opaque", "Presented", "RefinementData", "RefinementError", "TriState",
    "UnpresentableError", "collapse", "edge_span_index", "equivalent", "find_redundant_vertices",
    "flatten", "fundamental_presentation", "is_minimal", "is_reduced", "label_presentation",
    "make_edge", "presentation_with_blocks", "refine", "require_valid", "validate",
]
