from .guideline import GUIDELINE, guideline_markdown
from .service import (
    AdjudicatedLabel,
    AnnotationRecord,
    AnnotationService,
    AnnotationTask,
    ServiceError,
    degree_to_label,
)

__all__ = [
    "GUIDELINE",
    "AdjudicatedLabel",
    "AnnotationRecord",
    "AnnotationService",
    "AnnotationTask",
    "ServiceError",
    "degree_to_label",
    "guideline_markdown",
]
