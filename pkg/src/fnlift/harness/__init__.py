"""Model ingestion, identity suites and reports."""

from .model import GENERATOR_KINDS, ModelSpec, SchemaError, generate, load_model, model_from_dict, with_lift_form
from .report import Report, Row, emit_report
from .runner import run_suites
from .suites import CATALOG, SUITES

__all__ = [
    "CATALOG",
    "GENERATOR_KINDS",
    "ModelSpec",
    "Report",
    "Row",
    "SUITES",
    "SchemaError",
    "emit_report",
    "generate",
    "load_model",
    "model_from_dict",
    "run_suites",
    "with_lift_form",
]
