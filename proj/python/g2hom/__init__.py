"""Python access to the g2hom engine.

Forms are passed as text such as ``"e^{127} + e^{347}"``; results come back
as text or as plain dicts parsed from the engine's JSON reports.
"""

import json

from ._g2hom import (
    Error,
    ParseError,
    UnknownCase,
    b_matrix,
    case_ids,
    closed_forms,
    definiteness,
    hitchin_lambda,
    invariant_forms,
    run_cli,
    verify_file_json,
    verify_json,
    wedge,
)


def verify(filter="*", threads=0):
    """Reports of the bundled cases whose id matches ``filter``."""
    return [json.loads(r) for r in verify_json(filter, threads)]


def verify_file(path):
    return json.loads(verify_file_json(str(path)))


def case_schema():
    from ._g2hom import case_schema as _schema

    return json.loads(_schema())


__all__ = [
    "Error",
    "ParseError",
    "UnknownCase",
    "b_matrix",
    "case_ids",
    "case_schema",
    "closed_forms",
    "definiteness",
    "hitchin_lambda",
    "invariant_forms",
    "run_cli",
    "verify",
    "verify_file",
    "wedge",
]
