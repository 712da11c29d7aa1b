"""Input validation helpers shared across estimators and service layers."""

from __future__ import annotations

import re
from typing import Iterable, Sequence

ISSN_PATTERN = re.compile(r"^\d{4}-\d{3}[\dX]$")


def check_issn(value: str) -> str:
    """Validate an ISSN and return its canonical form.

    The value is trimmed and upper-cased (the check character may arrive as a
    lowercase ``x``) before matching ``DDDD-DDDC`` where ``C`` is a digit or X.
    """
    issn = value.strip().upper()
    if not ISSN_PATTERN.match(issn):
        raise ValueError(f"invalid ISSN: {value!r}")
    return issn


def check_choice(value: str, allowed: Sequence[str], param: str) -> str:
    if value not in allowed:
        raise ValueError(f"{param} must be one of {list(allowed)}, got {value!r}")
    return value


def check_positive_int(value: int, param: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{param} must be an integer >= 1, got {value!r}")
    return value


def check_unique_ids(ids: Iterable[str]) -> None:
    """Raise when a document id occurs twice."""
    seen = set()
    for doc_id in ids:
        if doc_id in seen:
            raise ValueError(f"duplicate document id: {doc_id!r}")
        seen.add(doc_id)
