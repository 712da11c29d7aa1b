"""Bibliographic record model, corpus ingestion and author-name normalization.

Corpus files are UTF-8, newline-delimited JSON: one object per line with keys
``id``, ``title``, ``abstract``, ``controlled_terms``, ``authors``, ``issn``,
``journal`` and ``year``. Absent keys default to empty values.
"""

from __future__ import annotations

import json
import logging
import re
import unicodedata
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from .validation import check_issn

logger = logging.getLogger(__name__)

_WHITESPACE_RUN = re.compile(r"\s+")


class CorpusError(ValueError):
    """A corpus line or file violates the record contract."""


@dataclass(frozen=True)
class Record:
    """One bibliographic document.

    ``authors`` holds names as published; identity matching happens on the
    normalized key (see :func:`normalize_author`). Records are immutable after
    load and safe to share across threads.
    """

    id: str
    title: str
    abstract: str = ""
    controlled_terms: tuple[str, ...] = ()
    authors: tuple[str, ...] = ()
    journal_issn: Optional[str] = None
    journal_title: Optional[str] = None
    year: Optional[int] = None

    def text(self) -> str:
        """Free-text content: title plus abstract."""
        return f"{self.title} {self.abstract}" if self.abstract else self.title


def normalize_author(raw: str) -> str:
    """Deterministic author key: NFC-composed, case-folded, whitespace-collapsed.

    Idempotent by construction. Raises :class:`CorpusError` on input that is
    empty after trimming. This string-level rule is the declared identity unit;
    it does not attempt homonym/synonym disambiguation.
    """
    key = unicodedata.normalize("NFC", raw)
    key = _WHITESPACE_RUN.sub(" ", key).strip().casefold()
    if not key:
        raise CorpusError("author name is empty after trimming")
    return key


def dedupe_authors(authors: tuple[str, ...]) -> tuple[str, ...]:
    """Drop authors whose normalized key repeats, keeping the first spelling."""
    seen: set[str] = set()
    kept = []
    for name in authors:
        key = normalize_author(name)
        if key not in seen:
            seen.add(key)
            kept.append(name)
    return tuple(kept)


def _expect_str(value, key: str) -> str:
    if not isinstance(value, str):
        raise CorpusError(f"field {key!r} must be a string, got {type(value).__name__}")
    return value


def parse_record(line: str) -> Record:
    """Parse one corpus line into a :class:`Record`.

    Author names are kept raw; normalization and per-record deduplication
    happen in :func:`load_corpus`. Raises :class:`CorpusError` on malformed
    JSON, a missing/empty ``id`` or ``title``, or a pattern-invalid ISSN.
    """
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise CorpusError("corpus line must be a JSON object")

    doc_id = obj.get("id")
    if not isinstance(doc_id, str) or not doc_id.strip():
        raise CorpusError("missing or empty 'id'")
    title = obj.get("title")
    if not isinstance(title, str) or not title.strip():
        raise CorpusError("missing or empty 'title'")

    abstract = _expect_str(obj.get("abstract", ""), "abstract") if obj.get("abstract") is not None else ""

    terms = obj.get("controlled_terms", [])
    if not isinstance(terms, list):
        raise CorpusError("'controlled_terms' must be an array")
    controlled_terms = tuple(_expect_str(t, "controlled_terms") for t in terms)

    authors_raw = obj.get("authors", [])
    if not isinstance(authors_raw, list):
        raise CorpusError("'authors' must be an array")
    authors = tuple(_expect_str(a, "authors") for a in authors_raw)

    issn = obj.get("issn")
    journal_issn = None
    if issn is not None and str(issn).strip():
        try:
            journal_issn = check_issn(_expect_str(issn, "issn"))
        except ValueError as exc:
            raise CorpusError(str(exc)) from exc

    journal_title = obj.get("journal")
    if journal_title is not None:
        journal_title = _expect_str(journal_title, "journal") or None

    year = obj.get("year")
    if year is not None and not isinstance(year, int):
        raise CorpusError(f"'year' must be an integer, got {year!r}")

    return Record(
        id=doc_id,
        title=title,
        abstract=abstract,
        controlled_terms=controlled_terms,
        authors=authors,
        journal_issn=journal_issn,
        journal_title=journal_title,
        year=year,
    )


def record_to_json(record: Record) -> str:
    """Serialize a record back to the corpus line format."""
    obj = {
        "id": record.id,
        "title": record.title,
        "abstract": record.abstract,
        "controlled_terms": list(record.controlled_terms),
        "authors": list(record.authors),
        "issn": record.journal_issn,
        "journal": record.journal_title,
        "year": record.year,
    }
    return json.dumps(obj, ensure_ascii=False, sort_keys=True)


def load_corpus(path: str | Path) -> list[Record]:
    """Load a newline-delimited corpus file.

    Blank lines are skipped. Any parse error and any duplicate id aborts the
    load with the offending line number. Authors are deduplicated per record
    on their normalized key.
    """
    records: list[Record] = []
    seen_ids: dict[str, int] = {}
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = parse_record(line)
                record = replace(record, authors=dedupe_authors(record.authors))
            except CorpusError as exc:
                raise CorpusError(f"{path.name}:{line_no}: {exc}") from exc
            if record.id in seen_ids:
                raise CorpusError(
                    f"{path.name}:{line_no}: duplicate id {record.id!r} "
                    f"(first seen on line {seen_ids[record.id]})"
                )
            seen_ids[record.id] = line_no
            records.append(record)
    if records:
        logger.info("loaded %d records from %s", len(records), path)
    else:
        logger.warning("corpus file %s contains no records", path)
    return records
