from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stratagem import Record, SearchEngine, TfidfIndex, load_corpus, load_topics

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "stratagem" / "data"


def make_record(doc_id, title, abstract="", terms=(), authors=(), issn=None, journal=None):
    return Record(
        id=doc_id,
        title=title,
        abstract=abstract,
        controlled_terms=tuple(terms),
        authors=tuple(authors),
        journal_issn=issn,
        journal_title=journal,
    )


@pytest.fixture(scope="session")
def five_doc_records():
    """Tiny corpus with hand-checkable TF-IDF arithmetic."""
    return [
        make_record("d1", "alpha beta alpha"),
        make_record("d2", "alpha gamma"),
        make_record("d3", "beta beta beta delta"),
        make_record("d4", "gamma delta"),
        make_record("d5", "epsilon zeta"),
    ]


@pytest.fixture(scope="session")
def five_doc_index(five_doc_records):
    return TfidfIndex().fit(five_doc_records)


@pytest.fixture(scope="session")
def demo_records():
    return load_corpus(DATA_DIR / "demo_corpus.jsonl")


@pytest.fixture(scope="session")
def demo_topics():
    return load_topics(DATA_DIR / "demo_topics.jsonl")


@pytest.fixture(scope="session")
def demo_engine(demo_records):
    return SearchEngine().fit(demo_records)
