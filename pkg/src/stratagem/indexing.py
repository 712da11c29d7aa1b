"""Inverted index with per-field statistics and the TF-IDF baseline ranking.

The index keeps three posting structures:

* ``text_postings_`` — tokens from title+abstract, with term frequencies;
* ``controlled_postings_`` — controlled descriptors indexed verbatim;
* ``combined_postings_`` — the retrieval field: title+abstract+descriptor
  tokens, with term frequencies.

Retrieval scores a document ``d`` for a query as

    score(d) = sum over unique query terms t with tf(t, d) > 0 of
               (1 + ln tf(t, d)) * ln(N / df(t))

computed over the combined field, with no document-length normalization, so
rankings are exactly reproducible.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .records import Record
from .stopwords import DEFAULT_STOPWORDS
from .validation import check_positive_int, check_unique_ids

# Alphanumeric runs; underscores split like any other punctuation.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

MODELS = ("SOLR", "STR", "BRAD", "AUTH")


class QueryError(ValueError):
    """The query is unusable (e.g. empty after tokenization)."""


@dataclass
class ScoredResult:
    """One ranked document of a result list.

    ``baseline_score`` is the TF-IDF score of the retrieval run that produced
    the candidate; ``rerank_score`` is set by the re-ranking services. ``rank``
    is the 1-based position under the active model.
    """

    doc_id: str
    baseline_score: float
    rerank_score: Optional[float] = None
    rank: int = 0
    model: str = "SOLR"


def tokenize(
    text: str,
    stopwords: Optional[frozenset[str]] = None,
    min_token_len: int = 2,
) -> list[str]:
    """Lowercase, split on non-alphanumeric runs, drop short tokens and stopwords.

    Order is preserved; empty input yields an empty list.
    """
    if stopwords is None:
        stopwords = DEFAULT_STOPWORDS
    return [
        token
        for token in (m.group(0).lower() for m in _TOKEN_RE.finditer(text))
        if len(token) >= min_token_len and token not in stopwords
    ]


class TfidfIndex(BaseEstimator):
    """Immutable inverted index over a corpus of :class:`Record` objects.

    Parameters
    ----------
    stopwords : frozenset of str, optional
        Tokens removed during tokenization; defaults to the bundled list.
    min_token_len : int
        Minimum token length kept by the tokenizer.
    """

    def __init__(self, stopwords: Optional[frozenset[str]] = None, min_token_len: int = 2):
        self.stopwords = stopwords
        self.min_token_len = min_token_len

    def tokenize(self, text: str) -> list[str]:
        return tokenize(text, stopwords=self.stopwords, min_token_len=self.min_token_len)

    def fit(self, records: Sequence[Record]):
        """Build all posting structures. The index is immutable afterwards."""
        check_unique_ids(r.id for r in records)
        text_postings: dict[str, dict[str, int]] = {}
        controlled_postings: dict[str, set[str]] = {}
        combined_postings: dict[str, dict[str, int]] = {}

        for record in records:
            text_tokens = self.tokenize(record.text())
            for term, tf in Counter(text_tokens).items():
                text_postings.setdefault(term, {})[record.id] = tf

            combined_tokens = list(text_tokens)
            for descriptor in record.controlled_terms:
                controlled_postings.setdefault(descriptor, set()).add(record.id)
                combined_tokens.extend(self.tokenize(descriptor))
            for term, tf in Counter(combined_tokens).items():
                combined_postings.setdefault(term, {})[record.id] = tf

        self.doc_count_ = len(records)
        self.doc_ids_ = tuple(r.id for r in records)
        self.text_postings_ = text_postings
        self.controlled_postings_ = controlled_postings
        self.combined_postings_ = combined_postings
        return self

    def df(self, term: str, field: str = "combined") -> int:
        """Document frequency of a term within one field."""
        check_is_fitted(self)
        if field == "combined":
            return len(self.combined_postings_.get(term, ()))
        if field == "text":
            return len(self.text_postings_.get(term, ()))
        if field == "controlled":
            return len(self.controlled_postings_.get(term, ()))
        raise ValueError(f"unknown field {field!r}")

    def idf(self, term: str) -> float:
        """ln(N / df) over the combined field; 0.0 for unseen terms."""
        df = self.df(term)
        if df == 0:
            return 0.0
        return math.log(self.doc_count_ / df)

    def search(self, query_terms: Sequence[str], k: int = 10) -> list[ScoredResult]:
        """Rank documents for already-tokenized query terms.

        Documents scoring 0 are excluded. Ties break on the larger total raw
        term frequency over the query terms, then ascending doc id.
        """
        check_is_fitted(self)
        check_positive_int(k, "k")
        terms = sorted(set(query_terms))
        if not terms:
            raise QueryError("empty query")

        scores: dict[str, float] = {}
        raw_tf: dict[str, int] = {}
        for term in terms:
            postings = self.combined_postings_.get(term)
            if not postings:
                continue
            idf = math.log(self.doc_count_ / len(postings))
            for doc_id, tf in postings.items():
                scores[doc_id] = scores.get(doc_id, 0.0) + (1.0 + math.log(tf)) * idf
                raw_tf[doc_id] = raw_tf.get(doc_id, 0) + tf

        ranked = sorted(
            (doc_id for doc_id, score in scores.items() if score > 0.0),
            key=lambda d: (-scores[d], -raw_tf[d], d),
        )
        return [
            ScoredResult(doc_id=doc_id, baseline_score=scores[doc_id], rank=position, model="SOLR")
            for position, doc_id in enumerate(ranked[:k], start=1)
        ]


def search_tfidf(index: TfidfIndex, query_terms: Sequence[str], k: int = 10) -> list[ScoredResult]:
    """Functional form of :meth:`TfidfIndex.search`."""
    return index.search(query_terms, k=k)
