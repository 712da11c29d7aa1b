"""Co-word associations between free-text terms and controlled descriptors.

For a free term A (from title/abstract tokens) and a controlled descriptor B,
document-level presence yields a 2x2 contingency table

    n_ab           docs containing A and carrying B
    n_ab_not       docs containing A, without B
    n_not_ab       docs carrying B, without A
    n_not_a_not_b  docs with neither

whose cells always sum to the corpus size N. Association strength is the
one-sided log-likelihood ratio

    G2 = 2 * sum over cells of O * ln(O / E)

with expected counts E taken from the row/column marginals, the convention
0 * ln(0/E) = 0, and a clamp to 0 whenever the observed co-occurrence is at
or below its expectation under independence (only positively associated
pairs score). G2 stays well-behaved on the sparse counts typical of
controlled vocabularies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .indexing import TfidfIndex, tokenize
from .validation import check_positive_int


@dataclass(frozen=True)
class TermAssociation:
    """One free-term/descriptor pair with its contingency cells and score."""

    free_term: str
    controlled_term: str
    n_ab: int
    n_ab_not: int
    n_not_ab: int
    n_not_a_not_b: int
    score: float


@dataclass(frozen=True)
class ExpandedQuery:
    """Outcome of query expansion: the terms to retrieve with, plus provenance."""

    original_terms: tuple[str, ...]
    expansion: tuple[TermAssociation, ...]
    expanded_terms: tuple[str, ...]


def association_score(n_ab: int, n_ab_not: int, n_not_ab: int, n_not_a_not_b: int) -> float:
    """One-sided G2 for a 2x2 contingency table.

    Returns 0.0 at or below independence. Raises ``ValueError`` on negative
    cells or an all-zero table.
    """
    cells = (n_ab, n_ab_not, n_not_ab, n_not_a_not_b)
    if any(c < 0 for c in cells):
        raise ValueError("contingency cells must be non-negative")
    n = sum(cells)
    if n == 0:
        raise ValueError("all-zero contingency table")

    row_a = n_ab + n_ab_not
    col_b = n_ab + n_not_ab
    if n_ab * n <= row_a * col_b:  # observed <= expected: no positive association
        return 0.0

    g2 = 0.0
    for observed, row, col in (
        (n_ab, row_a, col_b),
        (n_ab_not, row_a, n - col_b),
        (n_not_ab, n - row_a, col_b),
        (n_not_a_not_b, n - row_a, n - col_b),
    ):
        if observed > 0:
            g2 += observed * math.log(observed * n / (row * col))
    return 2.0 * g2


class CoWordModel(BaseEstimator):
    """Precomputed free-term -> descriptor association model.

    Parameters
    ----------
    min_cooccurrence : int
        Minimum document co-occurrence for a pair to enter the model.
        The default of 2 suppresses singleton noise.
    per_term_cap : int, optional
        Keep at most this many descriptors per free term (strongest first).
    expansion_size : int
        Number of descriptors added by :meth:`expand` (4 by default).
    """

    def __init__(
        self,
        min_cooccurrence: int = 2,
        per_term_cap: Optional[int] = None,
        expansion_size: int = 4,
    ):
        self.min_cooccurrence = min_cooccurrence
        self.per_term_cap = per_term_cap
        self.expansion_size = expansion_size

    def fit(self, index: TfidfIndex):
        """Score every (free term, descriptor) pair co-occurring often enough.

        Cells are counted at document granularity: A means the term occurs in
        the title/abstract tokens, B means the descriptor is assigned. Only
        positively associated pairs (score > 0) are stored.
        """
        check_is_fitted(index)
        check_positive_int(self.min_cooccurrence, "min_cooccurrence")
        n = index.doc_count_

        doc_terms: dict[str, set[str]] = {}
        for term, postings in index.text_postings_.items():
            for doc_id in postings:
                doc_terms.setdefault(doc_id, set()).add(term)

        pair_counts: dict[tuple[str, str], int] = {}
        for descriptor, doc_ids in index.controlled_postings_.items():
            for doc_id in doc_ids:
                for term in doc_terms.get(doc_id, ()):
                    pair = (term, descriptor)
                    pair_counts[pair] = pair_counts.get(pair, 0) + 1

        by_term: dict[str, list[TermAssociation]] = {}
        for (term, descriptor), n_ab in pair_counts.items():
            if n_ab < self.min_cooccurrence:
                continue
            n_a = len(index.text_postings_[term])
            n_b = len(index.controlled_postings_[descriptor])
            cells = (n_ab, n_a - n_ab, n_b - n_ab, n - n_a - n_b + n_ab)
            score = association_score(*cells)
            if score <= 0.0:
                continue
            by_term.setdefault(term, []).append(
                TermAssociation(term, descriptor, *cells, score=score)
            )

        for term, associations in by_term.items():
            associations.sort(key=lambda a: (-a.score, a.controlled_term))
            if self.per_term_cap is not None:
                del associations[self.per_term_cap :]

        self.doc_count_ = n
        self.associations_ = by_term
        return self

    def suggest(self, query_term: str, m: int = 4) -> list[TermAssociation]:
        """Top-m descriptors for one free term; empty for unknown terms."""
        check_is_fitted(self)
        check_positive_int(m, "m")
        return list(self.associations_.get(query_term, ())[:m])

    def expand(self, query_terms: Sequence[str]) -> ExpandedQuery:
        """Expand a tokenized query with its strongest associated descriptors.

        Suggestions are gathered per query term, pooled by score, deduplicated
        per descriptor (best score wins) and truncated to ``expansion_size``.
        The expanded term list is the disjunction of the original terms and
        the tokenized descriptors; with no suggestions it equals the original.
        """
        check_is_fitted(self)
        if not query_terms:
            raise ValueError("query_terms must be non-empty")

        best: dict[str, TermAssociation] = {}
        for term in query_terms:
            for assoc in self.associations_.get(term, ()):
                current = best.get(assoc.controlled_term)
                if current is None or assoc.score > current.score:
                    best[assoc.controlled_term] = assoc
        chosen = sorted(best.values(), key=lambda a: (-a.score, a.controlled_term))
        chosen = chosen[: self.expansion_size]

        expanded = list(dict.fromkeys(query_terms))
        for assoc in chosen:
            for token in tokenize(assoc.controlled_term):
                if token not in expanded:
                    expanded.append(token)
        return ExpandedQuery(
            original_terms=tuple(query_terms),
            expansion=tuple(chosen),
            expanded_terms=tuple(expanded),
        )


def build_associations(index: TfidfIndex, min_cooccurrence: int = 2) -> CoWordModel:
    """Functional form of :meth:`CoWordModel.fit`."""
    return CoWordModel(min_cooccurrence=min_cooccurrence).fit(index)
