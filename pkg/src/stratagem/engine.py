"""Search engine facade: baseline retrieval plus the three add-on services.

The pipeline for one search is

    tokenize -> optional co-word expansion -> TF-IDF retrieval of an inner
    candidate set -> optional journal-coreness or author-centrality re-rank
    -> top-k

Re-ranking always operates on the same fixed-depth candidate set (default
200), so the re-ranked services permute one retrieval run instead of
retrieving differently, and graph sizes stay bounded.
"""

from __future__ import annotations

import pickle
from pathlib import Path
from typing import Optional, Sequence

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .bradford import BRAD_MODES, bradford_table, bradfordize
from .coauthors import (
    AUTHOR_SCOPES,
    build_graph,
    centrality_coverage,
    rank_by_centrality,
)
from .cowords import CoWordModel
from .evaluation import Topic
from .indexing import QueryError, ScoredResult, TfidfIndex, tokenize
from .records import Record
from .validation import check_choice, check_positive_int

RANK_MODES = ("solr", "brad", "auth")
EXPAND_MODES = ("none", "str")
SERVICES = ("SOLR", "STR", "BRAD", "AUTH")

SNAPSHOT_MAGIC = b"stratagem-engine-snapshot:1\n"


class SearchEngine(BaseEstimator):
    """End-to-end engine over one corpus.

    Parameters
    ----------
    candidate_depth : int
        Size of the baseline candidate set handed to the re-rankers.
    expansion_size : int
        Number of descriptors added by query expansion.
    min_cooccurrence : int
        Co-occurrence threshold of the co-word model.
    per_term_cap : int, optional
        Cap on stored descriptors per free term.
    zones : int
        Number of Bradford zones in journal reports.
    author_scope : str
        ``"results"`` builds the co-authorship graph per candidate set;
        ``"corpus"`` precomputes it over the whole corpus at fit time.
    stopwords : frozenset, optional
        Tokenizer stopwords; defaults to the bundled list.
    """

    def __init__(
        self,
        candidate_depth: int = 200,
        expansion_size: int = 4,
        min_cooccurrence: int = 2,
        per_term_cap: Optional[int] = None,
        zones: int = 3,
        author_scope: str = "results",
        stopwords: Optional[frozenset[str]] = None,
        min_token_len: int = 2,
    ):
        self.candidate_depth = candidate_depth
        self.expansion_size = expansion_size
        self.min_cooccurrence = min_cooccurrence
        self.per_term_cap = per_term_cap
        self.zones = zones
        self.author_scope = author_scope
        self.stopwords = stopwords
        self.min_token_len = min_token_len

    # -- construction ------------------------------------------------------

    def fit(self, records: Sequence[Record]):
        check_positive_int(self.candidate_depth, "candidate_depth")
        check_choice(self.author_scope, AUTHOR_SCOPES, "author_scope")
        self.records_ = tuple(records)
        self.records_by_id_ = {r.id: r for r in records}
        self.index_ = TfidfIndex(
            stopwords=self.stopwords, min_token_len=self.min_token_len
        ).fit(records)
        self.coword_ = CoWordModel(
            min_cooccurrence=self.min_cooccurrence,
            per_term_cap=self.per_term_cap,
            expansion_size=self.expansion_size,
        ).fit(self.index_)
        self.corpus_graph_ = (
            build_graph(records) if self.author_scope == "corpus" else None
        )
        return self

    @property
    def doc_count(self) -> int:
        check_is_fitted(self)
        return self.index_.doc_count_

    # -- search ------------------------------------------------------------

    def tokenize(self, text: str) -> list[str]:
        return tokenize(text, stopwords=self.stopwords, min_token_len=self.min_token_len)

    def suggest(self, term: str, m: int = 4) -> list[dict]:
        """Descriptor suggestions for one query term (term-cloud payload)."""
        check_is_fitted(self)
        tokens = self.tokenize(term)
        if not tokens:
            raise QueryError("empty query")
        associations = self.coword_.suggest(tokens[0], m=m)
        return [
            {"controlled_term": a.controlled_term, "score": a.score, "n_ab": a.n_ab}
            for a in associations
        ]

    def search(
        self,
        query: str,
        rank: str = "solr",
        expand: str = "none",
        brad_mode: str = "weighted",
        k: int = 10,
    ) -> dict:
        """Run the full pipeline and return a JSON-serializable response."""
        check_is_fitted(self)
        check_choice(rank, RANK_MODES, "rank")
        check_choice(expand, EXPAND_MODES, "expand")
        check_choice(brad_mode, BRAD_MODES, "brad_mode")
        check_positive_int(k, "k")

        terms = self.tokenize(query)
        if not terms:
            raise QueryError("empty query")

        expansion = None
        search_terms: Sequence[str] = terms
        if expand == "str":
            expansion = self.coword_.expand(terms)
            search_terms = expansion.expanded_terms

        depth = max(k, self.candidate_depth)
        candidates = self.index_.search(search_terms, k=depth)

        response: dict = {
            "query": query,
            "rank": rank,
            "expand": expand,
            "k": k,
            "query_terms": list(terms),
        }
        if expansion is not None:
            response["expansion_terms"] = [
                {"controlled_term": a.controlled_term, "score": a.score, "n_ab": a.n_ab}
                for a in expansion.expansion
            ]
            response["expanded_query_terms"] = list(expansion.expanded_terms)

        if rank == "brad":
            response["brad_mode"] = brad_mode
            reranked = bradfordize(candidates, self.records_by_id_, mode=brad_mode)
            response["journals"] = self._journal_report(candidates)
        elif rank == "auth":
            graph = self.corpus_graph_ or build_graph(
                [self.records_by_id_[r.doc_id] for r in candidates]
            )
            reranked = rank_by_centrality(candidates, self.records_by_id_, graph)
            response["authors"] = self._author_report(graph)
            response["coverage"] = centrality_coverage(reranked)
        else:
            reranked = candidates

        model = rank.upper() if rank != "solr" else ("STR" if expand == "str" else "SOLR")
        final = []
        for position, result in enumerate(reranked[:k], start=1):
            record = self.records_by_id_[result.doc_id]
            final.append(
                {
                    "doc_id": result.doc_id,
                    "title": record.title,
                    "baseline_score": result.baseline_score,
                    "rerank_score": result.rerank_score,
                    "rank": position,
                    "model": model,
                    "issn": record.journal_issn,
                    "journal": record.journal_title,
                    "authors": list(record.authors),
                }
            )
        response["results"] = final
        response["candidate_count"] = len(candidates)
        return response

    def search_results(
        self,
        query: str,
        rank: str = "solr",
        expand: str = "none",
        brad_mode: str = "weighted",
        k: int = 10,
    ) -> list[ScoredResult]:
        """Like :meth:`search` but returning plain :class:`ScoredResult` rows."""
        payload = self.search(query, rank=rank, expand=expand, brad_mode=brad_mode, k=k)
        return [
            ScoredResult(
                doc_id=row["doc_id"],
                baseline_score=row["baseline_score"],
                rerank_score=row["rerank_score"],
                rank=row["rank"],
                model=row["model"],
            )
            for row in payload["results"]
        ]

    # -- reports -----------------------------------------------------------

    def _journal_report(self, candidates: Sequence[ScoredResult]) -> list[dict]:
        table = bradford_table(candidates, self.records_by_id_, zones=self.zones)
        titles: dict[str, str] = {}
        for result in candidates:
            record = self.records_by_id_[result.doc_id]
            if record.journal_issn and record.journal_issn not in titles:
                titles[record.journal_issn] = record.journal_title or ""
        return [
            {
                "issn": issn,
                "journal_title": titles.get(issn, ""),
                "count": table.counts[issn],
                "zone": table.zones[issn],
            }
            for issn in table.ranked_journals()
        ]

    def _author_report(self, graph, limit: int = 50) -> list[dict]:
        ranked = sorted(
            graph.adjacency,
            key=lambda author: (-graph.betweenness.get(author, 0.0), author),
        )
        return [
            {
                "author": author,
                "betweenness": graph.betweenness.get(author, 0.0),
                "degree": graph.degree(author),
                "publication_count": graph.publication_counts.get(author, 0),
            }
            for author in ranked[:limit]
        ]

    def export_edge_list(self, graph) -> str:
        """Co-authorship edges as tab-separated ``author_a author_b weight`` lines."""
        lines = [
            f"{a}\t{b}\t{weight}"
            for (a, b), weight in sorted(graph.edges.items())
        ]
        return "\n".join(lines)

    # -- evaluation support --------------------------------------------------

    def run_services(
        self, topics: Sequence[Topic], k: int = 10
    ) -> dict[str, dict[str, list[ScoredResult]]]:
        """Top-k result lists of all four services for a set of topics."""
        configs = {
            "SOLR": {"rank": "solr", "expand": "none"},
            "STR": {"rank": "solr", "expand": "str"},
            "BRAD": {"rank": "brad", "expand": "none"},
            "AUTH": {"rank": "auth", "expand": "none"},
        }
        out: dict[str, dict[str, list[ScoredResult]]] = {s: {} for s in configs}
        for topic in topics:
            for service, config in configs.items():
                out[service][topic.id] = self.search_results(topic.query, k=k, **config)
        return out

    # -- persistence ---------------------------------------------------------

    def save(self, path: str | Path) -> None:
        """Write a versioned snapshot of the fitted engine."""
        check_is_fitted(self)
        with Path(path).open("wb") as handle:
            handle.write(SNAPSHOT_MAGIC)
            pickle.dump(self, handle, protocol=pickle.HIGHEST_PROTOCOL)

    @classmethod
    def load(cls, path: str | Path) -> "SearchEngine":
        with Path(path).open("rb") as handle:
            magic = handle.read(len(SNAPSHOT_MAGIC))
            if magic != SNAPSHOT_MAGIC:
                raise ValueError(f"{path}: not a recognized engine snapshot")
            engine = pickle.load(handle)
        if not isinstance(engine, cls):
            raise ValueError(f"{path}: snapshot does not contain a SearchEngine")
        return engine
