"""Scholarly retrieval engine with science-model search services.

Baseline TF-IDF retrieval plus three add-ons over one corpus: co-word term
suggestion with query expansion, journal-coreness (Bradfordizing) re-ranking
and author-betweenness re-ranking, together with a pooling/precision/kappa
evaluation kit. Exposed as a library, CLI, HTTP service and web UI.
"""

from .bradford import (
    BradfordReranker,
    BradfordTable,
    bradford_table,
    bradfordize,
    journal_counts,
    zone_partition,
)
from .coauthors import (
    AuthorCentralityReranker,
    CoauthorGraph,
    betweenness_scores,
    build_graph,
    centrality_coverage,
    rank_by_centrality,
)
from .cowords import (
    CoWordModel,
    ExpandedQuery,
    TermAssociation,
    association_score,
    build_associations,
)
from .engine import SERVICES, SearchEngine
from .evaluation import (
    EvaluationError,
    Judgment,
    JudgmentStore,
    OverlapResult,
    PrecisionResult,
    Topic,
    build_report,
    fleiss_kappa,
    load_judgments,
    load_topics,
    overlap_matrix,
    pool,
    precision,
    precision_majority,
)
from .indexing import QueryError, ScoredResult, TfidfIndex, search_tfidf, tokenize
from .records import (
    CorpusError,
    Record,
    load_corpus,
    normalize_author,
    parse_record,
    record_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "AuthorCentralityReranker",
    "BradfordReranker",
    "BradfordTable",
    "CoWordModel",
    "CoauthorGraph",
    "CorpusError",
    "EvaluationError",
    "ExpandedQuery",
    "Judgment",
    "JudgmentStore",
    "OverlapResult",
    "PrecisionResult",
    "QueryError",
    "Record",
    "SERVICES",
    "ScoredResult",
    "SearchEngine",
    "TermAssociation",
    "TfidfIndex",
    "Topic",
    "association_score",
    "betweenness_scores",
    "bradford_table",
    "bradfordize",
    "build_associations",
    "build_graph",
    "build_report",
    "centrality_coverage",
    "fleiss_kappa",
    "journal_counts",
    "load_corpus",
    "load_judgments",
    "load_topics",
    "normalize_author",
    "overlap_matrix",
    "parse_record",
    "pool",
    "precision",
    "precision_majority",
    "rank_by_centrality",
    "record_to_json",
    "search_tfidf",
    "tokenize",
    "zone_partition",
]
