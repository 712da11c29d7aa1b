"""Retrieval evaluation: pooling, precision, Fleiss kappa and top-k overlap.

The protocol: every evaluated service contributes its top-k documents per
topic; the union (duplicates removed, presentation order shuffled with a
seeded RNG so assessors cannot infer the originating system) forms the pool.
Assessors judge pooled documents as relevant or not relevant; unjudged
documents are ignored in later calculations.

Precision for a service's top-k is P = |r| / (|r| + |nr|) over all individual
(rater, document) judgments touching those documents. Agreement is measured
with Fleiss' kappa over documents judged by exactly ``n_raters`` raters:

    P_i    = sum_j n_ij (n_ij - 1) / (n (n - 1))
    P_bar  = mean of P_i
    P_e    = sum_j p_j^2
    kappa  = (P_bar - P_e) / (1 - P_e)
"""

from __future__ import annotations

import json
import random
import statistics
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .indexing import ScoredResult
from .validation import check_positive_int


class EvaluationError(ValueError):
    """Evaluation input cannot support the requested computation."""


@dataclass(frozen=True)
class Topic:
    id: str
    title: str
    description: str
    query: str


@dataclass(frozen=True)
class Judgment:
    """One binary relevance decision by one rater on one pooled document."""

    topic_id: str
    doc_id: str
    rater_id: str
    relevant: bool
    timestamp: Optional[str] = None


@dataclass(frozen=True)
class PrecisionResult:
    precision: float
    judged: int
    relevant: int
    per_rater: dict[str, float]
    standard_error: float


def load_topics(path: str | Path) -> list[Topic]:
    """Read newline-delimited topic objects {id, title, description, query}."""
    topics: list[Topic] = []
    seen: set[str] = set()
    with Path(path).open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            obj = json.loads(line)
            topic = Topic(
                id=str(obj["id"]),
                title=str(obj.get("title", "")),
                description=str(obj.get("description", "")),
                query=str(obj["query"]),
            )
            if not topic.query.strip():
                raise EvaluationError(f"topic {topic.id!r} (line {line_no}) has an empty query")
            if topic.id in seen:
                raise EvaluationError(f"duplicate topic id {topic.id!r} (line {line_no})")
            seen.add(topic.id)
            topics.append(topic)
    return topics


def pool(
    topic: Topic,
    service_results: Mapping[str, Sequence[ScoredResult]],
    k: int = 10,
    seed: int = 0,
) -> list[str]:
    """Union of every service's top-k doc ids, deduplicated and shuffled.

    The shuffle is seeded per topic so assessment sessions are reproducible
    while hiding each document's originating service.
    """
    check_positive_int(k, "k")
    for service in sorted(service_results):
        if not service_results[service]:
            raise EvaluationError(f"service {service!r} has no results for topic {topic.id!r}")
    pooled = {r.doc_id for results in service_results.values() for r in results[:k]}
    ordered = sorted(pooled)
    random.Random(f"{seed}:{topic.id}").shuffle(ordered)
    return ordered


def precision(service_top_k: Sequence[str], judgments: Iterable[Judgment]) -> PrecisionResult:
    """P = |r| / (|r| + |nr|) over individual judgments on the top-k docs.

    Each (rater, doc) judgment counts once; documents nobody judged are
    ignored. The standard error is the sample standard deviation of the
    per-rater precisions divided by sqrt(#raters) (0.0 with fewer than two
    raters). Raises :class:`EvaluationError` when nothing was assessed.
    """
    top_set = set(service_top_k)
    relevant = 0
    total = 0
    by_rater: dict[str, list[bool]] = {}
    for judgment in judgments:
        if judgment.doc_id not in top_set:
            continue
        total += 1
        relevant += int(judgment.relevant)
        by_rater.setdefault(judgment.rater_id, []).append(judgment.relevant)
    if total == 0:
        raise EvaluationError("no assessments")

    per_rater = {
        rater: sum(map(int, labels)) / len(labels)
        for rater, labels in sorted(by_rater.items())
    }
    if len(per_rater) >= 2:
        standard_error = statistics.stdev(per_rater.values()) / len(per_rater) ** 0.5
    else:
        standard_error = 0.0
    return PrecisionResult(
        precision=relevant / total,
        judged=total,
        relevant=relevant,
        per_rater=per_rater,
        standard_error=standard_error,
    )


def precision_majority(
    service_top_k: Sequence[str], judgments: Iterable[Judgment]
) -> PrecisionResult:
    """Majority-vote variant of :func:`precision` (secondary option).

    Each document in the top-k counts once, labelled by the majority of its
    judgments; documents with tied votes are excluded. ``judged`` counts the
    documents with a majority; ``per_rater`` and ``standard_error`` do not
    apply at document granularity and come back empty/zero.
    """
    top_set = set(service_top_k)
    votes: dict[str, list[bool]] = {}
    for judgment in judgments:
        if judgment.doc_id in top_set:
            votes.setdefault(judgment.doc_id, []).append(judgment.relevant)
    relevant = judged = 0
    for labels in votes.values():
        yes = sum(map(int, labels))
        no = len(labels) - yes
        if yes == no:
            continue
        judged += 1
        relevant += int(yes > no)
    if judged == 0:
        raise EvaluationError("no assessments")
    return PrecisionResult(
        precision=relevant / judged,
        judged=judged,
        relevant=relevant,
        per_rater={},
        standard_error=0.0,
    )


def fleiss_kappa(judgments: Iterable[Judgment], n_raters: int) -> float:
    """Fleiss' kappa over documents judged by exactly ``n_raters`` raters.

    Two categories (relevant / not relevant). The statistic is rational in
    the judgment counts, so it is computed with exact integer arithmetic and
    converted to float once at the end. Raises :class:`EvaluationError` with
    fewer than two eligible documents, or when every judgment falls into a
    single category (expected agreement 1).
    """
    if n_raters < 2:
        raise EvaluationError("fleiss kappa requires at least 2 raters")
    per_doc: dict[str, dict[str, bool]] = {}
    for judgment in judgments:
        per_doc.setdefault(judgment.doc_id, {})[judgment.rater_id] = judgment.relevant
    eligible = [labels for labels in per_doc.values() if len(labels) == n_raters]
    if len(eligible) < 2:
        raise EvaluationError(
            f"fewer than 2 documents judged by exactly {n_raters} raters"
        )

    total_relevant = 0
    agreement_numerator = 0  # sum over docs of n_rel(n_rel-1) + n_not(n_not-1)
    for labels in eligible:
        n_rel = sum(map(int, labels.values()))
        n_not = n_raters - n_rel
        total_relevant += n_rel
        agreement_numerator += n_rel * (n_rel - 1) + n_not * (n_not - 1)

    m = len(eligible)
    total = m * n_raters
    p_bar = Fraction(agreement_numerator, m * n_raters * (n_raters - 1))
    p_rel = Fraction(total_relevant, total)
    p_expected = p_rel**2 + (1 - p_rel) ** 2
    if p_expected == 1:
        raise EvaluationError("degenerate category distribution")
    return float((p_bar - p_expected) / (1 - p_expected))


@dataclass(frozen=True)
class OverlapResult:
    services: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    total_off_diagonal: int

    def as_dict(self) -> dict:
        return {
            "services": list(self.services),
            "matrix": [list(row) for row in self.matrix],
            "total_off_diagonal": self.total_off_diagonal,
        }


def overlap_matrix(
    per_service_top_k: Mapping[str, Mapping[str, Sequence[str]]],
    k: int,
) -> OverlapResult:
    """Pairwise |top-k(s1) ∩ top-k(s2)| summed over topics.

    ``per_service_top_k`` maps service -> topic id -> top-k doc ids. The
    diagonal equals k x #topics whenever every list is full. The reported
    total counts each unordered service pair once.
    """
    check_positive_int(k, "k")
    services = tuple(sorted(per_service_top_k))
    topics = sorted({t for lists in per_service_top_k.values() for t in lists})
    sets = {
        (service, topic): set(per_service_top_k[service].get(topic, ())[:k])
        for service in services
        for topic in topics
    }
    matrix = tuple(
        tuple(
            sum(len(sets[(s1, t)] & sets[(s2, t)]) for t in topics)
            for s2 in services
        )
        for s1 in services
    )
    total = sum(
        matrix[i][j] for i in range(len(services)) for j in range(i + 1, len(services))
    )
    return OverlapResult(services=services, matrix=matrix, total_off_diagonal=total)


def build_report(
    topics: Sequence[Topic],
    service_results: Mapping[str, Mapping[str, Sequence[ScoredResult]]],
    judgments: Sequence[Judgment],
    k: int = 10,
    seed: int = 0,
) -> dict:
    """Assemble the full evaluation report as a JSON-serializable dict.

    Precision and kappa are reported as null where no usable judgments exist
    (empty pools of assessments, degenerate distributions); pools and the
    overlap matrix are always present. Deterministic given the shuffle seed.
    """
    check_positive_int(k, "k")
    services = tuple(sorted(service_results))
    judgments_by_topic: dict[str, list[Judgment]] = {}
    for judgment in judgments:
        judgments_by_topic.setdefault(judgment.topic_id, []).append(judgment)

    topic_reports = []
    for topic in topics:
        per_topic = {
            service: service_results[service].get(topic.id, [])
            for service in services
        }
        missing = [s for s, results in per_topic.items() if not results]
        if missing:
            raise EvaluationError(
                f"services {missing} have no results for topic {topic.id!r}"
            )
        pooled = pool(topic, per_topic, k=k, seed=seed)
        topic_judgments = judgments_by_topic.get(topic.id, [])

        service_entries = {}
        for service in services:
            top_ids = [r.doc_id for r in per_topic[service][:k]]
            try:
                result = precision(top_ids, topic_judgments)
                service_entries[service] = {
                    "precision": result.precision,
                    "judged": result.judged,
                    "relevant": result.relevant,
                    "standard_error": result.standard_error,
                }
            except EvaluationError:
                service_entries[service] = {
                    "precision": None,
                    "judged": 0,
                    "relevant": 0,
                    "standard_error": None,
                }

        n_raters = len({j.rater_id for j in topic_judgments})
        try:
            kappa = fleiss_kappa(topic_judgments, n_raters) if n_raters >= 2 else None
        except EvaluationError:
            kappa = None

        topic_reports.append(
            {
                "topic_id": topic.id,
                "query": topic.query,
                "pool_size": len(pooled),
                "pool": pooled,
                "n_raters": n_raters,
                "fleiss_kappa": kappa,
                "services": service_entries,
            }
        )

    per_service_top_k = {
        service: {
            topic.id: [r.doc_id for r in service_results[service][topic.id][:k]]
            for topic in topics
        }
        for service in services
    }
    overlap = overlap_matrix(per_service_top_k, k=k)

    return {
        "k": k,
        "seed": seed,
        "services": list(services),
        "topic_count": len(topics),
        "total_judgments": len(judgments),
        "topics": topic_reports,
        "overlap": overlap.as_dict(),
    }


class JudgmentStore:
    """Append-only newline-delimited judgment log with latest-wins reads.

    Writes are serialized with a lock; each line is
    ``{topic_id, doc_id, rater_id, relevant(0|1), timestamp}``. A repeated
    (topic, doc, rater) combination overwrites on read and is flagged as
    ``"updated"`` on write.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, judgment: Judgment) -> str:
        """Durably append a judgment; returns ``"new"`` or ``"updated"``."""
        key = (judgment.topic_id, judgment.doc_id, judgment.rater_id)
        with self._lock:
            existing = {
                (j.topic_id, j.doc_id, j.rater_id) for j in self._read_all()
            }
            status = "updated" if key in existing else "new"
            stamp = judgment.timestamp or datetime.now(timezone.utc).isoformat()
            line = json.dumps(
                {
                    "topic_id": judgment.topic_id,
                    "doc_id": judgment.doc_id,
                    "rater_id": judgment.rater_id,
                    "relevant": int(judgment.relevant),
                    "timestamp": stamp,
                },
                ensure_ascii=False,
                sort_keys=True,
            )
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(line + "\n")
                handle.flush()
        return status

    def _read_all(self) -> list[Judgment]:
        if not self.path.exists():
            return []
        out = []
        with self.path.open("r", encoding="utf-8") as handle:
            for line in handle:
                if not line.strip():
                    continue
                obj = json.loads(line)
                out.append(
                    Judgment(
                        topic_id=str(obj["topic_id"]),
                        doc_id=str(obj["doc_id"]),
                        rater_id=str(obj["rater_id"]),
                        relevant=bool(int(obj["relevant"])),
                        timestamp=obj.get("timestamp"),
                    )
                )
        return out

    def load_latest(self) -> list[Judgment]:
        """Latest judgment per (topic, doc, rater), in first-seen order."""
        latest: dict[tuple[str, str, str], Judgment] = {}
        for judgment in self._read_all():
            latest[(judgment.topic_id, judgment.doc_id, judgment.rater_id)] = judgment
        return list(latest.values())


def load_judgments(path: str | Path) -> list[Judgment]:
    """Latest-wins read of a judgments file."""
    return JudgmentStore(path).load_latest()
