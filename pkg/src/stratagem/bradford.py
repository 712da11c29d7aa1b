"""Journal frequency tables, Bradford zones and Bradfordizing re-ranking.

A result set's journals are ranked by how many of its documents they
contribute. Walking that ranking cumulatively and closing a zone each time a
third of the articles is covered yields the classic core / zone-2 / zone-3
partition: few highly productive core journals, then successively larger,
less productive generations.

Two re-ranking modes are provided because they can genuinely disagree:

* ``weighted`` — multiply each document's baseline score by its journal's
  in-result article count and sort by the product;
* ``pure`` — order whole journal blocks by article count, most productive
  first, keeping baseline order inside each block.

Documents without an ISSN are never dropped; they trail the ISSN documents
in baseline order in both modes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .indexing import ScoredResult
from .records import Record
from .validation import check_choice, check_positive_int

BRAD_MODES = ("weighted", "pure")


@dataclass(frozen=True)
class BradfordTable:
    """Per-result-set journal statistics.

    ``counts`` maps ISSN to in-result article count, ``zones`` maps ISSN to
    its 1-based zone label, ``zone_article_totals`` holds one article total
    per zone.
    """

    counts: dict[str, int]
    zones: dict[str, int]
    zone_article_totals: tuple[int, ...]

    def ranked_journals(self) -> list[str]:
        """ISSNs by descending article count, ties by ascending ISSN."""
        return sorted(self.counts, key=lambda issn: (-self.counts[issn], issn))


def journal_counts(
    results: Sequence[ScoredResult], records_by_id: Mapping[str, Record]
) -> dict[str, int]:
    """Article count per ISSN over a result set; ISSN-less docs are excluded."""
    counts: dict[str, int] = {}
    for result in results:
        issn = records_by_id[result.doc_id].journal_issn
        if issn is not None:
            counts[issn] = counts.get(issn, 0) + 1
    return counts


def zone_partition(counts: Mapping[str, int], zones: int = 3) -> tuple[dict[str, int], tuple[int, ...]]:
    """Assign journals to zones by the greedy cumulative third rule.

    Journals are walked in descending count order (ties: ISSN ascending);
    zone ``i`` closes at the first journal where the cumulative article count
    reaches ``ceil(i * T / zones)``. Returns the zone assignment and the
    per-zone article totals.
    """
    if not counts:
        raise ValueError("counts must be non-empty")
    check_positive_int(zones, "zones")
    total = sum(counts.values())
    ranked = sorted(counts, key=lambda issn: (-counts[issn], issn))

    assignment: dict[str, int] = {}
    totals = [0] * zones
    zone = 1
    cumulative = 0
    for issn in ranked:
        assignment[issn] = zone
        cumulative += counts[issn]
        totals[zone - 1] += counts[issn]
        # ceil(zone * total / zones) without floats
        threshold = -(-zone * total // zones)
        if cumulative >= threshold and zone < zones:
            zone += 1
    return assignment, tuple(totals)


def bradford_table(
    results: Sequence[ScoredResult],
    records_by_id: Mapping[str, Record],
    zones: int = 3,
) -> BradfordTable:
    """Counts plus zone partition for one result set."""
    counts = journal_counts(results, records_by_id)
    if not counts:
        return BradfordTable(counts={}, zones={}, zone_article_totals=(0,) * zones)
    assignment, totals = zone_partition(counts, zones=zones)
    return BradfordTable(counts=counts, zones=assignment, zone_article_totals=totals)


def bradfordize(
    results: Sequence[ScoredResult],
    records_by_id: Mapping[str, Record],
    mode: str = "weighted",
) -> list[ScoredResult]:
    """Re-rank a result list by journal coreness.

    Returns new :class:`ScoredResult` objects (model ``BRAD``) over exactly
    the input documents, with ranks reassigned from 1.
    """
    check_choice(mode, BRAD_MODES, "mode")
    if not results:
        return []
    counts = journal_counts(results, records_by_id)

    with_issn = [r for r in results if records_by_id[r.doc_id].journal_issn is not None]
    without_issn = [r for r in results if records_by_id[r.doc_id].journal_issn is None]

    def issn_of(result: ScoredResult) -> str:
        return records_by_id[result.doc_id].journal_issn  # type: ignore[return-value]

    if mode == "weighted":
        weighted = {r.doc_id: r.baseline_score * counts[issn_of(r)] for r in with_issn}
        with_issn.sort(
            key=lambda r: (-weighted[r.doc_id], -counts[issn_of(r)], -r.baseline_score, r.doc_id)
        )
        rerank = weighted
    else:  # pure: journal blocks by count, baseline order within a block
        with_issn.sort(
            key=lambda r: (-counts[issn_of(r)], issn_of(r), -r.baseline_score, r.doc_id)
        )
        rerank = {r.doc_id: float(counts[issn_of(r)]) for r in with_issn}

    without_issn.sort(key=lambda r: (-r.baseline_score, r.doc_id))

    ordered = []
    for position, result in enumerate(with_issn + without_issn, start=1):
        ordered.append(
            replace(
                result,
                rerank_score=rerank.get(result.doc_id, 0.0),
                rank=position,
                model="BRAD",
            )
        )
    return ordered


class BradfordReranker(BaseEstimator):
    """Estimator wrapper around :func:`bradfordize`.

    ``fit`` indexes the corpus records by id; ``transform`` re-ranks a result
    list. ``table`` exposes the journal counts and zones behind a re-ranking
    for reporting.
    """

    def __init__(self, mode: str = "weighted", zones: int = 3):
        self.mode = mode
        self.zones = zones

    def fit(self, records: Sequence[Record]):
        self.records_by_id_ = {r.id: r for r in records}
        return self

    def transform(self, results: Sequence[ScoredResult]) -> list[ScoredResult]:
        check_is_fitted(self)
        return bradfordize(results, self.records_by_id_, mode=self.mode)

    def table(self, results: Sequence[ScoredResult]) -> BradfordTable:
        check_is_fitted(self)
        return bradford_table(results, self.records_by_id_, zones=self.zones)
