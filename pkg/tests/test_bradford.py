import random

import pytest

from stratagem import (
    BradfordReranker,
    ScoredResult,
    bradfordize,
    journal_counts,
    zone_partition,
)

from conftest import make_record


def corpus_with_journals(assignments):
    """assignments: list of (doc_id, issn-or-None, baseline)."""
    records = {}
    results = []
    for doc_id, issn, baseline in assignments:
        records[doc_id] = make_record(doc_id, f"title {doc_id}", issn=issn)
        results.append(ScoredResult(doc_id=doc_id, baseline_score=baseline))
    return records, results


class TestJournalCounts:
    def test_counts_per_issn(self):
        rows = [(f"d{i}", "1111-1111", 1.0) for i in range(5)]
        rows += [(f"e{i}", "2222-2222", 1.0) for i in range(3)]
        rows += [("f0", None, 1.0)]
        records, results = corpus_with_journals(rows)
        assert journal_counts(results, records) == {"1111-1111": 5, "2222-2222": 3}

    def test_all_issn_less(self):
        records, results = corpus_with_journals([("d1", None, 1.0), ("d2", None, 0.5)])
        assert journal_counts(results, records) == {}

    def test_single_doc(self):
        records, results = corpus_with_journals([("d1", "1234-5678", 1.0)])
        assert journal_counts(results, records) == {"1234-5678": 1}


class TestZonePartition:
    def test_greedy_cumulative_example(self):
        # counts 9,3,3,1x6 -> T=21, thresholds 7 and 14 -> zones of 1/2/6 journals
        counts = {"0001-0001": 9, "0002-0002": 3, "0003-0003": 3}
        counts.update({f"100{i}-100{i}": 1 for i in range(6)})
        zones, totals = zone_partition(counts)
        per_zone = {z: [j for j, zz in zones.items() if zz == z] for z in (1, 2, 3)}
        assert per_zone[1] == ["0001-0001"]
        assert sorted(per_zone[2]) == ["0002-0002", "0003-0003"]
        assert len(per_zone[3]) == 6
        assert totals == (9, 6, 6)

    def test_single_journal(self):
        zones, totals = zone_partition({"1111-1111": 4})
        assert zones == {"1111-1111": 1}
        assert totals == (4, 0, 0)

    def test_three_equal_counts_one_per_zone(self):
        zones, _ = zone_partition({"0001-0001": 2, "0002-0002": 2, "0003-0003": 2})
        assert sorted(zones.values()) == [1, 2, 3]

    def test_empty_counts_rejected(self):
        with pytest.raises(ValueError):
            zone_partition({})

    def test_count_ordering_across_zones(self):
        rng = random.Random(5)
        for _ in range(50):
            counts = {
                f"{i:04d}-000{i % 10}": rng.randint(1, 30) for i in range(rng.randint(1, 25))
            }
            zones, totals = zone_partition(counts)
            assert sum(totals) == sum(counts.values())
            # every zone-1 count >= every zone-2 count >= every zone-3 count
            by_zone = {z: [counts[j] for j, zz in zones.items() if zz == z] for z in (1, 2, 3)}
            if by_zone[1] and by_zone[2]:
                assert min(by_zone[1]) >= max(by_zone[2])
            if by_zone[2] and by_zone[3]:
                assert min(by_zone[2]) >= max(by_zone[3])


class TestBradfordize:
    def test_weighted_multiplication_order(self):
        rows = [("d1", "1111-1111", 0.2), ("d2", "2222-2222", 0.3)]
        rows += [(f"x{i}", "1111-1111", 0.01) for i in range(4)]  # 1111 count -> 5
        rows += [(f"y{i}", "2222-2222", 0.01) for i in range(2)]  # 2222 count -> 3
        records, results = corpus_with_journals(rows)
        ranked = bradfordize(results, records, mode="weighted")
        assert ranked[0].doc_id == "d1"
        assert ranked[0].rerank_score == pytest.approx(1.0)
        assert ranked[1].doc_id == "d2"
        assert ranked[1].rerank_score == pytest.approx(0.9)

    def test_pure_mode_journal_blocks(self):
        records, results = corpus_with_journals(
            [
                ("d1", "1111-1111", 0.2),
                ("d2", "2222-2222", 0.9),
                ("d3", "1111-1111", 0.1),
            ]
        )
        ranked = bradfordize(results, records, mode="pure")
        assert [r.doc_id for r in ranked] == ["d1", "d3", "d2"]

    def test_issn_less_trails_despite_high_baseline(self):
        records, results = corpus_with_journals(
            [("d1", None, 9.0), ("d2", "1111-1111", 0.5), ("d3", "1111-1111", 0.4)]
        )
        for mode in ("weighted", "pure"):
            ranked = bradfordize(results, records, mode=mode)
            assert ranked[-1].doc_id == "d1"

    def test_empty_input(self):
        assert bradfordize([], {}, mode="weighted") == []

    def test_model_and_ranks(self):
        records, results = corpus_with_journals(
            [("d1", "1111-1111", 0.2), ("d2", None, 0.3)]
        )
        ranked = bradfordize(results, records)
        assert [r.rank for r in ranked] == [1, 2]
        assert all(r.model == "BRAD" for r in ranked)

    def test_invalid_mode_rejected(self):
        with pytest.raises(ValueError, match="mode"):
            bradfordize([], {}, mode="upside-down")

    def test_inputs_not_mutated(self):
        records, results = corpus_with_journals([("d1", "1111-1111", 0.2)])
        bradfordize(results, records)
        assert results[0].model == "SOLR"
        assert results[0].rerank_score is None


def random_result_fixture(rng):
    n_journals = rng.randint(1, 8)
    issns = [f"{i:04d}-{i:03d}0" for i in range(1, n_journals + 1)] + [None]
    rows = []
    for i in range(rng.randint(1, 40)):
        rows.append((f"d{i:03d}", rng.choice(issns), rng.uniform(0.0, 3.0)))
    return corpus_with_journals(rows)


class TestBradfordizeProperties:
    def test_randomized_properties(self):
        rng = random.Random(1234)
        for _ in range(300):
            records, results = random_result_fixture(rng)
            counts = journal_counts(results, records)
            for mode in ("weighted", "pure"):
                ranked = bradfordize(results, records, mode=mode)
                # permutation of the input ids
                assert sorted(r.doc_id for r in ranked) == sorted(r.doc_id for r in results)
                # ISSN-less docs trail all ISSN docs
                issn_flags = [records[r.doc_id].journal_issn is not None for r in ranked]
                assert issn_flags == sorted(issn_flags, reverse=True)
                issn_part = [r for r in ranked if records[r.doc_id].journal_issn]
                if mode == "pure":
                    seq = [counts[records[r.doc_id].journal_issn] for r in issn_part]
                    assert seq == sorted(seq, reverse=True)
                # same-journal docs keep baseline order in both modes
                by_journal = {}
                for r in issn_part:
                    by_journal.setdefault(records[r.doc_id].journal_issn, []).append(
                        r.baseline_score
                    )
                for baselines in by_journal.values():
                    assert baselines == sorted(baselines, reverse=True)

    def test_zone_totals_near_equal_thirds(self):
        rng = random.Random(77)
        for _ in range(100):
            records, results = random_result_fixture(rng)
            counts = journal_counts(results, records)
            if not counts:
                continue
            _, totals = zone_partition(counts)
            total = sum(counts.values())
            biggest = max(counts.values())
            target = -(-total // 3)
            for zone_total in totals:
                assert abs(zone_total - target) <= biggest


class TestBradfordReranker:
    def test_estimator_round_trip(self):
        records, results = corpus_with_journals(
            [("d1", "1111-1111", 0.2), ("d2", "2222-2222", 0.5)]
        )
        reranker = BradfordReranker(mode="pure").fit(records.values())
        assert reranker.transform(results) == bradfordize(results, records, mode="pure")
        table = reranker.table(results)
        assert table.counts == {"1111-1111": 1, "2222-2222": 1}

    def test_get_params(self):
        assert BradfordReranker(mode="pure").get_params()["mode"] == "pure"
