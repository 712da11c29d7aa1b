import pytest
from sklearn.exceptions import NotFittedError

from stratagem import QueryError, SearchEngine

from conftest import make_record


@pytest.fixture(scope="module")
def small_engine():
    records = [
        make_record(
            "d1",
            "unemployment rates rising",
            terms=["Labor Market"],
            authors=["Keller, M.", "Brandt, A."],
            issn="1111-1111",
            journal="Journal of Work",
        ),
        make_record(
            "d2",
            "unemployment and wages",
            terms=["Labor Market"],
            authors=["Brandt, A.", "Fischer, C."],
            issn="1111-1111",
            journal="Journal of Work",
        ),
        make_record(
            "d3",
            "youth unemployment studies",
            terms=["Labor Market"],
            authors=["Weber, D."],
            issn="2222-2222",
            journal="Labour Bulletin",
        ),
        make_record("d4", "school curriculum reform", terms=["Education"]),
        make_record("d5", "unemployment discourse in media", authors=["Vogel, E."]),
    ]
    return SearchEngine(min_cooccurrence=2).fit(records)


class TestSearchPipeline:
    def test_solr_identity_pipeline(self, small_engine):
        response = small_engine.search("unemployment", rank="solr", expand="none", k=10)
        expected = small_engine.index_.search(["unemployment"], k=10)
        assert [r["doc_id"] for r in response["results"]] == [r.doc_id for r in expected]
        assert [r["baseline_score"] for r in response["results"]] == [
            r.baseline_score for r in expected
        ]
        assert all(r["model"] == "SOLR" for r in response["results"])
        assert all(r["rerank_score"] is None for r in response["results"])

    def test_brad_includes_journal_panel(self, small_engine):
        response = small_engine.search("unemployment", rank="brad", k=10)
        assert response["brad_mode"] == "weighted"
        panel = response["journals"]
        assert panel[0]["issn"] == "1111-1111"
        assert panel[0]["count"] == 2
        assert panel[0]["zone"] == 1
        assert all(r["model"] == "BRAD" for r in response["results"])
        # ISSN-less doc trails
        assert response["results"][-1]["doc_id"] == "d5"

    def test_auth_includes_author_panel_and_coverage(self, small_engine):
        response = small_engine.search("unemployment", rank="auth", k=10)
        authors = response["authors"]
        assert authors[0]["author"] == "brandt, a."  # bridges keller and fischer
        assert authors[0]["betweenness"] == 1.0
        assert {"author", "betweenness", "degree", "publication_count"} <= set(authors[0])
        assert 0.0 <= response["coverage"] <= 1.0
        assert all(r["model"] == "AUTH" for r in response["results"])

    def test_auth_on_single_author_corpus_keeps_baseline_order(self):
        records = [
            make_record("s1", "quark research alpha", authors=["Solo, A."]),
            make_record("s2", "quark research beta quark", authors=["Solo, B."]),
            make_record("s3", "quark gamma", authors=["Solo, C."]),
            make_record("s4", "unrelated filler", authors=["Solo, D."]),
        ]
        engine = SearchEngine().fit(records)
        baseline = engine.search("quark", rank="solr", k=10)["results"]
        reranked = engine.search("quark", rank="auth", k=10)["results"]
        assert [r["doc_id"] for r in reranked] == [r["doc_id"] for r in baseline]
        assert all(r["rerank_score"] == 0.0 for r in reranked)

    def test_expansion_reported_and_model_str(self, small_engine):
        response = small_engine.search("unemployment", rank="solr", expand="str", k=10)
        assert response["expansion_terms"]
        names = [e["controlled_term"] for e in response["expansion_terms"]]
        assert "Labor Market" in names
        assert set(response["expansion_terms"][0]) == {"controlled_term", "score", "n_ab"}
        assert all(r["model"] == "STR" for r in response["results"])
        assert "labor" in response["expanded_query_terms"]

    def test_expansion_widens_or_keeps_result_set(self, small_engine):
        plain = {r["doc_id"] for r in small_engine.search("unemployment", k=10)["results"]}
        expanded = {
            r["doc_id"]
            for r in small_engine.search("unemployment", expand="str", k=10)["results"]
        }
        assert plain <= expanded

    def test_brad_and_auth_share_candidate_set(self, small_engine):
        brad = small_engine.search("unemployment", rank="brad", k=10)["results"]
        auth = small_engine.search("unemployment", rank="auth", k=10)["results"]
        assert {r["doc_id"] for r in brad} == {r["doc_id"] for r in auth}

    def test_invalid_enum_rejected(self, small_engine):
        with pytest.raises(ValueError, match="rank"):
            small_engine.search("unemployment", rank="pagerank")
        with pytest.raises(ValueError, match="expand"):
            small_engine.search("unemployment", expand="wordnet")
        with pytest.raises(ValueError, match="brad_mode"):
            small_engine.search("unemployment", rank="brad", brad_mode="softmax")
        with pytest.raises(ValueError, match="k"):
            small_engine.search("unemployment", k=0)

    def test_empty_query_rejected(self, small_engine):
        with pytest.raises(QueryError, match="empty query"):
            small_engine.search("of the in")

    def test_unfitted_engine_rejected(self):
        with pytest.raises(NotFittedError):
            SearchEngine().search("unemployment")

    def test_k_truncates_after_rerank(self, small_engine):
        response = small_engine.search("unemployment", rank="brad", k=2)
        assert len(response["results"]) == 2
        assert [r["rank"] for r in response["results"]] == [1, 2]


class TestSuggest:
    def test_payload_shape(self, small_engine):
        suggestions = small_engine.suggest("unemployment", m=4)
        assert suggestions
        assert set(suggestions[0]) == {"controlled_term", "score", "n_ab"}

    def test_unknown_term(self, small_engine):
        assert small_engine.suggest("zzzunknown") == []

    def test_raw_term_is_tokenized(self, small_engine):
        assert small_engine.suggest("UNEMPLOYMENT!") == small_engine.suggest("unemployment")


class TestDeterminism:
    def test_rebuilt_engine_identical_rankings(self, demo_records, demo_topics):
        a = SearchEngine().fit(demo_records)
        b = SearchEngine().fit(demo_records)
        for topic in demo_topics[:2]:
            for kwargs in (
                {"rank": "solr"},
                {"rank": "solr", "expand": "str"},
                {"rank": "brad"},
                {"rank": "auth"},
            ):
                ra = a.search(topic.query, k=10, **kwargs)["results"]
                rb = b.search(topic.query, k=10, **kwargs)["results"]
                assert [r["doc_id"] for r in ra] == [r["doc_id"] for r in rb]


class TestRunServices:
    def test_all_services_all_topics(self, demo_engine, demo_topics):
        results = demo_engine.run_services(demo_topics, k=10)
        assert set(results) == {"SOLR", "STR", "BRAD", "AUTH"}
        for per_topic in results.values():
            assert set(per_topic) == {t.id for t in demo_topics}
            for ranked in per_topic.values():
                assert len(ranked) == 10
                assert [r.rank for r in ranked] == list(range(1, 11))


class TestPersistence:
    def test_save_load_round_trip(self, small_engine, tmp_path):
        path = tmp_path / "engine.snapshot"
        small_engine.save(path)
        loaded = SearchEngine.load(path)
        for kwargs in ({"rank": "solr"}, {"rank": "brad"}, {"rank": "auth"}):
            original = small_engine.search("unemployment", k=10, **kwargs)
            restored = loaded.search("unemployment", k=10, **kwargs)
            assert original == restored

    def test_magic_header_checked(self, tmp_path):
        path = tmp_path / "bogus.snapshot"
        path.write_bytes(b"something else entirely")
        with pytest.raises(ValueError, match="not a recognized engine snapshot"):
            SearchEngine.load(path)

    def test_header_present_in_file(self, small_engine, tmp_path):
        path = tmp_path / "engine.snapshot"
        small_engine.save(path)
        assert path.read_bytes().startswith(b"stratagem-engine-snapshot:1\n")


class TestEstimatorShape:
    def test_get_params_round_trip(self):
        engine = SearchEngine(candidate_depth=50, expansion_size=2)
        params = engine.get_params()
        assert params["candidate_depth"] == 50
        clone = SearchEngine(**params)
        assert clone.get_params() == params

    def test_edge_list_export(self, small_engine):
        graph = small_engine.corpus_graph_ or None
        results = small_engine.search_results("unemployment", rank="auth", k=10)
        from stratagem import build_graph

        graph = build_graph([small_engine.records_by_id_[r.doc_id] for r in results])
        exported = small_engine.export_edge_list(graph)
        assert "brandt, a.\tfischer, c.\t1" in exported.splitlines()
