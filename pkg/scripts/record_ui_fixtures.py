#!/usr/bin/env python3
"""Record gateway responses as JSON fixtures for the frontend contract tests.

Runs the real engine over the bundled demo corpus and captures the exact
payloads the HTTP service returns, so UI tests assert against genuine
gateway output rather than hand-written mocks.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

ROOT = Path(__file__).resolve().parents[1]
DATA_DIR = ROOT / "src" / "stratagem" / "data"
FIXTURE_DIR = ROOT / "frontend" / "tests" / "fixtures"


def main():
    import sys

    sys.path.insert(0, str(ROOT / "src"))
    from stratagem import JudgmentStore, SearchEngine, load_corpus, load_topics
    from stratagem.service import create_app

    import tempfile

    records = load_corpus(DATA_DIR / "demo_corpus.jsonl")
    topics = load_topics(DATA_DIR / "demo_topics.jsonl")
    engine = SearchEngine().fit(records)
    store = JudgmentStore(Path(tempfile.mkdtemp()) / "judgments.jsonl")
    client = TestClient(create_app(engine, topics=topics, judgment_store=store, pool_seed=7))

    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)

    def save(name: str, payload) -> None:
        path = FIXTURE_DIR / f"{name}.json"
        path.write_text(
            json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
        print(f"wrote {path.relative_to(ROOT)}")

    save("suggest_unemployment", client.get("/suggest", params={"term": "unemployment", "m": 4}).json())
    save("suggest_empty", client.get("/suggest", params={"term": "xylophone"}).json())

    query = "unemployment labor market"
    for rank in ("solr", "brad", "auth"):
        save(
            f"search_{rank}",
            client.get("/search", params={"q": query, "rank": rank, "k": 10}).json(),
        )
    save(
        "search_str",
        client.get("/search", params={"q": query, "expand": "str", "k": 10}).json(),
    )

    save("topics", client.get("/topics").json())
    save("pool_t_labor", client.get("/pool", params={"topic": "t-labor", "seed": 7}).json())

    body = {"topic_id": "t-labor", "doc_id": "doc-0378", "rater_id": "rater-1", "relevant": 1}
    save("assessment_new", client.post("/assessments", json=body).json())
    body["relevant"] = 0
    save("assessment_updated", client.post("/assessments", json=body).json())

    save(
        "error_empty_query",
        client.get("/search", params={"q": "of the"}).json(),
    )


if __name__ == "__main__":
    main()
