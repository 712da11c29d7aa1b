"""Command-line interface.

Workflow: ``ingest`` validates a corpus into the state directory, ``build``
constructs the engine snapshot (index plus co-word model), and the remaining
subcommands (``search``, ``suggest``, ``pool``, ``eval``, ``serve``) operate
on that snapshot. All JSON output is emitted with sorted keys so identical
inputs produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import shutil
import sys
from pathlib import Path

from .engine import SearchEngine
from .evaluation import JudgmentStore, build_report, load_judgments, load_topics, pool
from .indexing import QueryError
from .records import CorpusError, load_corpus

CORPUS_FILE = "corpus.jsonl"
SNAPSHOT_FILE = "engine.snapshot"


def _state_dir(args) -> Path:
    return Path(args.state)


def _dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def _load_engine(args) -> SearchEngine:
    snapshot = _state_dir(args) / SNAPSHOT_FILE
    if not snapshot.exists():
        raise SystemExit(
            f"error: no engine snapshot at {snapshot}; run 'ingest' and 'build' first"
        )
    return SearchEngine.load(snapshot)


def cmd_ingest(args) -> int:
    records = load_corpus(args.corpus)
    state = _state_dir(args)
    state.mkdir(parents=True, exist_ok=True)
    shutil.copyfile(args.corpus, state / CORPUS_FILE)
    print(f"ingested {len(records)} records into {state / CORPUS_FILE}")
    return 0


def cmd_build(args) -> int:
    state = _state_dir(args)
    corpus = state / CORPUS_FILE
    if not corpus.exists():
        raise SystemExit(f"error: no ingested corpus at {corpus}; run 'ingest' first")
    records = load_corpus(corpus)
    engine = SearchEngine(
        candidate_depth=args.candidate_depth,
        expansion_size=args.expansion_size,
        min_cooccurrence=args.min_cooccurrence,
        author_scope=args.author_scope,
    ).fit(records)
    engine.save(state / SNAPSHOT_FILE)
    print(
        f"built index over {engine.doc_count} docs "
        f"({len(engine.coword_.associations_)} expandable terms) -> {state / SNAPSHOT_FILE}"
    )
    return 0


def cmd_search(args) -> int:
    engine = _load_engine(args)
    response = engine.search(
        args.q, rank=args.rank, expand=args.expand, brad_mode=args.brad_mode, k=args.k
    )
    print(_dump(response))
    return 0


def cmd_suggest(args) -> int:
    engine = _load_engine(args)
    suggestions = engine.suggest(args.term, m=args.m)
    print(_dump({"term": args.term, "suggestions": suggestions}))
    return 0


def cmd_pool(args) -> int:
    engine = _load_engine(args)
    topics = load_topics(args.topics)
    service_results = engine.run_services(topics, k=args.k)
    pools = []
    for topic in topics:
        per_topic = {s: service_results[s][topic.id] for s in service_results}
        doc_ids = pool(topic, per_topic, k=args.k, seed=args.seed)
        pools.append(
            {
                "topic_id": topic.id,
                "query": topic.query,
                "pool_size": len(doc_ids),
                "doc_ids": doc_ids,
            }
        )
    payload = {"k": args.k, "seed": args.seed, "pools": pools}
    output = _dump(payload)
    if args.out:
        Path(args.out).write_text(output + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(output)
    return 0


def cmd_eval(args) -> int:
    engine = _load_engine(args)
    topics = load_topics(args.topics)
    judgments = load_judgments(args.judgments) if args.judgments else []
    service_results = engine.run_services(topics, k=args.k)
    report = build_report(topics, service_results, judgments, k=args.k, seed=args.seed)
    Path(args.out).write_text(_dump(report) + "\n", encoding="utf-8")
    overlap = report["overlap"]
    print(
        f"wrote {args.out}: {report['topic_count']} topics, "
        f"{report['total_judgments']} judgments, "
        f"{overlap['total_off_diagonal']} top-{args.k} intersections"
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    engine = _load_engine(args)
    topics = load_topics(args.topics) if args.topics else []
    store = JudgmentStore(args.judgments or _state_dir(args) / "judgments.jsonl")
    app = create_app(engine, topics=topics, judgment_store=store, pool_seed=args.pool_seed)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stratagem",
        description="Scholarly search engine with term suggestion, journal and author re-ranking.",
    )
    parser.add_argument(
        "--state",
        default=".stratagem",
        help="state directory holding the ingested corpus and engine snapshot",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="validate a corpus file and stage it")
    p_ingest.add_argument("corpus", help="newline-delimited JSON corpus file")
    p_ingest.set_defaults(func=cmd_ingest)

    p_build = sub.add_parser("build", help="build the index and co-word model")
    p_build.add_argument("--min-cooccurrence", type=int, default=2)
    p_build.add_argument("--candidate-depth", type=int, default=200)
    p_build.add_argument("--expansion-size", type=int, default=4)
    p_build.add_argument("--author-scope", choices=("results", "corpus"), default="results")
    p_build.set_defaults(func=cmd_build)

    p_search = sub.add_parser("search", help="run a query through the pipeline")
    p_search.add_argument("--q", required=True, help="query text")
    p_search.add_argument("--rank", choices=("solr", "brad", "auth"), default="solr")
    p_search.add_argument("--expand", choices=("none", "str"), default="none")
    p_search.add_argument("--brad-mode", choices=("weighted", "pure"), default="weighted")
    p_search.add_argument("--k", type=int, default=10)
    p_search.set_defaults(func=cmd_search)

    p_suggest = sub.add_parser("suggest", help="suggest controlled terms for a query term")
    p_suggest.add_argument("--term", required=True)
    p_suggest.add_argument("-m", type=int, default=4)
    p_suggest.set_defaults(func=cmd_suggest)

    p_pool = sub.add_parser("pool", help="build assessment pools for topics")
    p_pool.add_argument("--topics", required=True, help="newline-delimited topics file")
    p_pool.add_argument("--k", type=int, default=10)
    p_pool.add_argument("--seed", type=int, default=0)
    p_pool.add_argument("--out", help="write pools to this file instead of stdout")
    p_pool.set_defaults(func=cmd_pool)

    p_eval = sub.add_parser("eval", help="compute the evaluation report")
    p_eval.add_argument("--judgments", help="newline-delimited judgments file")
    p_eval.add_argument("--topics", required=True)
    p_eval.add_argument("--out", required=True, help="report JSON output path")
    p_eval.add_argument("--k", type=int, default=10)
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.set_defaults(func=cmd_eval)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--topics", help="topics file for assessment endpoints")
    p_serve.add_argument("--judgments", help="judgment log path (created when missing)")
    p_serve.add_argument("--pool-seed", type=int, default=0)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, QueryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
