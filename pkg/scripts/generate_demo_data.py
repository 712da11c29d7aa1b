#!/usr/bin/env python3
"""Generate the bundled demo corpus and topics (deterministic, seed below).

Regenerating overwrites src/stratagem/data/demo_corpus.jsonl and
demo_topics.jsonl. The script validates the properties the test suite
relies on (journal power law, per-topic result depth, service divergence)
and fails loudly if a change breaks them.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
DATA_DIR = ROOT / "src" / "stratagem" / "data"

SEED = 20100612
N_DOCS = 500

FILLERS = [
    "analysis", "comparative", "data", "empirical", "europe", "evidence",
    "germany", "longitudinal", "panel", "perspectives", "policy", "regional",
    "social", "survey", "trends",
]

THEMES = {
    "labor": {
        "terms": ["unemployment", "labor", "market", "employment", "wage",
                  "jobless", "workforce", "vacancy", "occupational", "earnings"],
        "descriptors": ["Labor Market", "Unemployment", "Employment Policy"],
    },
    "migration": {
        "terms": ["migration", "migrant", "immigration", "refugee", "asylum",
                  "integration", "diaspora", "mobility", "citizenship"],
        "descriptors": ["Migration", "Social Integration", "Ethnic Minorities"],
    },
    "education": {
        "terms": ["education", "school", "student", "curriculum", "literacy",
                  "teacher", "university", "inequality", "attainment"],
        "descriptors": ["Education", "Educational Inequality", "School System"],
    },
    "family": {
        "terms": ["family", "household", "marriage", "divorce", "parenting",
                  "childcare", "fertility", "kinship"],
        "descriptors": ["Family Policy", "Demography", "Gender Roles"],
    },
    "health": {
        "terms": ["health", "illness", "hospital", "patient", "epidemiology",
                  "prevention", "nursing", "wellbeing", "morbidity"],
        "descriptors": ["Public Health", "Health Care", "Medical Sociology"],
    },
    "urban": {
        "terms": ["city", "urban", "housing", "neighborhood", "infrastructure",
                  "transit", "segregation", "gentrification"],
        "descriptors": ["Urban Studies", "Housing"],
    },
    "media": {
        "terms": ["media", "newspaper", "television", "journalism", "audience",
                  "broadcasting", "discourse"],
        "descriptors": ["Mass Media", "Communication Research"],
    },
    "politics": {
        "terms": ["election", "voting", "party", "parliament", "campaign",
                  "democracy", "turnout", "coalition"],
        "descriptors": ["Political Participation", "Elections"],
    },
    "crime": {
        "terms": ["crime", "delinquency", "policing", "prison", "violence",
                  "justice", "recidivism"],
        "descriptors": ["Criminology", "Social Control"],
    },
    "religion": {
        "terms": ["religion", "church", "belief", "secularization", "ritual",
                  "congregation"],
        "descriptors": ["Sociology Of Religion"],
    },
    "aging": {
        "terms": ["aging", "elderly", "retirement", "pension", "longevity",
                  "care"],
        "descriptors": ["Gerontology", "Pension System"],
    },
    "environment": {
        "terms": ["climate", "environment", "sustainability", "pollution",
                  "energy", "consumption"],
        "descriptors": ["Environmental Sociology"],
    },
}

SURNAMES = [
    "Keller", "Brandt", "Fischer", "Weber", "Hofmann", "Schneider", "Vogel",
    "Krause", "Lehmann", "Richter", "Neumann", "Schwarz", "Zimmermann",
    "Braun", "Krueger", "Hartmann", "Lange", "Schmitt", "Werner", "Koehler",
    "Herrmann", "Walter", "Maier", "Beck", "Fuchs", "Peters", "Scholz",
    "Moeller", "Weiss", "Jung", "Hahn", "Schubert", "Vogt", "Friedrich",
    "Keller", "Guenther", "Frank", "Berger", "Winkler", "Roth", "Beckmann",
    "Lorenz", "Baumann", "Franke", "Albrecht", "Schuster", "Simon", "Ludwig",
    "Boehm", "Winter", "Kraus", "Martin", "Schumacher", "Kraemer", "Vetter",
    "Otto", "Sommer", "Seidel", "Heinrich", "Brunner", "Kaiser", "Schulte",
    "Dietrich", "Kuhn", "Engel", "Pohl", "Horn", "Busch", "Bergmann",
    "Thomas", "Voigt", "Sauer", "Arnold", "Wolff", "Pfeiffer",
]

INITIALS = "ABCDEFGHJKLMPRSTW"

TOPICS = [
    {
        "id": "t-labor",
        "title": "Unemployment and the labor market",
        "description": "Documents on joblessness, labor market dynamics and employment policy.",
        "query": "unemployment labor market",
    },
    {
        "id": "t-migration",
        "title": "Migration and integration",
        "description": "Documents on migration flows and the social integration of migrants.",
        "query": "migration integration",
    },
    {
        "id": "t-education",
        "title": "Educational inequality",
        "description": "Documents on schooling, attainment and educational inequality.",
        "query": "education inequality school",
    },
    {
        "id": "t-family",
        "title": "Family and fertility",
        "description": "Documents on family structures, childcare and fertility.",
        "query": "family fertility",
    },
    {
        "id": "t-health",
        "title": "Public health and prevention",
        "description": "Documents on health care provision and preventive medicine.",
        "query": "health prevention",
    },
]


def issn_for(number: int, rng: random.Random) -> str:
    head = f"{number:04d}"
    tail = f"{rng.randint(0, 999):03d}"
    check = rng.choice("0123456789X")
    return f"{head}-{tail}{check}"


def build_journals(rng: random.Random) -> tuple[dict, list]:
    theme_journals = {}
    counter = 1000
    for theme in THEMES:
        journals = []
        for level in ("Journal", "Review", "Bulletin"):
            journals.append(
                {
                    "issn": issn_for(counter, rng),
                    "title": f"{level} of {theme.capitalize()} Studies",
                }
            )
            counter += 1
        theme_journals[theme] = journals
    periphery = []
    for i in range(20):
        periphery.append(
            {"issn": issn_for(counter, rng), "title": f"Occasional Papers {i + 1}"}
        )
        counter += 1
    return theme_journals, periphery


def build_authors(rng: random.Random) -> tuple[dict, list]:
    pool = [
        f"{surname}, {rng.choice(INITIALS)}."
        for surname in SURNAMES
    ]
    rng.shuffle(pool)
    themes = list(THEMES)
    theme_authors = {
        theme: pool[i * 5 : i * 5 + 5] for i, theme in enumerate(themes)
    }
    bridges = pool[len(themes) * 5 : len(themes) * 5 + 8]
    return theme_authors, bridges


def make_doc(i, theme, rng, theme_journals, periphery, theme_authors, bridges):
    spec = THEMES[theme]
    title_terms = rng.sample(spec["terms"], k=min(3, len(spec["terms"])))
    title_words = title_terms + rng.sample(FILLERS, k=2)
    rng.shuffle(title_words)
    title = " ".join(title_words).capitalize()

    abstract_words = []
    for _ in range(rng.randint(18, 32)):
        bucket = rng.random()
        if bucket < 0.55:
            abstract_words.append(rng.choice(spec["terms"]))
        elif bucket < 0.85:
            abstract_words.append(rng.choice(FILLERS))
        else:
            other = rng.choice(list(THEMES))
            abstract_words.append(rng.choice(THEMES[other]["terms"]))
    abstract = " ".join(abstract_words)

    n_descriptors = rng.randint(1, min(3, len(spec["descriptors"])))
    descriptors = rng.sample(spec["descriptors"], k=n_descriptors)

    n_authors = rng.choices([1, 2, 3, 4], weights=[25, 35, 25, 15])[0]
    authors = rng.sample(theme_authors[theme], k=min(n_authors, len(theme_authors[theme])))
    if rng.random() < 0.22:
        bridge = rng.choice(bridges)
        if bridge not in authors:
            authors.append(bridge)

    journal = None
    bucket = rng.random()
    if bucket < 0.80:
        journal = rng.choices(theme_journals[theme], weights=[60, 25, 15])[0]
    elif bucket < 0.92:
        journal = rng.choice(periphery)

    doc = {
        "id": f"doc-{i:04d}",
        "title": title,
        "abstract": abstract,
        "controlled_terms": sorted(descriptors),
        "authors": authors,
        "issn": journal["issn"] if journal else None,
        "journal": journal["title"] if journal else None,
        "year": rng.randint(1990, 2010),
    }
    return doc


def generate():
    rng = random.Random(SEED)
    theme_journals, periphery = build_journals(rng)
    theme_authors, bridges = build_authors(rng)

    themes = list(THEMES)
    weights = [3 if t in ("labor", "migration", "education", "family", "health") else 1.4
               for t in themes]
    docs = []
    for i in range(N_DOCS):
        theme = rng.choices(themes, weights=weights)[0]
        docs.append(
            make_doc(i, theme, rng, theme_journals, periphery, theme_authors, bridges)
        )
    return docs


def validate(docs):
    sys.path.insert(0, str(ROOT / "src"))
    from stratagem import SearchEngine, load_corpus, zone_partition

    corpus_path = DATA_DIR / "demo_corpus.jsonl"
    records = load_corpus(corpus_path)
    assert len(records) == N_DOCS

    counts: dict[str, int] = {}
    for record in records:
        if record.journal_issn:
            counts[record.journal_issn] = counts.get(record.journal_issn, 0) + 1
    assert len(counts) >= 50, f"only {len(counts)} journals"

    zones, totals = zone_partition(counts)
    per_zone = [sum(1 for z in zones.values() if z == zone) for zone in (1, 2, 3)]
    total = sum(counts.values())
    target = -(-total // 3)
    biggest = max(counts.values())
    print(f"journals={len(counts)} T={total} target={target} totals={totals} per_zone={per_zone}")
    assert per_zone[0] < per_zone[1] < per_zone[2], "journals per zone must strictly increase"
    for zone_total in totals:
        assert abs(zone_total - target) <= biggest

    engine = SearchEngine().fit(records)
    diverged = 0
    for topic in TOPICS:
        lists = {}
        for service, kwargs in {
            "SOLR": {"rank": "solr", "expand": "none"},
            "STR": {"rank": "solr", "expand": "str"},
            "BRAD": {"rank": "brad", "expand": "none"},
            "AUTH": {"rank": "auth", "expand": "none"},
        }.items():
            rows = engine.search(topic["query"], k=10, **kwargs)["results"]
            assert len(rows) == 10, f"{topic['id']}/{service}: only {len(rows)} results"
            lists[service] = [r["doc_id"] for r in rows]
        if any(lists[s] != lists["SOLR"] for s in ("STR", "BRAD", "AUTH")):
            diverged += 1
        print(topic["id"], "str-suggestions:", [
            s["controlled_term"] for s in engine.search(topic["query"], expand="str", k=10).get("expansion_terms", [])
        ])
    print(f"topics where a re-ranked list differs from baseline: {diverged}/5")
    assert diverged >= 4


def main():
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    docs = generate()
    corpus_path = DATA_DIR / "demo_corpus.jsonl"
    with corpus_path.open("w", encoding="utf-8") as handle:
        for doc in docs:
            handle.write(json.dumps(doc, ensure_ascii=False, sort_keys=True) + "\n")
    topics_path = DATA_DIR / "demo_topics.jsonl"
    with topics_path.open("w", encoding="utf-8") as handle:
        for topic in TOPICS:
            handle.write(json.dumps(topic, ensure_ascii=False, sort_keys=True) + "\n")
    print(f"wrote {corpus_path} ({len(docs)} docs) and {topics_path} ({len(TOPICS)} topics)")
    validate(docs)


if __name__ == "__main__":
    main()
