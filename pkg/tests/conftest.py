"""Shared fixtures: small deterministic corpora on disk and in memory."""

from __future__ import annotations

import random

import pytest

from coherex.text import Corpus, Document, tokenize


def make_doc(doc_id: str, body: str, keyphrases=None) -> Document:
    return Document(doc_id, tokenize(body), keyphrases)


def write_corpus(directory, docs):
    """docs: list of (id, body, keyphrases-or-None). Returns the directory."""
    directory.mkdir(parents=True, exist_ok=True)
    for doc_id, body, keyphrases in docs:
        (directory / f"{doc_id}.txt").write_text(body, "utf-8")
        if keyphrases is not None:
            (directory / f"{doc_id}.key").write_text(
                "\n".join(keyphrases) + "\n", "utf-8"
            )
    return directory


FILLER = [
    "system", "result", "value", "method", "process", "model", "number",
    "figure", "table", "section", "example", "problem", "case", "form",
    "order", "point", "part", "level", "group", "work",
]


def planted_corpus(n_docs: int, seed: int = 0, plants_per_doc: int = 3):
    """Documents whose planted keyphrases dominate on TF*IDF and position.

    Each planted phrase is a two-word phrase unique to its document,
    repeated eight times at the front, separated by periods. Its constituent
    words also show up as singletons in four other documents, so the phrase
    beats its own constituents on IDF. Common filler and a little rare late
    noise follow.
    """
    rng = random.Random(seed)
    docs = []
    for d in range(n_docs):
        plants = [f"gadget{d}x{p} widget{d}x{p}" for p in range(plants_per_doc)]
        parts = []
        for phrase in plants:
            parts.extend([phrase + "."] * 8)
        filler = [rng.choice(FILLER) for _ in range(120)]
        parts.append(" ".join(filler) + ".")
        # constituents of other documents' plants, isolated by periods so
        # they never form phrases; offsets chosen so a contiguous half-split
        # still leaves every constituent with df >= 2 on either side
        for k in (1, 2, n_docs // 2 + 1, n_docs // 2 + 2):
            other = (d + k) % n_docs
            for p in range(plants_per_doc):
                parts.append(f"gadget{other}x{p}. widget{other}x{p}.")
        parts.append(f"oddity{d} rarity{d}.")
        body = " ".join(parts)
        docs.append((f"doc{d:03d}", body, plants))
    return docs


@pytest.fixture
def tiny_corpus() -> Corpus:
    docs = [
        make_doc(
            "ml",
            "Machine learning improves machine translation. "
            "Neural networks drive machine learning research.",
            ["machine learning", "neural networks"],
        ),
        make_doc(
            "ir",
            "Information retrieval systems rank documents. "
            "Search engines use information retrieval.",
            ["information retrieval", "search engines"],
        ),
        make_doc(
            "db",
            "Database indexes speed up query processing. "
            "Query processing relies on database indexes.",
            ["database indexes", "query processing"],
        ),
    ]
    return Corpus(docs, "tiny")
