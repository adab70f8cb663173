"""Shared synthetic corpus builder for the demo scripts.

Each document discusses one "topic" bigram that appears several times near
the start, followed by common filler vocabulary; the topic phrase and one
secondary phrase form the author keyphrase list. The constituent words of
every topic also show up alone in a few other documents so the IDF part of
TF*IDF has something to discriminate on.
"""

from __future__ import annotations

import random

from coherex import Corpus, Document, tokenize

TOPICS = [
    ("neural networks", "gradient descent"),
    ("query expansion", "relevance feedback"),
    ("index compression", "posting lists"),
    ("spectral clustering", "graph partitions"),
    ("cache coherence", "memory hierarchy"),
    ("branch prediction", "pipeline stalls"),
    ("type inference", "lambda calculus"),
    ("garbage collection", "heap fragmentation"),
]

FILLER = (
    "the system we describe here considers a number of general approaches "
    "and reports results for each experimental condition in turn . the "
    "method is simple to apply and the measurements are easy to repeat ."
).split()


def build_demo_corpus(n_docs: int = 8, seed: int = 7) -> Corpus:
    rng = random.Random(seed)
    docs = []
    for d in range(n_docs):
        primary, secondary = TOPICS[d % len(TOPICS)]
        words = []
        for _ in range(5):
            words.append(f"{primary}.")
        for _ in range(3):
            words.append(f"{secondary}.")
        # sprinkle the constituents of two other topics as lone words
        for other in (TOPICS[(d + 1) % len(TOPICS)], TOPICS[(d + 3) % len(TOPICS)]):
            words.extend(w + "." for w in other[0].split())
        body_filler = [rng.choice(FILLER) for _ in range(120)]
        text = " ".join(words + body_filler)
        docs.append(
            Document(f"doc{d:02d}", tokenize(text), [primary, secondary])
        )
    return Corpus(docs, name="demo")
