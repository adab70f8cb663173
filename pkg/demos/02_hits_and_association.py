"""Demonstrate the local hits oracle and the two association scores.

Builds a page index over the demo corpus, issues a few phrase / NEAR / AND
queries by hand, then computes the lowercase-NEAR and capitalized-AND
association ratios between phrase pairs — the raw material of the
second-pass coherence features. A HitCache shows the query budget.
"""

from _demo_corpus import build_demo_corpus

from coherex.hits import (
    HitCache,
    HitQuery,
    build_index,
    hits,
    score_cap,
    score_low,
)

corpus = build_demo_corpus()
index = build_index(corpus)
print(f"indexed {len(index.pages)} pages, {len(index.postings)} distinct words")
print()

queries = [
    HitQuery("SINGLE", ("neural", "networks")),
    HitQuery("SINGLE", ("gradient",)),
    HitQuery("NEAR", ("neural", "networks"), "low", ("gradient", "descent"), "low"),
    HitQuery("AND", ("Neural", "Networks"), "cap", ("gradient",), "low"),
]
for q in queries:
    print(f"hits[{q.canonical()}] = {hits(index, q)}")
print()

pairs = [
    (("neural", "networks"), ("gradient", "descent")),
    (("neural", "networks"), ("posting", "lists")),
    (("query", "expansion"), ("relevance", "feedback")),
]
cache = HitCache()
print(f"{'phrase i':<18} {'phrase j':<20} {'score_low':>9} {'score_cap':>9}")
for pi, pj in pairs:
    lo = score_low(index, pi, pj, cache)
    cp = score_cap(index, pi, pj, cache)
    print(f"{' '.join(pi):<18} {' '.join(pj):<20} {lo:>9.3f} {cp:>9.3f}")
print()
print(f"distinct queries issued through the cache: {cache.queries_issued}")
