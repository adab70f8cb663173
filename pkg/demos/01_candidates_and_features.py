"""Walk through candidate generation and the base features on one document.

Shows how a raw text becomes word tokens, how 1-3 word windows turn into
stem-keyed candidate phrases, and what the TF*IDF and distance features
look like for each candidate.
"""

from _demo_corpus import build_demo_corpus

from coherex import generate_candidates
from coherex.features import corpus_stats_from_corpus, distance, tfidf

corpus = build_demo_corpus()
doc = corpus.documents[0]

print(f"document {doc.id}: {doc.word_count} words")
print("first tokens:", " ".join(t.surface for t in doc.tokens[:12]), "...")
print()

cands = generate_candidates(doc)
print(f"{len(cands)} candidate phrases (stem-keyed, merged across occurrences)")
print()

stats = corpus_stats_from_corpus(corpus)
rows = sorted(cands, key=lambda c: -tfidf(c, doc, stats))[:10]

print(f"{'phrase':<24} {'tf':>3} {'tfidf':>8} {'distance':>9}")
for cand in rows:
    print(
        f"{cand.preferred_surface:<24} {cand.term_frequency:>3} "
        f"{tfidf(cand, doc, stats):>8.4f} {distance(cand, doc):>9.4f}"
    )
