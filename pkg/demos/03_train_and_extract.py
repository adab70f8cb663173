"""Train a baseline extractor, extract keyphrases, and round-trip the model.

Splits the demo corpus in half, trains the two-feature (TF*IDF + distance)
naive Bayes extractor on the first half, extracts from an unseen document,
then saves and reloads the model to show byte-identical persistence.
"""

import tempfile
from pathlib import Path

from _demo_corpus import build_demo_corpus

from coherex import (
    Corpus,
    ExtractorConfig,
    extract_keyphrases,
    load_model,
    save_model,
    train_extractor,
)

corpus = build_demo_corpus(n_docs=8)
train_docs = corpus.documents[:4]
test_doc = corpus.documents[5]

extractor = train_extractor(Corpus(train_docs, "demo-train"), ExtractorConfig("baseline"))

print(f"trained on {len(train_docs)} documents")
print(
    "fitted discretization intervals:",
    {s.feature_name: s.interval_count for s in extractor.first_schemes},
)
print()

print(f"top phrases for unseen document {test_doc.id}")
print(f"(author keyphrases: {test_doc.author_keyphrases})")
for phrase, prob in extract_keyphrases(extractor, test_doc, N=5):
    print(f"  {prob:.4f}  {phrase}")
print()

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "model.json"
    save_model(extractor, path)
    first_bytes = path.read_bytes()
    reloaded = load_model(path)
    save_model(reloaded, path)
    assert path.read_bytes() == first_bytes
    print(f"model round-trips byte-identically ({len(first_bytes)} bytes)")
