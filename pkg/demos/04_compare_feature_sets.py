"""Compare the baseline and coherence feature sets end to end.

Trains both extractors on one half of the demo corpus, evaluates on the
other half, and prints the mean-correct performance curves plus the paired
t-test between the two feature sets at a few values of N.
"""

from _demo_corpus import build_demo_corpus

from coherex import Corpus, ExtractorConfig, train_extractor
from coherex.evaluation import compare_feature_sets
from coherex.hits import HitCache, build_index

corpus = build_demo_corpus(n_docs=16)
half = len(corpus.documents) // 2
train = Corpus(corpus.documents[:half], "demo-train")
test = Corpus(corpus.documents[half:], "demo-test")

index = build_index(train)
cache = HitCache()

models = {
    "baseline": train_extractor(train, ExtractorConfig("baseline")),
    "coherence": train_extractor(
        train,
        ExtractorConfig("coherence", K=3, L=30, hits_index_path="in-memory"),
        hits_index=index,
        cache=cache,
    ),
}

report = compare_feature_sets(
    test,
    models,
    n_max=8,
    hits_indexes={"coherence": index},
    cache=cache,
)

print(f"mean correct keyphrases per document on {report.corpus_name}")
print("N".rjust(9) + "".join(f"{n:>8}" for n in range(1, report.n_max + 1)))
for name, curve in report.curves.items():
    print(f"{name:>9}" + "".join(f"{v:>8.3f}" for v in curve))
print()

for test_result in report.tests:
    a, b = test_result.pair
    print(f"paired t-test, {a} vs {b} (alpha={report.alpha})")
    for n in (1, 4, 8):
        t = test_result.t_values[n - 1]
        p = test_result.p_values[n - 1]
        sig = "significant" if test_result.significant[n - 1] else "not significant"
        print(f"  N={n}: t={t:+.3f}, p={p:.3f} ({sig})")
print()
print(f"hit queries issued across training and evaluation: {cache.queries_issued}")
