"""Evaluation protocol: match counting against author keyphrases,
mean-correct performance curves over N, and paired t-tests between
feature sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from scipy import stats as scipy_stats

from .candidates import MAX_PHRASE_WORDS, normalize
from .errors import ContractViolation
from .pipeline import TrainedExtractor, score_document
from .text import Corpus, stem


@dataclass
class DocResult:
    doc_id: str
    extracted: list[str]  # top N_max phrases, in rank order
    match_counts: list[int]  # index i = matches within the top i+1


@dataclass
class PairwiseTest:
    pair: tuple[str, str]
    t_values: list[float]  # per N in 1..N_max
    p_values: list[float]
    significant: list[bool]  # two-sided, at the configured alpha


@dataclass
class EvalReport:
    corpus_name: str
    n_max: int
    curves: dict[str, list[float]]  # feature set -> mean correct per N
    tests: list[PairwiseTest]
    alpha: float = 0.05


def count_matches(
    extracted: Sequence[str],
    authors: Sequence[str],
    stemmer: Callable[[str], str] = stem,
) -> int:
    """Extracted phrases whose normalized key equals a normalized author
    keyphrase; each author keyphrase matches at most once."""
    available: dict[tuple, int] = {}
    for phrase in authors:
        if 1 <= len(phrase.split()) <= MAX_PHRASE_WORDS:
            key = normalize(phrase, stemmer)
            available[key] = available.get(key, 0) + 1
    matches = 0
    for phrase in extracted:
        words = phrase.split()
        if not 1 <= len(words) <= MAX_PHRASE_WORDS:
            continue
        key = normalize(phrase, stemmer)
        if available.get(key, 0) > 0:
            available[key] -= 1
            matches += 1
    return matches


def evaluate_document(
    doc_id: str,
    extracted: Sequence[str],
    authors: Sequence[str],
    n_max: int,
    stemmer: Callable[[str], str] = stem,
) -> DocResult:
    counts = [
        count_matches(extracted[:n], authors, stemmer)
        for n in range(1, n_max + 1)
    ]
    return DocResult(doc_id, list(extracted[:n_max]), counts)


def performance_curve(results: Sequence[DocResult], n_max: int) -> list[float]:
    """Mean match count over documents, per N in 1..n_max."""
    if not results:
        raise ContractViolation("performance_curve needs at least one result")
    return [
        sum(r.match_counts[n - 1] for r in results) / len(results)
        for n in range(1, n_max + 1)
    ]


def paired_t_test(a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    """Paired t on the differences a-b; two-sided p with n-1 df.

    Degenerate cases: all differences zero -> (0, 1); zero variance with a
    nonzero mean -> (signed infinity, 0)."""
    if len(a) != len(b):
        raise ContractViolation("paired samples must have equal length")
    n = len(a)
    if n < 2:
        raise ContractViolation("paired t-test needs at least two pairs")
    diffs = [x - y for x, y in zip(a, b)]
    mean = sum(diffs) / n
    var = sum((d - mean) ** 2 for d in diffs) / (n - 1)
    if var == 0.0:
        if mean == 0.0:
            return 0.0, 1.0
        return math.copysign(math.inf, mean), 0.0
    t = mean / math.sqrt(var / n)
    p = 2.0 * scipy_stats.t.sf(abs(t), n - 1)
    return t, p


def evaluate_extractor(
    corpus: Corpus,
    extractor: TrainedExtractor,
    n_max: int = 20,
    hits_index=None,
    cache=None,
    jobs: int = 1,
) -> list[DocResult]:
    """Extract from every document and score against its author keyphrases."""
    docs = list(corpus)
    for doc in docs:
        if not doc.author_keyphrases:
            raise ContractViolation(
                f"document {doc.id!r} has no author keyphrases to evaluate against"
            )

    def one(doc):
        ranked = score_document(extractor, doc, hits_index, cache)
        extracted = [cand.preferred_surface for cand, _ in ranked[:n_max]]
        return evaluate_document(doc.id, extracted, doc.author_keyphrases, n_max)

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, docs))
    return [one(doc) for doc in docs]


def compare_feature_sets(
    corpus: Corpus,
    models: Mapping[str, TrainedExtractor],
    n_max: int = 20,
    hits_indexes: Mapping[str, object] | None = None,
    cache=None,
    alpha: float = 0.05,
    jobs: int = 1,
) -> EvalReport:
    """Curves for every model plus all pairwise t-tests per N."""
    per_model: dict[str, list[DocResult]] = {}
    for name, extractor in models.items():
        index = (hits_indexes or {}).get(name)
        per_model[name] = evaluate_extractor(
            corpus, extractor, n_max, index, cache, jobs
        )
    curves = {
        name: performance_curve(results, n_max)
        for name, results in per_model.items()
    }
    names = list(models)
    tests = []
    for i, name_a in enumerate(names):
        for name_b in names[i + 1 :]:
            t_vals, p_vals, sig = [], [], []
            for n in range(1, n_max + 1):
                t, p = paired_t_test(
                    [r.match_counts[n - 1] for r in per_model[name_a]],
                    [r.match_counts[n - 1] for r in per_model[name_b]],
                )
                t_vals.append(t)
                p_vals.append(p)
                sig.append(p < alpha)
            tests.append(PairwiseTest((name_a, name_b), t_vals, p_vals, sig))
    return EvalReport(corpus.name, n_max, curves, tests, alpha)
