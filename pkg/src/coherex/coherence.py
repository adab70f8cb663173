"""Two-pass coherence features.

The first pass ranks candidates with the base model; the top K ranked
phrases become anchors, and every top-L candidate gets 2K association
features (hit-ratio scores against each anchor, converted to per-document
percentiles) on top of its copied first-pass features.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .bayes import NaiveBayesModel, posterior
from .candidates import CandidatePhrase, PhraseKey
from .errors import ContractViolation
from .features import DiscretizationScheme, discretize
from .hits import HitCache, HitsIndex, score_cap, score_low


@dataclass
class FirstPassRanking:
    ranked: list[tuple[CandidatePhrase, float]]  # descending probability
    K: int
    L: int

    @property
    def anchors(self) -> list[tuple[CandidatePhrase, float]]:
        return self.ranked[: self.K]


def rank_candidates(
    cands: Sequence[CandidatePhrase],
    probabilities: Sequence[float],
    tfidf_values: Sequence[float],
) -> list[tuple[CandidatePhrase, float]]:
    """Sort descending by probability; ties break by higher TF*IDF, then
    earlier first occurrence, then lexicographic key."""
    order = sorted(
        range(len(cands)),
        key=lambda i: (
            -probabilities[i],
            -tfidf_values[i],
            cands[i].first_occurrence_word_index,
            cands[i].key,
        ),
    )
    return [(cands[i], probabilities[i]) for i in order]


def first_pass(
    cands: Sequence[CandidatePhrase],
    base_vectors: Mapping[PhraseKey, Sequence[float]],
    model: NaiveBayesModel,
    schemes: Sequence[DiscretizationScheme],
    K: int,
    L: int,
) -> FirstPassRanking:
    """Score all candidates with the base model, keep the top L, and take
    the top K as anchors. base_vectors holds the continuous base features
    per candidate key, with TF*IDF first."""
    if K >= L:
        raise ContractViolation(f"K must be < L (got K={K}, L={L})")
    probs = []
    tfidfs = []
    for cand in cands:
        vec = base_vectors[cand.key]
        x = [discretize(v, s) for v, s in zip(vec, schemes)]
        probs.append(posterior(model, x))
        tfidfs.append(vec[0])
    ranked = rank_candidates(cands, probs, tfidfs)[:L]
    return FirstPassRanking(ranked, K, L)


def percentile_rank(scores: Sequence[float]) -> list[float]:
    """Per-element percentile (strictly-smaller count / (n-1)); tied scores
    get the mean of their tied positions' percentiles. A single score is 1."""
    n = len(scores)
    if n == 0:
        raise ContractViolation("percentile_rank needs at least one score")
    if n == 1:
        return [1.0]
    order = sorted(range(n), key=lambda i: scores[i])
    result = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        mean_pct = (i + j) / 2.0 / (n - 1)
        for k in range(i, j + 1):
            result[order[k]] = mean_pct
        i = j + 1
    return result


def association_features(
    ranking: FirstPassRanking,
    index: HitsIndex,
    cache: HitCache | None = None,
) -> list[tuple[list[float], list[float]]]:
    """Per top-L candidate: (rank_low[1..K], rank_cap[1..K]) percentiles.

    Scores use the candidates' most frequent surface forms, lower/capitalized
    as required, never stemmed. Anchors are scored like any other candidate.
    """
    if not ranking.ranked:
        raise ContractViolation("association features need a non-empty ranking")
    surfaces = [cand.preferred_surface.split() for cand, _ in ranking.ranked]
    anchor_surfaces = [cand.preferred_surface.split() for cand, _ in ranking.anchors]
    n = len(surfaces)
    rank_low = [[] for _ in range(n)]
    rank_cap = [[] for _ in range(n)]
    for anchor in anchor_surfaces:
        lows = [score_low(index, s, anchor, cache) for s in surfaces]
        caps = [score_cap(index, s, anchor, cache) for s in surfaces]
        for i, pct in enumerate(percentile_rank(lows)):
            rank_low[i].append(pct)
        for i, pct in enumerate(percentile_rank(caps)):
            rank_cap[i].append(pct)
    return [(rank_low[i], rank_cap[i]) for i in range(n)]


def feature_names(K: int, merged: bool) -> list[str]:
    """Field order of the assembled vectors."""
    if merged:
        names = ["tfidf", "distance", "key_freq_rank", "key_freq_probability"]
    else:
        names = ["tfidf", "distance", "baseline_rank", "baseline_probability"]
    names += [f"rank_low_{j}" for j in range(1, K + 1)]
    names += [f"rank_cap_{j}" for j in range(1, K + 1)]
    if merged:
        names.append("keyphrase_frequency")
    return names


def assemble(
    ranking: FirstPassRanking,
    base_vectors: Mapping[PhraseKey, Sequence[float]],
    association: Sequence[tuple[Sequence[float], Sequence[float]]],
    merged: bool = False,
    keyfreq_values: Mapping[PhraseKey, int] | None = None,
) -> list[list[float]]:
    """Second-pass vectors in fixed field order: TF*IDF, distance, first-pass
    rank (1-based) and probability, rank_low[1..K], rank_cap[1..K], and for
    the merged set keyphrase_frequency appended."""
    if len(association) != len(ranking.ranked):
        raise ContractViolation("association/ranking length mismatch")
    if merged and keyfreq_values is None:
        raise ContractViolation("merged vectors need keyphrase frequencies")
    vectors = []
    for pos, ((cand, prob), (lows, caps)) in enumerate(
        zip(ranking.ranked, association), start=1
    ):
        base = base_vectors[cand.key]
        vec = [base[0], base[1], float(pos), prob]
        vec.extend(lows)
        vec.extend(caps)
        if merged:
            vec.append(float(keyfreq_values[cand.key]))
        vectors.append(vec)
    return vectors
