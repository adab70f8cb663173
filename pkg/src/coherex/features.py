"""Base numeric features and MDL discretization.

Features: TF*IDF (base-2 log, document frequency
counted with the input document included), distance of the first occurrence,
and leave-current-document-out keyphrase frequency. Continuous values are
discretized with Fayyad-Irani recursive entropy partitioning under the MDL
stopping criterion.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .candidates import CandidatePhrase, PhraseKey, generate_candidates
from .errors import ContractViolation
from .text import Corpus, Document


@dataclass
class CorpusStats:
    document_count: int
    doc_frequency: dict[PhraseKey, int]
    doc_ids: frozenset[str] = frozenset()


@dataclass
class KeyfreqTable:
    # per-phrase, per-document author-keyphrase occurrence counts
    counts: dict[PhraseKey, dict[str, int]] = field(default_factory=dict)


def build_corpus_stats(
    per_doc_keys: Mapping[str, Iterable[PhraseKey]]
) -> CorpusStats:
    """Document frequencies from a mapping of document id to its phrase keys."""
    df: dict[PhraseKey, int] = {}
    for keys in per_doc_keys.values():
        for key in set(keys):
            df[key] = df.get(key, 0) + 1
    return CorpusStats(len(per_doc_keys), df, frozenset(per_doc_keys))


def corpus_stats_from_corpus(corpus: Corpus, **cand_kwargs) -> CorpusStats:
    per_doc = {
        doc.id: [c.key for c in generate_candidates(doc, **cand_kwargs)]
        for doc in corpus
    }
    return build_corpus_stats(per_doc)


def build_keyfreq_table(corpus: Corpus, stemmer=None) -> KeyfreqTable:
    from .candidates import normalize
    from .text import stem as default_stem

    stemmer = stemmer or default_stem
    table = KeyfreqTable()
    for doc in corpus:
        for phrase in doc.author_keyphrases or []:
            words = phrase.split()
            if not 1 <= len(words) <= 3:
                continue
            key = normalize(phrase, stemmer)
            per_doc = table.counts.setdefault(key, {})
            per_doc[doc.id] = per_doc.get(doc.id, 0) + 1
    return table


def tfidf(cand: CandidatePhrase, doc: Document, stats: CorpusStats) -> float:
    """(tf / doc length) * -log2(df' / N'), with df' and N' counting the
    input document (so the log argument is never 0)."""
    if doc.word_count == 0:
        raise ContractViolation("tfidf undefined for an empty document")
    df = stats.doc_frequency.get(cand.key, 0)
    n = stats.document_count
    if doc.id not in stats.doc_ids:
        df += 1
        n += 1
    tf = cand.term_frequency / doc.word_count
    return tf * -math.log2(df / n)


def distance(cand: CandidatePhrase, doc: Document) -> float:
    """Fraction of the document preceding the phrase's first occurrence."""
    if doc.word_count == 0:
        raise ContractViolation("distance undefined for an empty document")
    return cand.first_occurrence_word_index / doc.word_count


def keyphrase_frequency(
    key: PhraseKey, table: KeyfreqTable, current_doc_id: str
) -> int:
    """Author-keyphrase uses of `key` across the table, excluding the
    current document."""
    per_doc = table.counts.get(key)
    if not per_doc:
        return 0
    return sum(c for d, c in per_doc.items() if d != current_doc_id)


# ---------------------------------------------------------------------------
# Fayyad-Irani MDL discretization


@dataclass(frozen=True)
class DiscretizationScheme:
    feature_name: str
    cut_points: tuple[float, ...]

    @property
    def interval_count(self) -> int:
        return len(self.cut_points) + 1


def discretize(value: float, scheme: DiscretizationScheme) -> int:
    """Index of the half-open interval (cut[i-1], cut[i]] containing value."""
    return bisect_left(scheme.cut_points, value)


def _entropy(pos: int, neg: int) -> float:
    total = pos + neg
    if total == 0 or pos == 0 or neg == 0:
        return 0.0
    pp, pn = pos / total, neg / total
    return -pp * math.log2(pp) - pn * math.log2(pn)


def _group_by_value(pairs: Sequence[tuple[float, bool]]):
    """(value, pos_count, neg_count) per distinct value, ascending."""
    groups = []
    for value, label in pairs:
        if groups and groups[-1][0] == value:
            _, p, n = groups[-1]
            groups[-1] = (value, p + int(label), n + int(not label))
        else:
            groups.append((value, int(label), int(not label)))
    return groups


def _split_recursive(
    pairs: Sequence[tuple[float, bool]], cuts: list[float]
) -> None:
    n = len(pairs)
    groups = _group_by_value(pairs)
    if len(groups) < 2:
        return
    total_pos = sum(g[1] for g in groups)
    total_neg = sum(g[2] for g in groups)
    parent_ent = _entropy(total_pos, total_neg)

    best = None  # (gain, cut, split_index, left_pos, left_neg)
    left_pos = left_neg = 0
    split_index = 0
    for (v1, p1, n1), (v2, p2, n2) in zip(groups, groups[1:]):
        left_pos += p1
        left_neg += n1
        split_index += p1 + n1
        # boundary candidate only where adjacent class distributions differ
        if p1 * (p2 + n2) == p2 * (p1 + n1):
            continue
        right_pos = total_pos - left_pos
        right_neg = total_neg - left_neg
        n_left = left_pos + left_neg
        n_right = right_pos + right_neg
        gain = parent_ent - (
            n_left / n * _entropy(left_pos, left_neg)
            + n_right / n * _entropy(right_pos, right_neg)
        )
        cut = (v1 + v2) / 2.0
        if best is None or gain > best[0]:
            best = (gain, cut, split_index, left_pos, left_neg)

    if best is None:
        return
    gain, cut, split_index, left_pos, left_neg = best
    right_pos = total_pos - left_pos
    right_neg = total_neg - left_neg

    k = int(total_pos > 0) + int(total_neg > 0)
    k1 = int(left_pos > 0) + int(left_neg > 0)
    k2 = int(right_pos > 0) + int(right_neg > 0)
    delta = math.log2(3**k - 2) - (
        k * parent_ent
        - k1 * _entropy(left_pos, left_neg)
        - k2 * _entropy(right_pos, right_neg)
    )
    threshold = (math.log2(n - 1) + delta) / n
    if gain <= threshold:
        return

    cuts.append(cut)
    _split_recursive(pairs[:split_index], cuts)
    _split_recursive(pairs[split_index:], cuts)


def fit_discretization(
    values: Sequence[float],
    labels: Sequence[bool],
    feature_name: str = "",
) -> DiscretizationScheme:
    """Recursive entropy-minimizing binary splits, accepted only when the
    information gain beats the MDL criterion. Split candidates are midpoints
    between adjacent distinct values with differing class distributions;
    gain ties break toward the smaller cut."""
    if len(values) != len(labels):
        raise ContractViolation("values and labels must have equal length")
    if not values:
        raise ContractViolation("cannot fit a discretization on no values")
    pairs = sorted(zip(values, map(bool, labels)), key=lambda p: p[0])
    cuts: list[float] = []
    _split_recursive(pairs, cuts)
    return DiscretizationScheme(feature_name, tuple(sorted(cuts)))
