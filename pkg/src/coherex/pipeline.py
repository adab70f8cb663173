"""End-to-end training and extraction for the four feature sets, plus model
persistence.

Feature sets:
  baseline  : TF*IDF + distance, one-pass
  keyfreq   : baseline + keyphrase frequency, one-pass
  coherence : two-pass, baseline first pass, 4+2K second-pass features
  merged    : two-pass, keyfreq first pass, 5+2K second-pass features
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import bayes
from .bayes import NaiveBayesModel
from .candidates import (
    CandidatePhrase,
    PhraseKey,
    generate_candidates,
    label_candidates,
)
from .coherence import (
    assemble,
    association_features,
    feature_names,
    first_pass,
    rank_candidates,
)
from .errors import ConfigurationError, ContractViolation, DataError, ModelFormatError
from .features import (
    CorpusStats,
    DiscretizationScheme,
    KeyfreqTable,
    build_corpus_stats,
    build_keyfreq_table,
    discretize,
    distance,
    fit_discretization,
    keyphrase_frequency,
    tfidf,
)
from .stopwords import load_stopwords
from .text import Corpus, Document, get_stemmer

MODEL_FORMAT_VERSION = 1

FEATURE_SETS = ("baseline", "keyfreq", "coherence", "merged")
TWO_PASS_SETS = ("coherence", "merged")


@dataclass
class ExtractorConfig:
    feature_set: str = "baseline"
    K: int = 4
    L: int = 100
    N_default: int = 5
    stemmer: str = "porter"
    stopword_list: str = "default"
    smoothing: float = 1.0
    hits_index_path: str | None = None
    keyfreq_corpus_path: str | None = None

    def validate(self) -> None:
        if self.feature_set not in FEATURE_SETS:
            raise ConfigurationError(
                f"unknown feature set {self.feature_set!r}; "
                f"choose one of {', '.join(FEATURE_SETS)}"
            )
        if self.K >= self.L:
            raise ConfigurationError(f"K must be < L (got K={self.K}, L={self.L})")
        if self.K < 1:
            raise ConfigurationError("K must be >= 1")
        if self.smoothing <= 0:
            raise ConfigurationError("smoothing must be > 0")
        if self.feature_set in TWO_PASS_SETS and not self.hits_index_path:
            raise ConfigurationError(
                f"feature set {self.feature_set!r} requires --hits-index"
            )

    @property
    def uses_keyfreq(self) -> bool:
        return self.feature_set in ("keyfreq", "merged")

    @property
    def two_pass(self) -> bool:
        return self.feature_set in TWO_PASS_SETS

    @property
    def first_pass_features(self) -> list[str]:
        if self.uses_keyfreq:
            return ["tfidf", "distance", "keyphrase_frequency"]
        return ["tfidf", "distance"]

    @property
    def second_pass_features(self) -> list[str] | None:
        if not self.two_pass:
            return None
        return feature_names(self.K, merged=self.feature_set == "merged")


@dataclass
class TrainedExtractor:
    config: ExtractorConfig
    corpus_stats: CorpusStats
    keyfreq_table: KeyfreqTable | None
    first_schemes: list[DiscretizationScheme]
    first_model: NaiveBayesModel
    second_schemes: list[DiscretizationScheme] | None = None
    second_model: NaiveBayesModel | None = None
    format_version: int = MODEL_FORMAT_VERSION


def _doc_candidates(doc: Document, config: ExtractorConfig, labeled: bool):
    stopwords = load_stopwords(config.stopword_list)
    stemmer = get_stemmer(config.stemmer)
    cands = generate_candidates(doc, stopwords, stemmer)
    if labeled:
        label_candidates(cands, doc.author_keyphrases or [], stemmer)
    return cands


def _base_vectors(
    cands: Sequence[CandidatePhrase],
    doc: Document,
    extractor_or_parts,
) -> dict[PhraseKey, list[float]]:
    """Continuous first-pass features per candidate key (TF*IDF first)."""
    config, stats, keyfreq_table = extractor_or_parts
    vectors = {}
    for cand in cands:
        vec = [tfidf(cand, doc, stats), distance(cand, doc)]
        if config.uses_keyfreq:
            vec.append(float(keyphrase_frequency(cand.key, keyfreq_table, doc.id)))
        vectors[cand.key] = vec
    return vectors


def train_extractor(
    train_corpus: Corpus,
    config: ExtractorConfig,
    hits_index=None,
    keyfreq_corpus: Corpus | None = None,
    cache=None,
) -> TrainedExtractor:
    """Build corpus statistics, fit discretizations, and train the model(s).

    For two-pass feature sets the first pass is run over every training
    document to produce the second-pass training vectors (top-L candidates
    only, mirroring extraction-time availability).
    """
    config.validate()
    if config.two_pass and hits_index is None:
        raise ConfigurationError(
            f"feature set {config.feature_set!r} requires a hits index"
        )
    for doc in train_corpus:
        if not doc.author_keyphrases:
            raise DataError(f"training document {doc.id!r} has no author keyphrases")

    stopwords = load_stopwords(config.stopword_list)
    stemmer = get_stemmer(config.stemmer)
    per_doc_cands = {
        doc.id: _doc_candidates(doc, config, labeled=True) for doc in train_corpus
    }
    stats = build_corpus_stats(
        {doc_id: [c.key for c in cands] for doc_id, cands in per_doc_cands.items()}
    )

    keyfreq_table = None
    if config.uses_keyfreq:
        keyfreq_table = build_keyfreq_table(keyfreq_corpus or train_corpus, stemmer)

    parts = (config, stats, keyfreq_table)
    doc_by_id = {doc.id: doc for doc in train_corpus}
    base_vec_by_doc = {
        doc_id: _base_vectors(cands, doc_by_id[doc_id], parts)
        for doc_id, cands in per_doc_cands.items()
    }

    # First-pass model: discretize each feature over all training candidates.
    first_names = config.first_pass_features
    columns = [[] for _ in first_names]
    labels = []
    for doc_id, cands in per_doc_cands.items():
        for cand in cands:
            vec = base_vec_by_doc[doc_id][cand.key]
            for f, v in enumerate(vec):
                columns[f].append(v)
            labels.append(bool(cand.label))
    first_schemes = [
        fit_discretization(col, labels, name)
        for name, col in zip(first_names, columns)
    ]
    first_vectors = [
        [discretize(columns[f][i], first_schemes[f]) for f in range(len(first_names))]
        for i in range(len(labels))
    ]
    first_model = bayes.train(
        first_vectors,
        labels,
        first_names,
        [s.interval_count for s in first_schemes],
        config.smoothing,
    )

    extractor = TrainedExtractor(
        config, stats, keyfreq_table, first_schemes, first_model
    )
    if not config.two_pass:
        return extractor

    # Second pass: assemble coherence vectors for each training document.
    merged = config.feature_set == "merged"
    second_names = config.second_pass_features
    second_rows: list[list[float]] = []
    second_labels: list[bool] = []
    for doc_id in sorted(per_doc_cands):
        cands = per_doc_cands[doc_id]
        if not cands:
            continue
        base_vectors = base_vec_by_doc[doc_id]
        ranking = first_pass(
            cands, base_vectors, first_model, first_schemes, config.K, config.L
        )
        association = association_features(ranking, hits_index, cache)
        keyfreq_values = None
        if merged:
            keyfreq_values = {
                cand.key: keyphrase_frequency(cand.key, keyfreq_table, doc_id)
                for cand, _ in ranking.ranked
            }
        rows = assemble(ranking, base_vectors, association, merged, keyfreq_values)
        second_rows.extend(rows)
        second_labels.extend(bool(cand.label) for cand, _ in ranking.ranked)

    if not second_rows:
        raise DataError("no second-pass training vectors could be produced")
    second_schemes = [
        fit_discretization([row[f] for row in second_rows], second_labels, name)
        for f, name in enumerate(second_names)
    ]
    second_vectors = [
        [discretize(v, s) for v, s in zip(row, second_schemes)]
        for row in second_rows
    ]
    extractor.second_schemes = second_schemes
    extractor.second_model = bayes.train(
        second_vectors,
        second_labels,
        second_names,
        [s.interval_count for s in second_schemes],
        config.smoothing,
    )
    return extractor


def score_document(
    extractor: TrainedExtractor,
    doc: Document,
    hits_index=None,
    cache=None,
) -> list[tuple[CandidatePhrase, float]]:
    """All scoreable candidates of a document, ranked. For two-pass sets only
    the top-L first-pass candidates are scoreable."""
    config = extractor.config
    cands = _doc_candidates(doc, config, labeled=False)
    if not cands:
        return []
    parts = (config, extractor.corpus_stats, extractor.keyfreq_table)
    base_vectors = _base_vectors(cands, doc, parts)

    if not config.two_pass:
        probs = []
        tfidfs = []
        for cand in cands:
            vec = base_vectors[cand.key]
            x = [discretize(v, s) for v, s in zip(vec, extractor.first_schemes)]
            probs.append(bayes.posterior(extractor.first_model, x))
            tfidfs.append(vec[0])
        return rank_candidates(cands, probs, tfidfs)

    if hits_index is None:
        raise ConfigurationError(
            f"feature set {config.feature_set!r} requires a hits index at extraction"
        )
    ranking = first_pass(
        cands,
        base_vectors,
        extractor.first_model,
        extractor.first_schemes,
        config.K,
        config.L,
    )
    association = association_features(ranking, hits_index, cache)
    merged = config.feature_set == "merged"
    keyfreq_values = None
    if merged:
        keyfreq_values = {
            cand.key: keyphrase_frequency(cand.key, extractor.keyfreq_table, doc.id)
            for cand, _ in ranking.ranked
        }
    rows = assemble(ranking, base_vectors, association, merged, keyfreq_values)
    top_cands = [cand for cand, _ in ranking.ranked]
    probs = []
    for row in rows:
        x = [discretize(v, s) for v, s in zip(row, extractor.second_schemes)]
        probs.append(bayes.posterior(extractor.second_model, x))
    tfidfs = [base_vectors[c.key][0] for c in top_cands]
    return rank_candidates(top_cands, probs, tfidfs)


def extract_keyphrases(
    extractor: TrainedExtractor,
    doc: Document,
    N: int | None = None,
    hits_index=None,
    cache=None,
) -> list[tuple[str, float]]:
    """Top-N (surface phrase, probability) pairs for a document."""
    if N is None:
        N = extractor.config.N_default
    if N < 1:
        raise ContractViolation("N must be >= 1")
    ranked = score_document(extractor, doc, hits_index, cache)
    return [(cand.preferred_surface, prob) for cand, prob in ranked[:N]]


# ---------------------------------------------------------------------------
# Persistence (single JSON artifact, versioned)


def _key_to_str(key: PhraseKey) -> str:
    return " ".join(key)


def _str_to_key(s: str) -> PhraseKey:
    return tuple(s.split(" "))


def _model_to_dict(model: NaiveBayesModel) -> dict:
    return {
        "feature_names": list(model.feature_names),
        "interval_counts": list(model.interval_counts),
        "class_counts": list(model.class_counts),
        "conditional_counts": model.conditional_counts,
        "smoothing": model.smoothing,
    }


def _model_from_dict(d: dict) -> NaiveBayesModel:
    return NaiveBayesModel(
        tuple(d["feature_names"]),
        tuple(d["interval_counts"]),
        list(d["class_counts"]),
        [[list(row) for row in feat] for feat in d["conditional_counts"]],
        d["smoothing"],
    )


def _schemes_to_list(schemes) -> list:
    return [
        {"feature_name": s.feature_name, "cut_points": list(s.cut_points)}
        for s in schemes
    ]


def _schemes_from_list(entries) -> list[DiscretizationScheme]:
    return [
        DiscretizationScheme(e["feature_name"], tuple(e["cut_points"]))
        for e in entries
    ]


def save_model(extractor: TrainedExtractor, path: str | Path) -> None:
    payload = {
        "format_version": extractor.format_version,
        "config": {
            "feature_set": extractor.config.feature_set,
            "K": extractor.config.K,
            "L": extractor.config.L,
            "N_default": extractor.config.N_default,
            "stemmer": extractor.config.stemmer,
            "stopword_list": extractor.config.stopword_list,
            "smoothing": extractor.config.smoothing,
            "hits_index_path": extractor.config.hits_index_path,
            "keyfreq_corpus_path": extractor.config.keyfreq_corpus_path,
        },
        "corpus_stats": {
            "document_count": extractor.corpus_stats.document_count,
            "doc_frequency": {
                _key_to_str(k): v
                for k, v in extractor.corpus_stats.doc_frequency.items()
            },
            "doc_ids": sorted(extractor.corpus_stats.doc_ids),
        },
        "keyfreq_table": (
            None
            if extractor.keyfreq_table is None
            else {
                _key_to_str(k): dict(sorted(per_doc.items()))
                for k, per_doc in extractor.keyfreq_table.counts.items()
            }
        ),
        "first_schemes": _schemes_to_list(extractor.first_schemes),
        "first_model": _model_to_dict(extractor.first_model),
        "second_schemes": (
            None
            if extractor.second_schemes is None
            else _schemes_to_list(extractor.second_schemes)
        ),
        "second_model": (
            None
            if extractor.second_model is None
            else _model_to_dict(extractor.second_model)
        ),
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True), "utf-8")


def load_model(path: str | Path) -> TrainedExtractor:
    path = Path(path)
    if not path.is_file():
        raise DataError(f"model file not found: {path}")
    try:
        payload = json.loads(path.read_text("utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ModelFormatError(f"corrupt model file {path}: {exc}") from exc
    version = payload.get("format_version")
    if not isinstance(version, int) or version > MODEL_FORMAT_VERSION:
        raise ModelFormatError(
            f"model {path} has unsupported format version {version!r} "
            f"(this build reads <= {MODEL_FORMAT_VERSION})"
        )
    try:
        config = ExtractorConfig(**payload["config"])
        stats_d = payload["corpus_stats"]
        stats = CorpusStats(
            stats_d["document_count"],
            {_str_to_key(k): v for k, v in stats_d["doc_frequency"].items()},
            frozenset(stats_d["doc_ids"]),
        )
        keyfreq_table = None
        if payload["keyfreq_table"] is not None:
            keyfreq_table = KeyfreqTable(
                {
                    _str_to_key(k): dict(per_doc)
                    for k, per_doc in payload["keyfreq_table"].items()
                }
            )
        extractor = TrainedExtractor(
            config,
            stats,
            keyfreq_table,
            _schemes_from_list(payload["first_schemes"]),
            _model_from_dict(payload["first_model"]),
            format_version=version,
        )
        if payload["second_schemes"] is not None:
            extractor.second_schemes = _schemes_from_list(payload["second_schemes"])
        if payload["second_model"] is not None:
            extractor.second_model = _model_from_dict(payload["second_model"])
    except (KeyError, TypeError) as exc:
        raise ModelFormatError(f"corrupt model file {path}: {exc}") from exc
    return extractor
