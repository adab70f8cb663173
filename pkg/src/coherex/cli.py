"""coherex command-line interface.

Subcommands: index-hits, train, extract, evaluate, compare,
dump-candidates, dump-features. Exit codes: 0 success, 2 configuration
error, 3 data error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .candidates import generate_candidates, label_candidates
from .errors import ConfigurationError, ContractViolation, DataError
from .evaluation import compare_feature_sets, evaluate_extractor, performance_curve
from .hits import HitCache, build_index, load_index, save_index
from .pipeline import (
    ExtractorConfig,
    extract_keyphrases,
    load_model,
    save_model,
    score_document,
    train_extractor,
)
from .stopwords import load_stopwords
from .text import Document, get_stemmer, load_corpus, read_keyphrase_file, tokenize

log = logging.getLogger("coherex")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3

CACHE_ENV = "COHEREX_CACHE"
CACHE_FILENAME = "hits_cache.tsv"


def _open_cache() -> tuple[HitCache, Path | None]:
    cache_dir = os.environ.get(CACHE_ENV)
    if not cache_dir:
        return HitCache(), None
    path = Path(cache_dir) / CACHE_FILENAME
    if path.is_file():
        return HitCache.load(path), path
    Path(cache_dir).mkdir(parents=True, exist_ok=True)
    return HitCache(), path


def _maybe_save_cache(cache: HitCache, path: Path | None) -> None:
    if path is not None:
        cache.save(path)


def _load_doc(path: str) -> Document:
    file = Path(path)
    if not file.is_file():
        raise DataError(f"document not found: {file}")
    doc = Document(file.stem, tokenize(file.read_text("utf-8")))
    sidecar = file.with_suffix(".key")
    if sidecar.is_file():
        doc.author_keyphrases = read_keyphrase_file(sidecar)
    return doc


def _resolve_hits_index(extractor, override: str | None):
    path = override or extractor.config.hits_index_path
    if extractor.config.two_pass:
        if not path:
            raise ConfigurationError(
                "this model needs a hits index; pass --hits-index"
            )
        return load_index(path)
    return None


def _log_config(config: ExtractorConfig) -> None:
    log.info(
        "feature_set=%s K=%d L=%d stemmer=%s stopwords=%s smoothing=%g",
        config.feature_set, config.K, config.L,
        config.stemmer, config.stopword_list, config.smoothing,
    )


def cmd_index_hits(args) -> int:
    corpus = load_corpus(args.corpus)
    index = build_index(corpus)
    path = save_index(index, args.out)
    log.info("indexed %d pages -> %s", len(index.pages), path)
    return EXIT_OK


def cmd_train(args) -> int:
    config = ExtractorConfig(
        feature_set=args.feature_set,
        K=args.K,
        L=args.L,
        stemmer=args.stemmer,
        stopword_list=args.stopwords,
        smoothing=args.smoothing,
        hits_index_path=args.hits_index,
        keyfreq_corpus_path=args.keyfreq_corpus,
    )
    config.validate()
    _log_config(config)
    corpus = load_corpus(args.corpus)
    hits_index = load_index(args.hits_index) if args.hits_index else None
    keyfreq_corpus = (
        load_corpus(args.keyfreq_corpus) if args.keyfreq_corpus else None
    )
    cache, cache_path = _open_cache()
    extractor = train_extractor(corpus, config, hits_index, keyfreq_corpus, cache)
    save_model(extractor, args.output)
    _maybe_save_cache(cache, cache_path)
    log.info("model written to %s", args.output)
    return EXIT_OK


def cmd_extract(args) -> int:
    extractor = load_model(args.model)
    _log_config(extractor.config)
    doc = _load_doc(args.doc)
    hits_index = _resolve_hits_index(extractor, args.hits_index)
    cache, cache_path = _open_cache()
    results = extract_keyphrases(extractor, doc, args.n, hits_index, cache)
    _maybe_save_cache(cache, cache_path)
    for phrase, prob in results:
        print(f"{phrase}\t{prob:.6f}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    extractor = load_model(args.model)
    _log_config(extractor.config)
    corpus = load_corpus(args.corpus)
    hits_index = _resolve_hits_index(extractor, args.hits_index)
    cache, cache_path = _open_cache()
    results = evaluate_extractor(
        corpus, extractor, args.n_max, hits_index, cache, jobs=args.jobs
    )
    _maybe_save_cache(cache, cache_path)
    curve = performance_curve(results, args.n_max)
    rows = [("N", "mean_matches")] + [
        (str(n), f"{curve[n - 1]:.4f}") for n in range(1, args.n_max + 1)
    ]
    print(_format_rows(rows, args.format))
    return EXIT_OK


def cmd_compare(args) -> int:
    model_paths = [p for p in args.models.split(",") if p]
    if len(model_paths) < 2:
        raise ConfigurationError("compare needs at least two --models paths")
    corpus = load_corpus(args.corpus)
    cache, cache_path = _open_cache()
    models = {}
    hits_indexes = {}
    for path in model_paths:
        extractor = load_model(path)
        name = extractor.config.feature_set
        if name in models:  # disambiguate duplicate feature sets by filename
            name = f"{name}:{Path(path).stem}"
        models[name] = extractor
        index = _resolve_hits_index(extractor, args.hits_index)
        if index is not None:
            hits_indexes[name] = index
    report = compare_feature_sets(
        corpus, models, args.n_max, hits_indexes, cache, jobs=args.jobs
    )
    _maybe_save_cache(cache, cache_path)

    if args.format == "json":
        print(json.dumps({
            "corpus": report.corpus_name,
            "curves": report.curves,
            "tests": [
                {
                    "pair": list(t.pair),
                    "t": t.t_values,
                    "p": t.p_values,
                    "significant": t.significant,
                }
                for t in report.tests
            ],
        }, sort_keys=True))
        return EXIT_OK

    names = list(report.curves)
    curve_rows = [tuple(["N"] + names)]
    for n in range(1, report.n_max + 1):
        curve_rows.append(
            tuple([str(n)] + [f"{report.curves[m][n - 1]:.4f}" for m in names])
        )
    print(_format_rows(curve_rows, args.format))
    print()
    sig_rows = [("pair", "N", "t", "p", "significant")]
    for test in report.tests:
        for n in range(1, report.n_max + 1):
            sig_rows.append((
                f"{test.pair[0]} vs {test.pair[1]}",
                str(n),
                f"{test.t_values[n - 1]:.4f}",
                f"{test.p_values[n - 1]:.6f}",
                str(test.significant[n - 1]).lower(),
            ))
    print(_format_rows(sig_rows, args.format))
    return EXIT_OK


def cmd_dump_candidates(args) -> int:
    doc = _load_doc(args.doc)
    stopwords = load_stopwords(args.stopwords)
    stemmer = get_stemmer(args.stemmer)
    cands = generate_candidates(doc, stopwords, stemmer)
    if doc.author_keyphrases:
        label_candidates(cands, doc.author_keyphrases, stemmer)
    for cand in cands:
        label = "" if cand.label is None else str(cand.label).lower()
        print(
            f"{' '.join(cand.key)}\t{cand.term_frequency}"
            f"\t{cand.first_occurrence_word_index}\t{label}"
        )
    return EXIT_OK


def cmd_dump_features(args) -> int:
    extractor = load_model(args.model)
    doc = _load_doc(args.doc)
    hits_index = _resolve_hits_index(extractor, args.hits_index)
    cache, cache_path = _open_cache()
    matrix = _feature_matrix(extractor, doc, hits_index, cache)
    _maybe_save_cache(cache, cache_path)
    names, rows = matrix
    print("\t".join(["phrase"] + names))
    for key, vec in rows:
        print("\t".join([" ".join(key)] + [f"{v:.6g}" for v in vec]))
    return EXIT_OK


def _feature_matrix(extractor, doc, hits_index, cache):
    from .coherence import assemble, association_features, first_pass
    from .features import keyphrase_frequency
    from .pipeline import _base_vectors, _doc_candidates

    config = extractor.config
    cands = _doc_candidates(doc, config, labeled=False)
    parts = (config, extractor.corpus_stats, extractor.keyfreq_table)
    base_vectors = _base_vectors(cands, doc, parts)
    if not config.two_pass:
        return config.first_pass_features, [
            (c.key, base_vectors[c.key]) for c in cands
        ]
    ranking = first_pass(
        cands, base_vectors, extractor.first_model, extractor.first_schemes,
        config.K, config.L,
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
    return config.second_pass_features, [
        (cand.key, row) for (cand, _), row in zip(ranking.ranked, rows)
    ]


def _format_rows(rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    return "\n".join("\t".join(row) for row in rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherex",
        description="Keyphrase extraction with naive Bayes and coherence features",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index-hits", help="build the hit-count index")
    p.add_argument("corpus", help="directory of .txt pages to index")
    p.add_argument("out", help="output directory for the index")
    p.set_defaults(func=cmd_index_hits)

    p = sub.add_parser("train", help="train an extractor")
    p.add_argument("--corpus", required=True)
    p.add_argument("--feature-set", required=True,
                   choices=["baseline", "keyfreq", "coherence", "merged"])
    p.add_argument("--keyfreq-corpus")
    p.add_argument("--hits-index")
    p.add_argument("--K", type=int, default=4)
    p.add_argument("--L", type=int, default=100)
    p.add_argument("--smoothing", type=float, default=1.0)
    p.add_argument("--stemmer", default="porter", choices=["porter", "none"])
    p.add_argument("--stopwords", default="default")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("extract", help="extract keyphrases from one document")
    p.add_argument("--model", required=True)
    p.add_argument("--doc", required=True)
    p.add_argument("-n", type=int, default=5)
    p.add_argument("--hits-index")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("evaluate", help="score a model against a labeled corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("-N", "--n-max", type=int, default=20)
    p.add_argument("--hits-index")
    p.add_argument("--format", default="tsv", choices=["csv", "tsv"])
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="compare several models on one corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--models", required=True,
                   help="comma-separated model file paths")
    p.add_argument("-N", "--n-max", type=int, default=20)
    p.add_argument("--hits-index")
    p.add_argument("--format", default="csv", choices=["csv", "tsv", "json"])
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("dump-candidates", help="debug: dump candidate phrases")
    p.add_argument("--doc", required=True)
    p.add_argument("--stemmer", default="porter", choices=["porter", "none"])
    p.add_argument("--stopwords", default="default")
    p.set_defaults(func=cmd_dump_candidates)

    p = sub.add_parser("dump-features", help="debug: dump the feature matrix")
    p.add_argument("--model", required=True)
    p.add_argument("--doc", required=True)
    p.add_argument("--hits-index")
    p.set_defaults(func=cmd_dump_features)

    for sp in sub.choices.values():
        sp.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (ConfigurationError, ContractViolation) as exc:
        print(f"coherex: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"coherex: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
