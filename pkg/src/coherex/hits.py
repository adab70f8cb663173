"""Local hit-count oracle: a case-preserving positional index answering
phrase, NEAR, and AND queries, plus the hit-ratio association scores.

The hit unit is pages (documents), mirroring web-search hit counts. NEAR
matches a page when the two phrases occur with start positions within ten
words of each other, in either order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import ContractViolation, DataError, ModelFormatError
from .text import Corpus

NEAR_WINDOW = 10

INDEX_FORMAT_VERSION = 1
INDEX_FILENAME = "hits_index.json"

LOW, CAP = "low", "cap"


def render_low(words: Sequence[str]) -> tuple[str, ...]:
    return tuple(w.lower() for w in words)


def render_cap(words: Sequence[str]) -> tuple[str, ...]:
    """First character of each word uppercased, the rest lowercased."""
    return tuple(w[:1].upper() + w[1:].lower() for w in words)


@dataclass(frozen=True)
class HitQuery:
    operator: str  # SINGLE | NEAR | AND
    left: tuple[str, ...]
    left_mode: str = LOW
    right: tuple[str, ...] | None = None
    right_mode: str = LOW

    def __post_init__(self):
        if self.operator not in ("SINGLE", "NEAR", "AND"):
            raise ContractViolation(f"unknown operator: {self.operator}")
        if (self.right is None) != (self.operator == "SINGLE"):
            raise ContractViolation("right phrase required iff operator is binary")

    def canonical(self) -> str:
        parts = [self.operator, self.left_mode, " ".join(self.left)]
        if self.right is not None:
            parts += [self.right_mode, " ".join(self.right)]
        return "\t".join(parts)


@dataclass
class Page:
    id: str
    words: tuple[str, ...]


@dataclass
class HitsIndex:
    pages: list[Page]
    postings: dict[str, list[tuple[int, int]]]  # casefolded word -> (page, pos)
    built_from: str = ""


def build_index(corpus: Corpus) -> HitsIndex:
    """Index every document of the corpus as one page."""
    if len(corpus) == 0:
        raise DataError("cannot build a hits index from an empty corpus")
    pages = []
    postings: dict[str, list[tuple[int, int]]] = {}
    for doc in corpus:
        page_i = len(pages)
        words = tuple(t.surface for t in doc.tokens)
        pages.append(Page(doc.id, words))
        for pos, word in enumerate(words):
            postings.setdefault(word.lower(), []).append((page_i, pos))
    return HitsIndex(pages, postings, built_from=corpus.name)


def _phrase_starts(index: HitsIndex, phrase: Sequence[str], mode: str):
    """Start positions of the phrase per page: dict page -> sorted positions."""
    if not phrase:
        return {}
    rendered = render_low(phrase) if mode == LOW else render_cap(phrase)
    first = rendered[0].lower()
    starts: dict[int, list[int]] = {}
    for page_i, pos in index.postings.get(first, ()):
        words = index.pages[page_i].words
        if pos + len(rendered) > len(words):
            continue
        window = words[pos : pos + len(rendered)]
        if mode == LOW:
            ok = tuple(w.lower() for w in window) == rendered
        else:
            ok = window == rendered
        if ok:
            starts.setdefault(page_i, []).append(pos)
    return starts


def hits(index: HitsIndex, q: HitQuery) -> int:
    """Number of pages matching the query."""
    left = _phrase_starts(index, q.left, q.left_mode)
    if q.operator == "SINGLE":
        return len(left)
    right = _phrase_starts(index, q.right, q.right_mode)
    common = left.keys() & right.keys()
    if q.operator == "AND":
        return len(common)
    # NEAR: start-to-start distance <= 10 in either order
    count = 0
    for page_i in common:
        a, b = left[page_i], right[page_i]
        if any(abs(x - y) <= NEAR_WINDOW for x in a for y in b):
            count += 1
    return count


class HitCache:
    """Memoizes hit counts by canonical query text and counts distinct
    index evaluations (the 'issued query' budget)."""

    def __init__(self):
        self._counts: dict[str, int] = {}
        self.queries_issued = 0

    def hits(self, index: HitsIndex, q: HitQuery) -> int:
        key = q.canonical()
        if key not in self._counts:
            self._counts[key] = hits(index, q)
            self.queries_issued += 1
        return self._counts[key]

    def reset_counter(self) -> None:
        self.queries_issued = 0

    def save(self, path: str | Path) -> None:
        lines = [
            f"{query}\t{count}"
            for query, count in sorted(self._counts.items())
        ]
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), "utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "HitCache":
        cache = cls()
        for line in Path(path).read_text("utf-8").splitlines():
            if not line:
                continue
            query, _, count = line.rpartition("\t")
            cache._counts[query] = int(count)
        return cache


def cached_hits(cache: HitCache | None, index: HitsIndex, q: HitQuery) -> int:
    if cache is None:
        return hits(index, q)
    return cache.hits(index, q)


def score_low(
    index: HitsIndex,
    phrase_i: Sequence[str],
    phrase_j: Sequence[str],
    cache: HitCache | None = None,
) -> float:
    """hits(low_i NEAR low_j) / hits(low_i); 0 when the denominator is 0."""
    low_i = render_low(phrase_i)
    low_j = render_low(phrase_j)
    denom = cached_hits(cache, index, HitQuery("SINGLE", low_i, LOW))
    if denom == 0:
        return 0.0
    near = cached_hits(cache, index, HitQuery("NEAR", low_i, LOW, low_j, LOW))
    return near / denom


def score_cap(
    index: HitsIndex,
    phrase_i: Sequence[str],
    phrase_j: Sequence[str],
    cache: HitCache | None = None,
) -> float:
    """hits(cap_i AND low_j) / hits(cap_i); 0 when the denominator is 0."""
    cap_i = render_cap(phrase_i)
    low_j = render_low(phrase_j)
    denom = cached_hits(cache, index, HitQuery("SINGLE", cap_i, CAP))
    if denom == 0:
        return 0.0
    both = cached_hits(cache, index, HitQuery("AND", cap_i, CAP, low_j, LOW))
    return both / denom


# ---------------------------------------------------------------------------
# Persistence: pages only, postings rebuilt deterministically on load.


def save_index(index: HitsIndex, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    payload = {
        "format_version": INDEX_FORMAT_VERSION,
        "built_from": index.built_from,
        "pages": [{"id": p.id, "words": list(p.words)} for p in index.pages],
    }
    path = directory / INDEX_FILENAME
    path.write_text(json.dumps(payload, sort_keys=True), "utf-8")
    return path


def load_index(directory: str | Path) -> HitsIndex:
    path = Path(directory) / INDEX_FILENAME
    if not path.is_file():
        raise DataError(f"hits index not found: {path}")
    try:
        payload = json.loads(path.read_text("utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ModelFormatError(f"corrupt hits index {path}: {exc}") from exc
    version = payload.get("format_version")
    if not isinstance(version, int) or version > INDEX_FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported hits index version {version!r} in {path}"
        )
    pages = []
    postings: dict[str, list[tuple[int, int]]] = {}
    for page_i, entry in enumerate(payload["pages"]):
        words = tuple(entry["words"])
        pages.append(Page(entry["id"], words))
        for pos, word in enumerate(words):
            postings.setdefault(word.lower(), []).append((page_i, pos))
    return HitsIndex(pages, postings, built_from=payload.get("built_from", ""))
