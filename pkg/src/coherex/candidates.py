"""Candidate phrase generation, normalization, and labeling.

A candidate is any window of one to three consecutive words that does not
cross a punctuation boundary and neither starts nor ends with a stopword.
Candidates are merged per document by their normalized (lowercased, stemmed)
key.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import ContractViolation
from .stopwords import DEFAULT_STOPWORDS
from .text import Document, stem

# Matching key used everywhere: tuple of lowercased stems, length 1-3.
PhraseKey = tuple[str, ...]

MAX_PHRASE_WORDS = 3


@dataclass
class CandidatePhrase:
    key: PhraseKey
    surface_forms: dict[str, int] = field(default_factory=dict)
    term_frequency: int = 0
    first_occurrence_word_index: int = -1
    label: bool | None = None

    def add_occurrence(self, surface: str, word_index: int) -> None:
        self.surface_forms[surface] = self.surface_forms.get(surface, 0) + 1
        self.term_frequency += 1
        if self.first_occurrence_word_index < 0:
            self.first_occurrence_word_index = word_index

    @property
    def preferred_surface(self) -> str:
        """Most frequent surface form; ties go to the first-occurring one."""
        best, best_count = None, 0
        for surface, count in self.surface_forms.items():
            if count > best_count:
                best, best_count = surface, count
        return best


def normalize(
    surface_phrase: str, stemmer: Callable[[str], str] = stem
) -> PhraseKey:
    """Lowercase and stem each word of a 1-3 word phrase."""
    words = surface_phrase.split()
    if not 1 <= len(words) <= MAX_PHRASE_WORDS:
        raise ContractViolation(
            f"phrase must have 1-{MAX_PHRASE_WORDS} words: {surface_phrase!r}"
        )
    return tuple(stemmer(w) for w in words)


def generate_candidates(
    doc: Document,
    stopwords: frozenset[str] = DEFAULT_STOPWORDS,
    stemmer: Callable[[str], str] = stem,
) -> list[CandidatePhrase]:
    """Enumerate all valid 1-3 word windows and merge them by normalized key.

    Windows may not contain an internal punctuation boundary; the first and
    last surface words may not be stopwords (interior stopwords are allowed).
    Result ordering follows first occurrence in the document.
    """
    tokens = doc.tokens
    by_key: dict[PhraseKey, CandidatePhrase] = {}
    for start in range(len(tokens)):
        if tokens[start].surface.lower() in stopwords:
            continue
        for length in range(1, MAX_PHRASE_WORDS + 1):
            end = start + length  # exclusive
            if end > len(tokens):
                break
            if length > 1 and tokens[end - 1].boundary_before:
                break  # longer windows cross the same boundary
            last = tokens[end - 1]
            if last.surface.lower() in stopwords:
                continue
            surface = " ".join(t.surface for t in tokens[start:end])
            key = tuple(stemmer(t.surface) for t in tokens[start:end])
            cand = by_key.get(key)
            if cand is None:
                cand = by_key[key] = CandidatePhrase(key)
            cand.add_occurrence(surface, start)
    return list(by_key.values())


def label_candidates(
    cands: Iterable[CandidatePhrase],
    author_keyphrases: Iterable[str],
    stemmer: Callable[[str], str] = stem,
) -> list[CandidatePhrase]:
    """Mark each candidate true iff its key matches a normalized author
    keyphrase. Author phrases longer than three words can match nothing;
    they are skipped (tracked by count_unmatchable)."""
    gold = {
        normalize(phrase, stemmer)
        for phrase in author_keyphrases
        if 1 <= len(phrase.split()) <= MAX_PHRASE_WORDS
    }
    cands = list(cands)
    for cand in cands:
        cand.label = cand.key in gold
    return cands


def count_unmatchable(author_keyphrases: Iterable[str]) -> int:
    """Diagnostic: author keyphrases too long (or empty) to match any candidate."""
    return sum(
        1
        for phrase in author_keyphrases
        if not 1 <= len(phrase.split()) <= MAX_PHRASE_WORDS
    )
