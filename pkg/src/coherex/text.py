"""Tokenization, stopword tests, stemming, and corpus ingestion."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .errors import ConfigurationError, DataError
from .porter import porter_stem
from .stopwords import DEFAULT_STOPWORDS

# A word is a maximal run of letters/digits, optionally joined by internal
# hyphens or apostrophes. Underscore is excluded from \w via the class.
_WORD_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*", re.UNICODE)


@dataclass(frozen=True)
class Token:
    surface: str
    word_index: int
    boundary_before: bool = False


@dataclass
class Document:
    id: str
    tokens: list[Token]
    author_keyphrases: list[str] | None = None

    @property
    def word_count(self) -> int:
        return len(self.tokens)


@dataclass
class Corpus:
    documents: list[Document]
    name: str = ""

    def __iter__(self):
        return iter(self.documents)

    def __len__(self):
        return len(self.documents)


def tokenize(raw_text: str) -> list[Token]:
    """Split text into case-preserving word tokens.

    A token gets boundary_before=True when any non-whitespace character
    (punctuation, sentence break) sits between it and the previous word.
    """
    tokens = []
    prev_end = 0
    for idx, match in enumerate(_WORD_RE.finditer(raw_text)):
        gap = raw_text[prev_end : match.start()]
        boundary = idx > 0 and not gap.isspace() and gap != ""
        tokens.append(Token(match.group(), idx, boundary))
        prev_end = match.end()
    return tokens


def is_stopword(word: str, stopwords: frozenset[str] = DEFAULT_STOPWORDS) -> bool:
    return word.lower() in stopwords


def stem(word: str) -> str:
    """Lowercase then Porter-stem a single word."""
    return porter_stem(word.lower())


def get_stemmer(name: str) -> Callable[[str], str]:
    """Resolve a stemmer id: "porter" (default) or "none" (lowercase only)."""
    if name == "porter":
        return stem
    if name == "none":
        return str.lower
    raise ConfigurationError(f"unknown stemmer: {name!r}")


def read_keyphrase_file(path: Path) -> list[str]:
    """One phrase per line, UTF-8, blank lines ignored."""
    try:
        lines = path.read_text("utf-8").splitlines()
    except OSError as exc:
        raise DataError(f"cannot read keyphrase file {path}: {exc}") from exc
    return [line.strip() for line in lines if line.strip()]


def load_corpus(path: str | Path, name: str = "") -> Corpus:
    """Load `<base>.txt` document bodies with optional `<base>.key` sidecars.

    Document ids are the base names; ordering is deterministic (sorted by id).
    """
    root = Path(path)
    if not root.is_dir():
        raise DataError(f"corpus directory not found: {root}")
    txt_files = {p.stem: p for p in root.glob("*.txt")}
    key_files = {p.stem: p for p in root.glob("*.key")}
    orphans = sorted(set(key_files) - set(txt_files))
    if orphans:
        raise DataError(
            f"keyphrase sidecar(s) without a document in {root}: "
            + ", ".join(orphans)
        )
    documents = []
    for doc_id in sorted(txt_files):
        txt_path = txt_files[doc_id]
        try:
            body = txt_path.read_text("utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise DataError(f"cannot read document {txt_path}: {exc}") from exc
        keyphrases = None
        if doc_id in key_files:
            keyphrases = read_keyphrase_file(key_files[doc_id])
        documents.append(Document(doc_id, tokenize(body), keyphrases))
    return Corpus(documents, name or root.name)
