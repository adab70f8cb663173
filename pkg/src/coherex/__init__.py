"""coherex: keyphrase extraction with naive Bayes and hit-count coherence
features.

Candidates (1-3 word windows) are scored by a naive Bayes model over
discretized features; the coherence feature sets add statistical-association
features computed from NEAR/AND hit counts against the document's top-ranked
phrases.
"""

__version__ = "0.1.0"

from .candidates import CandidatePhrase, generate_candidates, label_candidates, normalize
from .errors import (
    CoherexError,
    ConfigurationError,
    ContractViolation,
    DataError,
    ModelFormatError,
)
from .pipeline import (
    ExtractorConfig,
    TrainedExtractor,
    extract_keyphrases,
    load_model,
    save_model,
    train_extractor,
)
from .text import Corpus, Document, Token, load_corpus, tokenize

__all__ = [
    "CandidatePhrase",
    "CoherexError",
    "ConfigurationError",
    "ContractViolation",
    "Corpus",
    "DataError",
    "Document",
    "ExtractorConfig",
    "ModelFormatError",
    "Token",
    "TrainedExtractor",
    "extract_keyphrases",
    "generate_candidates",
    "label_candidates",
    "load_corpus",
    "load_model",
    "normalize",
    "save_model",
    "tokenize",
    "train_extractor",
]
