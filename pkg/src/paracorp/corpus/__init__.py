from .documents import Document, load_documents
from .filters import FilterDecision, apply_selection_filters
from .segmenter import SegmenterConfig, Sentence, build_sentence, segment_document, segment_text
from .stopwords import default_stopwords, load_stopwords
from .tokenizer import Token, scripts_in, tokenize

__all__ = [
    "Document",
    "FilterDecision",
    "SegmenterConfig",
    "Sentence",
    "Token",
    "apply_selection_filters",
    "build_sentence",
    "default_stopwords",
    "load_documents",
    "load_stopwords",
    "scripts_in",
    "segment_document",
    "segment_text",
    "tokenize",
]
