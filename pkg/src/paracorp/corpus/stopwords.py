"""Stopword lists: one case-folded token per line, UTF-8, '#' comments."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def _parse(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        word = line.strip()
        if word and not word.startswith("#"):
            words.add(word.casefold())
    return frozenset(words)


def load_stopwords(path: str | Path) -> frozenset[str]:
    return _parse(Path(path).read_text(encoding="utf-8"))


def default_stopwords() -> frozenset[str]:
    """The bundled Armenian function-word list."""
    text = resources.files("paracorp.corpus").joinpath("data/stopwords_hy.txt").read_text("utf-8")
    return _parse(text)
